"""RunRecord: the structured result of one CLI invocation.

Rationals are serialized as ``{"num": p, "den": q}`` objects and never as
floats, so ``RunRecord.from_json(rec.to_json()) == rec`` holds exactly.
"""

from dataclasses import asdict, dataclass, field
from fractions import Fraction
import json
from typing import Any

FORMAT_VERSION = 1


def encode(value: Any) -> Any:
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, float):
        raise TypeError(f"refusing to serialize float {value!r}")
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def decode(value: Any) -> Any:
    if isinstance(value, dict):
        if set(value) == {"num", "den"}:
            return Fraction(value["num"], value["den"])
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


def format_value(value: Any) -> str:
    """Human-readable exact form: ``35/6``, ``6``, lists comma-joined."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


@dataclass
class RunRecord:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    outputs: dict[str, Any] = field(default_factory=dict)
    timing_ns: dict[str, int] = field(default_factory=dict)
    tallies: dict[str, Any] = field(default_factory=dict)
    version: int = FORMAT_VERSION

    def to_dict(self) -> dict[str, Any]:
        return encode(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        data = json.loads(text)
        if data.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported record version {data.get('version')!r}")
        return cls(**decode(data))
