"""Arithmetic functions of one and several variables.

A :class:`FuncSpec` names a one-variable function (``id``, ``id^t``, ``one``,
``phi``, ``tau``, ``sigma_k`` or a finite value table). A :class:`MultiFunc`
wraps any deterministic map from r-tuples of positive integers to exact
rationals and supports the r-fold Dirichlet convolution.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from pathlib import Path
from typing import Callable
import re

from . import arith
from .errors import ValidationError

KINDS = ("idpow", "one", "phi", "tau", "sigma", "table")

Value = int | Fraction


@dataclass(frozen=True)
class FuncSpec:
    kind: str
    param: int = 0
    table: tuple[Value, ...] = field(default=(), repr=False)
    source: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown function kind {self.kind!r}")
        if self.kind in ("idpow", "sigma") and self.param < 0:
            raise ValidationError(f"{self.kind} parameter must be nonnegative")
        if self.kind == "table" and not self.table:
            raise ValidationError("table function needs at least one value")

    @property
    def bound(self) -> int | None:
        return len(self.table) if self.kind == "table" else None

    def __call__(self, n: int) -> Value:
        return eval_func(self, n)

    def __str__(self) -> str:
        if self.kind == "idpow":
            return "id" if self.param == 1 else f"id^{self.param}"
        if self.kind == "sigma":
            return f"sigma_{self.param}"
        if self.kind == "table":
            return f"table:{self.source}" if self.source else "table"
        return self.kind


def id_pow(t: int = 1) -> FuncSpec:
    return FuncSpec("idpow", t)


ID = id_pow(1)
ONE = FuncSpec("one")
PHI = FuncSpec("phi")
TAU = FuncSpec("tau")


def sigma_func(k: int) -> FuncSpec:
    return FuncSpec("sigma", k)


def table_func(values: dict[int, Value], source: str = "") -> FuncSpec:
    """Build a table function; keys must cover 1..max(keys) exactly."""
    if not values:
        raise ValidationError("table function needs at least one value")
    bound = max(values)
    missing = [n for n in range(1, bound + 1) if n not in values]
    if missing or min(values) < 1:
        raise ValidationError(f"table must define every n in 1..{bound}; missing {missing[:5]}")
    return FuncSpec("table", table=tuple(_normalize(values[n]) for n in range(1, bound + 1)),
                    source=source)


def _normalize(v: Value) -> Value:
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def eval_func(f: FuncSpec, n: int) -> Value:
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"{f}: argument must be a positive integer, got {n!r}")
    kind = f.kind
    if kind == "idpow":
        return arith.checked(n**f.param, f"id^{f.param}({n})")
    if kind == "one":
        return 1
    if kind == "phi":
        return arith.euler_phi(n)
    if kind == "tau":
        return arith.tau(n)
    if kind == "sigma":
        return arith.sigma(f.param, n)
    if n > len(f.table):
        raise ValidationError(f"{f}: argument {n} beyond table bound {len(f.table)}")
    return f.table[n - 1]


def mu_star(f: FuncSpec, d: int) -> Value:
    """``(mu * f)(d) = sum_{e|d} mu(d/e) f(e)``."""
    total = 0
    for e in arith.divisors(d):
        mu = arith.mobius(d // e)
        if mu:
            total += mu * eval_func(f, e)
    return total


_FUNC_RE = re.compile(r"^(?:id(?:\^(\d+))?|one|phi|tau|sigma_(\d+))$")


def parse_funcspec(text: str, base_dir: Path | None = None) -> FuncSpec:
    """Parse the CLI text form: ``id``, ``id^t``, ``one``, ``phi``, ``tau``,
    ``sigma_k`` or ``table:<path>``."""
    text = text.strip()
    if text.startswith("table:"):
        path = Path(text[len("table:"):])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return load_table(path)
    m = _FUNC_RE.match(text)
    if not m:
        raise ValidationError(f"unknown function {text!r}; expected id, id^t, one, phi, tau, "
                              "sigma_k or table:<path>")
    if text.startswith("id"):
        return id_pow(int(m.group(1)) if m.group(1) else 1)
    if text.startswith("sigma"):
        return sigma_func(int(m.group(2)))
    return FuncSpec(text)


def parse_value(token: str) -> Value:
    try:
        if "/" in token:
            num, den = token.split("/")
            return _normalize(Fraction(int(num), int(den)))
        return int(token)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"bad rational value {token!r}") from None


def load_table(path: Path) -> FuncSpec:
    """Read whitespace-separated ``n value`` lines (value integer or ``p/q``)."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ValidationError(f"cannot read table {path}: {exc}") from None
    values: dict[int, Value] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"{path}:{lineno}: expected 'n value'")
        try:
            n = int(parts[0])
        except ValueError:
            raise ValidationError(f"{path}:{lineno}: bad argument {parts[0]!r}") from None
        if n in values:
            raise ValidationError(f"{path}:{lineno}: duplicate entry for n={n}")
        values[n] = parse_value(parts[1])
    return table_func(values, source=str(path))


@dataclass(frozen=True)
class MultiFunc:
    """Arithmetic function of ``arity`` variables with exact values."""

    arity: int
    evaluator: Callable[..., Value]
    name: str = ""

    def __call__(self, *args: int) -> Value:
        if len(args) != self.arity:
            raise ValidationError(f"{self.name or 'function'} takes {self.arity} arguments, "
                                  f"got {len(args)}")
        return self.evaluator(*args)


def product_of(funcs) -> MultiFunc:
    """``(m_1, ..., m_r) -> f_1(m_1) ... f_r(m_r)``."""
    funcs = tuple(funcs)
    return MultiFunc(len(funcs), lambda *m: prod(eval_func(f, x) for f, x in zip(funcs, m)),
                     "x".join(map(str, funcs)))


def compose_gcd(h: FuncSpec, arity: int) -> MultiFunc:
    return MultiFunc(arity, lambda *m: eval_func(h, arith.gcd_many(*m)), f"{h}(gcd)")


def compose_lcm(h: FuncSpec, arity: int) -> MultiFunc:
    return MultiFunc(arity, lambda *m: eval_func(h, arith.lcm(*m)), f"{h}(lcm)")


def identity_element(arity: int) -> MultiFunc:
    return MultiFunc(arity, lambda *m: int(all(x == 1 for x in m)), "epsilon")


def convolve(f: MultiFunc, g: MultiFunc) -> MultiFunc:
    """Dirichlet convolution over componentwise divisor tuples."""
    if f.arity != g.arity:
        raise ValidationError(f"cannot convolve arity {f.arity} with arity {g.arity}")

    def evaluator(*m: int) -> Value:
        total = 0
        for d in product(*(arith.divisors(x) for x in m)):
            total += f(*d) * g(*(x // y for x, y in zip(m, d)))
        return _normalize(total) if isinstance(total, Fraction) else total

    return MultiFunc(f.arity, evaluator, f"({f.name}*{g.name})")


def check_multiplicative(f: MultiFunc, bound: int) -> list[tuple]:
    """Exhaustively test ``f(m n) = f(m) f(n)`` over coprime tuple pairs.

    Tuples range over ``[1, bound]^r``; a pair qualifies when the product of
    one tuple's components is coprime to the other's. Returns the violations
    as ``(m, n, f(mn), f(m) f(n))``; an empty list means the check passed.
    Unordered pairs suffice because the condition is symmetric.
    """
    tuples = list(product(range(1, bound + 1), repeat=f.arity))
    cache: dict[tuple[int, ...], Value] = {}

    def value(t):
        if t not in cache:
            cache[t] = f(*t)
        return cache[t]

    prods = [prod(t) for t in tuples]
    failures = []
    ones = tuples[0]
    if value(ones) != 1:
        # multiplicative functions are nonzero, which forces f(1, ..., 1) = 1
        failures.append((ones, ones, value(ones), 1))
    for i, m in enumerate(tuples):
        for j in range(i, len(tuples)):
            if gcd(prods[i], prods[j]) != 1:
                continue
            n = tuples[j]
            mn = tuple(x * y for x, y in zip(m, n))
            lhs = value(mn)
            rhs = value(m) * value(n)
            if lhs != rhs:
                failures.append((m, n, lhs, rhs))
    return failures
