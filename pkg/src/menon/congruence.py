"""Polynomial congruences: parsing, CRT, and the solution counts N_G, eta_G.

Counting splits the moduli by prime (the counts are multiplicative in the
modulus tuple) and brute-forces each prime-power block.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import NamedTuple, Sequence

from . import arith
from .errors import BudgetExceeded, ValidationError, check_budget

MAX_DEGREE = 16
MAX_COEFF = 2**31


class PolyParseError(ValidationError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.position = position


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (0,)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, n: int) -> int:
        """Horner evaluation reduced mod ``n`` at every step."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % n
        return acc

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xpart = "x" if k == 1 else f"x^{k}"
                body = xpart if mag == 1 else f"{mag}*{xpart}"
            sign = "-" if c < 0 else "+"
            terms.append(body if not terms and c > 0 else (sign + body))
        return "".join(terms) or "0"


def linear(a: int, b: int = 1) -> IntPoly:
    """``b*x - a``."""
    return IntPoly((-a, b))


X = IntPoly((0, 1))


def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary ('*' unary)*
    # unary  := ('+'|'-') unary | power
    # power  := atom ('^' integer)?
    # atom   := integer | 'x' | '(' expr ')'

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise PolyParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse(self) -> list[int]:
        if not self.text.strip():
            self.error("empty polynomial")
        poly = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return poly

    def expr(self):
        poly = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            poly = _padd(poly, rhs if op == "+" else [-c for c in rhs])
        return poly

    def term(self):
        poly = self.unary()
        while self.peek() == "*":
            self.pos += 1
            poly = self.check(_pmul(poly, self.unary()))
        return poly

    def unary(self):
        ch = self.peek()
        if ch in ("+", "-"):
            self.pos += 1
            inner = self.unary()
            return inner if ch == "+" else [-c for c in inner]
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            where = self.pos
            exp = self.integer()
            if exp > MAX_DEGREE:
                self.pos = where
                self.error(f"exponent {exp} exceeds {MAX_DEGREE}")
            result = [1]
            for _ in range(exp):
                result = self.check(_pmul(result, base))
            return result
        return base

    def atom(self):
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            return [0, 1]
        if ch.isdigit():
            return [self.integer()]
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")

    def check(self, poly):
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
        if len(poly) - 1 > MAX_DEGREE:
            self.error(f"degree exceeds {MAX_DEGREE}")
        return poly


def parse_poly(text: str) -> IntPoly:
    """Parse a univariate integer polynomial in ``x``, e.g. ``3*x^2-5``."""
    coeffs = _Parser(text).parse()
    poly = IntPoly(tuple(coeffs))
    if poly.degree > MAX_DEGREE:
        raise PolyParseError(f"degree exceeds {MAX_DEGREE}", text, len(text))
    if any(abs(c) >= MAX_COEFF for c in poly.coeffs):
        raise PolyParseError("coefficient magnitude reaches 2^31", text, len(text))
    return poly


PolySystem = tuple[IntPoly, ...]


def parse_system(text: str) -> PolySystem:
    """Comma-separated polynomials, e.g. ``"x-1, x^2+1"``."""
    return tuple(parse_poly(part) for part in text.split(","))


class CrtSolution(NamedTuple):
    residue: int
    modulus: int


def crt_solve(pairs: Sequence[tuple[int, int]]) -> CrtSolution | None:
    """Solve ``x = a_i (mod d_i)`` for all i; ``None`` when inconsistent."""
    if not pairs:
        raise ValidationError("crt_solve needs at least one congruence")
    x, m = 0, 1
    for a, d in pairs:
        if d < 1:
            raise ValidationError(f"crt_solve: modulus must be positive, got {d}")
        g = gcd(m, d)
        if (a - x) % g:
            return None
        # x + m*t = a (mod d)  =>  t = ((a-x)/g) * inv(m/g) (mod d/g)
        step = d // g
        t = ((a - x) // g) * pow(m // g, -1, step) % step if step > 1 else 0
        x += m * t
        m *= step
        x %= m
    return CrtSolution(x, m)


def _check_system(polys: Sequence[IntPoly], moduli: Sequence[int]) -> None:
    if len(polys) != len(moduli) or not polys:
        raise ValidationError(f"need equally many polynomials and moduli, got "
                              f"{len(polys)} and {len(moduli)}")
    for d in moduli:
        if not isinstance(d, int) or d < 1:
            raise ValidationError(f"moduli must be positive integers, got {d!r}")


def _prime_blocks(moduli: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Split a modulus tuple into its p-parts: [(p, (p^e_1, ..., p^e_r)), ...]."""
    primes = sorted({p for d in moduli for p in arith.prime_divisors(d)})
    blocks = []
    for p in primes:
        parts = []
        for d in moduli:
            q = 1
            while d % (q * p) == 0:
                q *= p
            parts.append(q)
        blocks.append((p, tuple(parts)))
    return blocks


@lru_cache(maxsize=65536)
def _count_block(polys, parts, coprime: bool) -> int:
    modulus = max(parts)
    active = [(g, q) for g, q in zip(polys, parts) if q > 1]
    count = 0
    for x in range(modulus):
        if coprime and any(gcd(x, q) != 1 for _, q in active):
            continue
        if all(g.eval_mod(x, q) == 0 for g, q in active):
            count += 1
    return count


def _count(polys, moduli, coprime, budget) -> int:
    _check_system(polys, moduli)
    blocks = _prime_blocks(moduli)
    cost = sum(max(parts) * len(polys) for _, parts in blocks)
    check_budget(cost, budget, "count_solutions")
    polys = tuple(polys)
    return prod(_count_block(polys, parts, coprime) for _, parts in blocks)


def count_solutions(polys: Sequence[IntPoly], moduli: Sequence[int],
                    budget: int | None = None) -> int:
    """Residues ``x`` mod lcm(moduli) with ``g_i(x) = 0 (mod m_i)`` for every i."""
    return _count(polys, moduli, False, budget)


def count_coprime_solutions(polys: Sequence[IntPoly], moduli: Sequence[int],
                            budget: int | None = None) -> int:
    """As :func:`count_solutions`, keeping only ``x`` coprime to every ``m_i``."""
    return _count(polys, moduli, True, budget)


def count_solutions_naive(polys: Sequence[IntPoly], moduli: Sequence[int],
                          coprime: bool = False, budget: int | None = None) -> int:
    """Single pass over ``x`` mod lcm(moduli) with exact evaluation; no splitting.

    Independent of the prime-block path, for use as an oracle.
    """
    _check_system(polys, moduli)
    L = arith.lcm(*moduli)
    check_budget(L * len(polys), budget, "count_solutions_naive")
    count = 0
    for x in range(L):
        if coprime and any(gcd(x, m) != 1 for m in moduli):
            continue
        if all(g(x) % m == 0 for g, m in zip(polys, moduli)):
            count += 1
    return count


def eta_linear(shifts: Sequence[int], moduli: Sequence[int]) -> int:
    """Closed form of eta_G for ``G = (x - a_1, ..., x - a_r)``: 0 or 1."""
    if len(shifts) != len(moduli):
        raise ValidationError("eta_linear: shifts and moduli differ in length")
    for d in moduli:
        if d < 1:
            raise ValidationError(f"eta_linear: moduli must be positive, got {d}")
    a = [x % d for x, d in zip(shifts, moduli)]
    if any(gcd(d, x) != 1 for d, x in zip(moduli, a)):
        return 0
    r = len(moduli)
    for i in range(r):
        for j in range(i + 1, r):
            if (shifts[i] - shifts[j]) % gcd(moduli[i], moduli[j]):
                return 0
    return 1


def eta_quadratic(a: int, n: int) -> int:
    """Coprime roots of ``x^2 - a`` mod odd ``n`` with ``gcd(a, n) = 1``."""
    if n < 1 or n % 2 == 0:
        raise ValidationError(f"eta_quadratic: n must be odd and positive, got {n}")
    if gcd(a, n) != 1:
        raise ValidationError(f"eta_quadratic: gcd({a}, {n}) != 1")
    return prod(1 + arith.legendre_symbol(a, p) for p in arith.prime_divisors(n))


def _require_prime_power(p: int, a: int, who: str) -> None:
    if not arith.is_prime(p):
        raise ValidationError(f"{who}: {p} is not prime")
    if a < 1:
        raise ValidationError(f"{who}: exponent must be positive, got {a}")


def count_power_roots_zero(j: int, p: int, a: int) -> int:
    """Number of ``x`` mod ``p^a`` with ``x^j = 0``, namely ``p^floor((j-1)a/j)``."""
    _require_prime_power(p, a, "count_power_roots_zero")
    if j < 1:
        raise ValidationError(f"count_power_roots_zero: j must be positive, got {j}")
    return p ** ((j - 1) * a // j)


def count_square_roots_of_unity(p: int, a: int) -> int:
    _require_prime_power(p, a, "count_square_roots_of_unity")
    if p != 2:
        return 2
    return {1: 1, 2: 2}.get(a, 4)


def count_jth_roots_of_unity(j: int, p: int, a: int) -> int:
    """Number of ``x`` mod ``p^a`` (``p`` odd) with ``x^j = 1``.

    The unit group mod ``p^a`` is cyclic of order ``p^(a-1) (p-1)``, so the
    count is ``gcd(j, p^(a-1) (p-1))``. This reduces to ``gcd(j, p-1)`` unless
    ``p | j`` and ``a >= 2``.
    """
    _require_prime_power(p, a, "count_jth_roots_of_unity")
    if p == 2:
        raise ValidationError("count_jth_roots_of_unity: p must be odd")
    if j < 1:
        raise ValidationError(f"count_jth_roots_of_unity: j must be positive, got {j}")
    return gcd(j, p ** (a - 1) * (p - 1))


__all__ = [
    "BudgetExceeded", "CrtSolution", "IntPoly", "PolyParseError", "PolySystem", "X",
    "count_coprime_solutions", "count_jth_roots_of_unity", "count_power_roots_zero",
    "count_solutions", "count_square_roots_of_unity", "crt_solve", "eta_linear",
    "eta_quadratic", "linear", "parse_poly", "parse_system",
]
