"""Catalog of named Menon-type identities.

Each entry evaluates its left-hand side by direct summation over ``k`` (or
over several indices for the multi-index identities) and its right-hand side
by the corresponding closed form, sharing nothing above :mod:`menon.arith`
except the congruence counts the closed forms are stated in terms of.
"""

from dataclasses import dataclass, field
import inspect
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Any, Callable

from . import arith
from .congruence import IntPoly, count_coprime_solutions, count_power_roots_zero, eta_linear
from .errors import ValidationError, check_budget
from .multifunc import FuncSpec, eval_func, mu_star


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    parameters: dict[str, Any]
    lhs: Fraction
    rhs: Fraction
    match: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        object.__setattr__(self, "match", self.lhs == self.rhs)


def _require(cond: bool, name: str, message: str) -> None:
    if not cond:
        raise ValidationError(f"{name}: {message}")


def _positive(name: str, **values: int) -> None:
    for key, v in values.items():
        _require(isinstance(v, int) and v >= 1, name, f"{key} must be a positive integer, got {v!r}")


def _units(M: int, budget):
    check_budget(M, budget, "direct sum")
    return (k for k in range(1, M + 1) if gcd(k, M) == 1)


def _tuple(value) -> tuple[int, ...]:
    return tuple(value) if isinstance(value, (list, tuple)) else (value,)


def _big_modulus(name: str, moduli, M: int) -> int:
    m = arith.lcm(*moduli)
    if not M:
        return m
    _require(M >= 1 and M % m == 0, name, f"M={M} must be a positive multiple of lcm={m}")
    return M


def _tau_power(n: int, k: int) -> int:
    """tau(n^k) without forming n^k."""
    return prod(k * e + 1 for _, e in arith.factorize(n))


def _divisor_grid(moduli):
    return product(*(arith.divisors(m) for m in moduli))


# -- single-variable identities ------------------------------------------

def menon_classic(n: int, budget=None):
    _positive("menon_classic", n=n)
    lhs = sum(gcd(k - 1, n) for k in _units(n, budget))
    rhs = arith.euler_phi(n) * arith.tau(n)
    return lhs, rhs


def sita_ramaiah(n: int, f: FuncSpec, budget=None):
    _positive("sita_ramaiah", n=n)
    lhs = sum(eval_func(f, gcd(k - 1, n)) for k in _units(n, budget))
    rhs = arith.euler_phi(n) * sum(Fraction(mu_star(f, d), arith.euler_phi(d))
                                   for d in arith.divisors(n))
    return lhs, rhs


def nageswara_rao(n: int, a, budget=None):
    a = _tuple(a)
    s = len(a)
    _positive("nageswara_rao", n=n, s=s)
    _require(arith.gcd_many(*a, n) == 1, "nageswara_rao", f"gcd{(*a, n)} must be 1")
    check_budget(n**s, budget, "nageswara_rao direct sum")
    lhs = 0
    for ks in product(range(1, n + 1), repeat=s):
        if arith.gcd_many(*ks, n) == 1:
            lhs += arith.gcd_many(*(k - x for k, x in zip(ks, a)), n) ** s
    rhs = arith.jordan_phi(s, n) * arith.tau(n)
    return lhs, rhs


def richards(n: int, g: IntPoly, budget=None):
    _positive("richards", n=n)
    lhs = sum(gcd(g(k), n) for k in _units(n, budget))
    rhs = arith.euler_phi(n) * sum(count_coprime_solutions((g,), (d,), budget)
                                   for d in arith.divisors(n))
    return lhs, rhs


def sury(n: int, r: int, budget=None):
    _positive("sury", n=n, r=r)
    check_budget(n**r, budget, "sury direct sum")
    lhs = 0
    for k1 in _units(n, budget):
        for rest in product(range(1, n + 1), repeat=r - 1):
            lhs += arith.gcd_many(k1 - 1, *rest, n)
    rhs = arith.euler_phi(n) * arith.sigma(r - 1, n)
    return lhs, rhs


def linear_bk_minus_a(n: int, a: int, b: int, budget=None):
    _positive("linear_bk_minus_a", n=n)
    _require(gcd(b, n) == 1, "linear_bk_minus_a", f"gcd(b={b}, n={n}) must be 1")
    lhs = sum(gcd(b * k - a, n) for k in _units(n, budget))
    rhs = arith.euler_phi(n) * arith.tau_coprime(n, a)
    return lhs, rhs


def square_minus_one_h(n: int) -> int:
    """The factor ``h(n)`` in the ``x^2 - 1`` identity."""
    ell, m = 0, n
    while m % 2 == 0:
        m //= 2
        ell += 1
    base = _tau_power(m, 2)
    if ell == 0:
        return base
    if ell == 1:
        return 2 * base
    return 4 * (ell - 1) * base


def square_minus_one(n: int, budget=None):
    _positive("square_minus_one", n=n)
    lhs = sum(gcd(k * k - 1, n) for k in _units(n, budget))
    rhs = arith.euler_phi(n) * square_minus_one_h(n)
    return lhs, rhs


def decompose_n_d(n: int, j: int) -> dict[int, int]:
    """Group the prime powers of odd ``n`` by ``d = gcd(p - 1, j)``."""
    _positive("decompose_n_d", n=n, j=j)
    _require(n % 2 == 1, "decompose_n_d", f"n={n} must be odd")
    parts = {d: 1 for d in arith.divisors(j)}
    for p, e in arith.factorize(n):
        parts[gcd(p - 1, j)] *= p**e
    return parts


def power_j(n: int, j: int, budget=None):
    _positive("power_j", n=n, j=j)
    _require(n % 2 == 1, "power_j", f"n={n} must be odd")
    lhs = sum(gcd(pow(k, j) - 1, n) for k in _units(n, budget))
    rhs = arith.euler_phi(n) * prod(_tau_power(nd, d) for d, nd in decompose_n_d(n, j).items())
    return lhs, rhs


def power_6(n: int, budget=None):
    _positive("power_6", n=n)
    _require(n % 2 == 1, "power_6", f"n={n} must be odd")
    lhs = sum(gcd(pow(k, 6) - 1, n) for k in _units(n, budget))
    A = prod(p**e for p, e in arith.factorize(n) if p % 6 == 1)
    B = n // A
    rhs = arith.euler_phi(n) * _tau_power(A, 6) * _tau_power(B, 2)
    return lhs, rhs


def gcd_kj(n: int, j: int, budget=None):
    _positive("gcd_kj", n=n, j=j)
    check_budget(n, budget, "gcd_kj direct sum")
    lhs = Fraction(sum(gcd(pow(k, j), n) for k in range(1, n + 1)), n)

    def roots_of_zero(d):
        return prod(count_power_roots_zero(j, p, e) for p, e in arith.factorize(d))

    rhs = sum(Fraction(arith.euler_phi(d) * roots_of_zero(d), d) for d in arith.divisors(n))
    return lhs, rhs


# -- several-variable identities -----------------------------------------

def _shifted_R(name, moduli, a, M, t, budget):
    """(1/phi(M)) sum_{(k,M)=1} prod gcd(k - a_i, m_i)^t_i."""
    total = 0
    for k in _units(M, budget):
        total += prod(gcd(k - x, m) ** e for x, m, e in zip(a, moduli, t))
    return Fraction(total, arith.euler_phi(M))


def general_menon(moduli, a, M: int = 0, budget=None):
    return general_menon_t(moduli, a, (1,) * len(_tuple(moduli)), M, budget,
                           name="general_menon")


def general_menon_t(moduli, a, t, M: int = 0, budget=None, name="general_menon_t"):
    moduli, a, t = _tuple(moduli), _tuple(a), _tuple(t)
    _require(len(moduli) == len(a) == len(t) >= 1, name,
             "moduli, a and t must have equal nonzero length")
    _positive(name, **{f"m{i + 1}": m for i, m in enumerate(moduli)})
    _require(all(isinstance(x, int) and x >= 0 for x in t), name, "t_i must be nonnegative")
    M = _big_modulus(name, moduli, M)
    lhs = _shifted_R(name, moduli, a, M, t, budget)
    rhs = Fraction(0)
    for ds in _divisor_grid(moduli):
        if eta_linear(a, ds):
            rhs += Fraction(prod(arith.jordan_phi(e, d) for e, d in zip(t, ds)),
                            arith.euler_phi(arith.lcm(*ds)))
    return lhs, rhs


def r2_same_shift(m1: int, m2: int, a: int, M: int = 0, budget=None):
    _positive("r2_same_shift", m1=m1, m2=m2)
    M = _big_modulus("r2_same_shift", (m1, m2), M)
    _require(gcd(a, arith.lcm(m1, m2)) == 1, "r2_same_shift", f"gcd(a={a}, m) must be 1")
    lhs = sum(gcd(k - a, m1) * gcd(k - a, m2) for k in _units(M, budget))
    rhs = arith.euler_phi(M) * sum(arith.euler_phi(gcd(d1, d2))
                                   for d1, d2 in _divisor_grid((m1, m2)))
    return lhs, rhs


def pairwise_coprime(moduli, a, budget=None):
    moduli, a = _tuple(moduli), _tuple(a)
    _require(len(moduli) == len(a) >= 1, "pairwise_coprime", "moduli and a differ in length")
    _positive("pairwise_coprime", **{f"m{i + 1}": m for i, m in enumerate(moduli)})
    _require(all(gcd(x, y) == 1 for i, x in enumerate(moduli) for y in moduli[i + 1:]),
             "pairwise_coprime", f"moduli {list(moduli)} are not pairwise coprime")
    m = prod(moduli)
    lhs = sum(prod(gcd(k - x, mi) for x, mi in zip(a, moduli)) for k in _units(m, budget))
    rhs = arith.euler_phi(m) * prod(arith.tau_coprime(mi, x) for mi, x in zip(moduli, a))
    return lhs, rhs


def r2_offsets(m1: int, m2: int, a1: int, a2: int, M: int = 0, budget=None):
    _positive("r2_offsets", m1=m1, m2=m2)
    M = _big_modulus("r2_offsets", (m1, m2), M)
    lhs = _shifted_R("r2_offsets", (m1, m2), (a1, a2), M, (1, 1), budget)
    rhs = sum(arith.euler_phi(gcd(d1, d2)) for d1, d2 in _divisor_grid((m1, m2))
              if gcd(d1, a1) == 1 and gcd(d2, a2) == 1 and (a1 - a2) % gcd(d1, d2) == 0)
    return lhs, rhs


def r2_adjacent(m1: int, m2: int, a1: int, a2: int, M: int = 0, budget=None):
    _positive("r2_adjacent", m1=m1, m2=m2)
    _require(abs(a1 - a2) == 1, "r2_adjacent", f"|a1 - a2| must be 1, got |{a1} - {a2}|")
    M = _big_modulus("r2_adjacent", (m1, m2), M)
    lhs = _shifted_R("r2_adjacent", (m1, m2), (a1, a2), M, (1, 1), budget)
    rhs = sum(1 for d1, d2 in _divisor_grid((m1, m2))
              if gcd(d1, a1) == 1 and gcd(d2, a2) == 1 and gcd(d1, d2) == 1)
    return lhs, rhs


def r2_adjacent_table(p: int, u: int, v: int, a1: int, a2: int) -> int:
    """Value at ``(p^u, p^v)`` of the ``|a1 - a2| = 1`` case, by cases on ``p | a_i``."""
    _require(arith.is_prime(p), "r2_adjacent_table", f"{p} is not prime")
    _positive("r2_adjacent_table", u=u, v=v)
    _require(abs(a1 - a2) == 1, "r2_adjacent_table", "|a1 - a2| must be 1")
    free1, free2 = a1 % p != 0, a2 % p != 0
    if free1 and free2:
        return u + v + 1
    if free1:
        return u + 1
    if free2:
        return v + 1
    return 1


def quadratic_legendre(m1: int, m2: int, a: int, budget=None):
    _positive("quadratic_legendre", m1=m1, m2=m2)
    m = arith.lcm(m1, m2)
    _require(m % 2 == 1, "quadratic_legendre", f"lcm(m1, m2)={m} must be odd")
    _require(gcd(a, m) == 1, "quadratic_legendre", f"gcd(a={a}, m={m}) must be 1")
    lhs = sum(gcd(k * k - a, m1) * gcd(k * k - a, m2) for k in _units(m, budget))
    total = 0
    for d1, d2 in _divisor_grid((m1, m2)):
        L = arith.lcm(d1, d2)
        if a == 1:
            roots = 2 ** arith.omega(L)
        else:
            roots = prod(1 + arith.legendre_symbol(a, p) for p in arith.prime_divisors(L))
        total += arith.euler_phi(gcd(d1, d2)) * roots
    rhs = arith.euler_phi(m) * total
    return lhs, rhs


def pillai(moduli, M: int = 0, budget=None):
    moduli = _tuple(moduli)
    _positive("pillai", **{f"m{i + 1}": m for i, m in enumerate(moduli)})
    M = _big_modulus("pillai", moduli, M)
    check_budget(M, budget, "pillai direct sum")
    lhs = Fraction(sum(prod(gcd(k, m) for m in moduli) for k in range(1, M + 1)), M)
    rhs = sum(Fraction(prod(arith.euler_phi(d) for d in ds), arith.lcm(*ds))
              for ds in _divisor_grid(moduli))
    return lhs, rhs


@dataclass(frozen=True)
class IdentityDef:
    func: Callable
    params: tuple[str, ...]
    multivariable: bool


CATALOG: dict[str, IdentityDef] = {
    "menon_classic": IdentityDef(menon_classic, ("n",), False),
    "sita_ramaiah": IdentityDef(sita_ramaiah, ("n", "f"), False),
    "nageswara_rao": IdentityDef(nageswara_rao, ("n", "a"), False),
    "richards": IdentityDef(richards, ("n", "g"), False),
    "sury": IdentityDef(sury, ("n", "r"), False),
    "general_menon": IdentityDef(general_menon, ("moduli", "a", "M"), True),
    "general_menon_t": IdentityDef(general_menon_t, ("moduli", "a", "t", "M"), True),
    "r2_same_shift": IdentityDef(r2_same_shift, ("m1", "m2", "a", "M"), True),
    "pairwise_coprime": IdentityDef(pairwise_coprime, ("moduli", "a"), True),
    "r2_offsets": IdentityDef(r2_offsets, ("m1", "m2", "a1", "a2", "M"), True),
    "r2_adjacent": IdentityDef(r2_adjacent, ("m1", "m2", "a1", "a2", "M"), True),
    "quadratic_legendre": IdentityDef(quadratic_legendre, ("m1", "m2", "a"), True),
    "linear_bk_minus_a": IdentityDef(linear_bk_minus_a, ("n", "a", "b"), False),
    "square_minus_one": IdentityDef(square_minus_one, ("n",), False),
    "power_j": IdentityDef(power_j, ("n", "j"), False),
    "power_6": IdentityDef(power_6, ("n",), False),
    "gcd_kj": IdentityDef(gcd_kj, ("n", "j"), False),
    "pillai": IdentityDef(pillai, ("moduli", "M"), True),
}


def _echo(value):
    if isinstance(value, (list, tuple)):
        return [_echo(v) for v in value]
    if isinstance(value, (IntPoly, FuncSpec)):
        return str(value)
    return value


def named_identity(name: str, budget: int | None = None, **params) -> IdentityReport:
    """Evaluate both sides of a catalogued identity.

    >>> named_identity("menon_classic", n=12).match
    True
    """
    try:
        entry = CATALOG[name]
    except KeyError:
        raise ValidationError(f"unknown identity {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    unknown = set(params) - set(entry.params)
    if unknown:
        raise ValidationError(f"{name}: unexpected parameters {sorted(unknown)}; "
                              f"accepts {list(entry.params)}")
    sig = inspect.signature(entry.func)
    missing = [p for p in entry.params
               if p not in params and sig.parameters[p].default is inspect.Parameter.empty]
    if missing:
        raise ValidationError(f"{name}: missing parameters {missing}")
    lhs, rhs = entry.func(**params, budget=budget)
    echo = {k: _echo(v) for k, v in sorted(params.items())}
    return IdentityReport(name, echo, lhs, rhs)
