"""The sums S_F^(G) and R_F^(G): direct summation and divisor-sum formulas.

For a system ``F = (f_1, ..., f_r)`` of one-variable functions, a system
``G = (g_1, ..., g_r)`` of integer polynomials, moduli ``m_1, ..., m_r`` and
any ``M`` divisible by ``m = lcm(m_i)``::

    S = (1/M)      sum_{k=1..M}              prod_i f_i(gcd(g_i(k), m_i))
    R = (1/phi(M)) sum_{k=1..M, (k,M)=1}    prod_i f_i(gcd(g_i(k), m_i))

Both collapse to sums over the divisor grid of the moduli that do not
involve ``M``; the ``*_formula`` functions evaluate those, the ``*_direct``
ones run the definitions.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Sequence

from . import arith
from .congruence import IntPoly, count_coprime_solutions, count_solutions
from .errors import ValidationError, check_budget
from .multifunc import FuncSpec, MultiFunc, eval_func, mu_star


@dataclass(frozen=True)
class MenonInstance:
    funcs: tuple[FuncSpec, ...]
    polys: tuple[IntPoly, ...]
    moduli: tuple[int, ...]
    big_modulus: int = 0  # 0 selects lcm(moduli)

    def __post_init__(self):
        for name in ("funcs", "polys", "moduli"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        r = len(self.moduli)
        if r == 0:
            raise ValidationError("need at least one modulus")
        if len(self.funcs) != r or len(self.polys) != r:
            raise ValidationError(f"funcs, polys and moduli must have equal length, got "
                                  f"{len(self.funcs)}, {len(self.polys)}, {r}")
        if any(not isinstance(m, int) or m < 1 for m in self.moduli):
            raise ValidationError(f"moduli must be positive integers, got {self.moduli}")
        m = arith.lcm(*self.moduli)
        if self.big_modulus == 0:
            object.__setattr__(self, "big_modulus", m)
        elif self.big_modulus < 1 or self.big_modulus % m:
            raise ValidationError(f"M={self.big_modulus} is not a positive multiple of "
                                  f"lcm{list(self.moduli)}={m}")

    @property
    def arity(self) -> int:
        return len(self.moduli)

    @property
    def lcm(self) -> int:
        return arith.lcm(*self.moduli)

    def with_moduli(self, moduli, big_modulus: int = 0) -> "MenonInstance":
        return MenonInstance(self.funcs, self.polys, tuple(moduli), big_modulus)


def _exact(total, denominator: int, op: str):
    value = Fraction(total) / denominator
    return arith.checked(value, op)


def _direct(inst: MenonInstance, units_only: bool, budget: int | None):
    M = inst.big_modulus
    check_budget(M * inst.arity, budget, "direct sum")
    terms = list(zip(inst.funcs, inst.polys, inst.moduli))
    # f_i is only ever evaluated at divisors of m_i
    values = [{d: eval_func(f, d) for d in arith.divisors(m)} for f, _, m in terms]
    total = 0
    count = 0
    for k in range(1, M + 1):
        if units_only and gcd(k, M) != 1:
            continue
        count += 1
        term = 1
        for (f, g, m), table in zip(terms, values):
            term *= table[gcd(g(k), m)]
            if not term:
                break
        total += term
    return total, count


def sum_S_direct(inst: MenonInstance, budget: int | None = None) -> Fraction:
    total, _ = _direct(inst, False, budget)
    return _exact(total, inst.big_modulus, "sum_S_direct")


def sum_R_direct(inst: MenonInstance, budget: int | None = None) -> Fraction:
    total, count = _direct(inst, True, budget)
    return _exact(total, count, "sum_R_direct")


def _grid(inst: MenonInstance, budget: int | None):
    divs = [arith.divisors(m) for m in inst.moduli]
    check_budget(prod(map(len, divs)), budget, "divisor grid")
    weights = [{d: mu_star(f, d) for d in ds} for f, ds in zip(inst.funcs, divs)]
    for ds in product(*divs):
        w = prod(table[d] for table, d in zip(weights, ds))
        if w:
            yield ds, w


def sum_S_formula(inst: MenonInstance, budget: int | None = None) -> Fraction:
    # lcm(d) | m, so every term has denominator dividing m
    m = inst.lcm
    total = 0
    for ds, w in _grid(inst, budget):
        n = count_solutions(inst.polys, ds, budget)
        if n:
            total += w * n * (m // arith.lcm(*ds))
    return _exact(total, m, "sum_S_formula")


def sum_R_formula(inst: MenonInstance, budget: int | None = None) -> Fraction:
    # phi(lcm(d)) | phi(m) because lcm(d) | m
    phi_m = arith.euler_phi(inst.lcm)
    total = 0
    for ds, w in _grid(inst, budget):
        n = count_coprime_solutions(inst.polys, ds, budget)
        if n:
            total += w * n * (phi_m // arith.euler_phi(arith.lcm(*ds)))
    return _exact(total, phi_m, "sum_R_formula")


def s_function(funcs: Sequence[FuncSpec], polys: Sequence[IntPoly]) -> MultiFunc:
    """``(m_1, ..., m_r) -> S`` as a :class:`MultiFunc`, via the formula."""
    funcs, polys = tuple(funcs), tuple(polys)
    return MultiFunc(len(funcs), lambda *m: sum_S_formula(MenonInstance(funcs, polys, m)), "S")


def r_function(funcs: Sequence[FuncSpec], polys: Sequence[IntPoly]) -> MultiFunc:
    funcs, polys = tuple(funcs), tuple(polys)
    return MultiFunc(len(funcs), lambda *m: sum_R_formula(MenonInstance(funcs, polys, m)), "R")
