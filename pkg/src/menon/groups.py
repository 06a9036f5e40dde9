"""Cyclic subgroups of C_{m_1} x ... x C_{m_r}, counted three ways.

* :func:`cyclic_count_formula` sums ``phi(d_1)...phi(d_r) / phi(lcm(d))``
  over the divisor grid.
* :func:`cyclic_count_burnside` averages fixed-point counts of the unit
  group acting by powers (Cauchy-Frobenius).
* :func:`cyclic_count_enumerate` builds every cyclic subgroup explicitly.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Sequence

from . import arith
from .errors import MenonError, ValidationError, check_budget

ENUMERATION_BUDGET = 10**5


def _orders(orders: Sequence[int]) -> tuple[int, ...]:
    orders = tuple(orders)
    if not orders:
        raise ValidationError("need at least one cyclic factor")
    for m in orders:
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise ValidationError(f"orders must be positive integers, got {m!r}")
    return orders


def cyclic_count_formula(orders: Sequence[int], budget: int | None = None) -> int:
    orders = _orders(orders)
    divs = [arith.divisors(m) for m in orders]
    check_budget(prod(map(len, divs)), budget, "cyclic_count_formula")
    total = Fraction(0)
    for ds in product(*divs):
        total += Fraction(prod(arith.euler_phi(d) for d in ds), arith.euler_phi(arith.lcm(*ds)))
    if total.denominator != 1:
        raise MenonError(f"cyclic_count_formula{orders}: non-integral sum {total}")
    return arith.checked(total.numerator, "cyclic_count_formula")


def cyclic_count_burnside(orders: Sequence[int], budget: int | None = None) -> int:
    """``(1/phi(q)) sum_{(k,q)=1} prod_i gcd(k - 1, m_i)`` with ``q = prod m_i``."""
    orders = _orders(orders)
    q = prod(orders)
    check_budget(q, budget, "cyclic_count_burnside")
    total = 0
    for k in range(1, q + 1):
        if gcd(k, q) == 1:
            total += prod(gcd(k - 1, m) for m in orders)
    units = arith.euler_phi(q)
    count, rest = divmod(total, units)
    if rest:
        # the orbit count is an integer; a remainder means gcd or phi is broken
        raise MenonError(f"cyclic_count_burnside{orders}: {total} not divisible by phi({q})={units}")
    return count


def _generated(g: Sequence[int], orders: Sequence[int], strides: Sequence[int]) -> list[int]:
    """Elements ``k*g`` of ``<g>`` for ``k = 0..ord(g)-1``, as mixed-radix indices."""
    n = 1
    for x, m in zip(g, orders):
        n = arith.lcm(n, m // gcd(x, m))
    columns = [[(k * x % m) * s for k in range(n)] for x, m, s in zip(g, orders, strides)]
    return [sum(col) for col in zip(*columns)] if len(columns) > 1 else columns[0]


def cyclic_count_enumerate(orders: Sequence[int], budget: int | None = None) -> int:
    """Count distinct subgroups ``<g>`` over all elements ``g``.

    Elements are encoded as mixed-radix integers and each subgroup is
    materialized as the sorted tuple of its elements. Once ``<g>`` is built,
    its generators are marked so the same subgroup is not rebuilt from each of
    them; the count is still the number of distinct element sets collected.
    """
    orders = _orders(orders)
    size = prod(orders)
    check_budget(size, ENUMERATION_BUDGET if budget is None else budget, "cyclic_count_enumerate")
    strides = [prod(orders[i + 1:]) for i in range(len(orders))]
    subgroups: set[tuple[int, ...]] = set()
    covered = bytearray(size)
    for index in range(size):
        if covered[index]:
            continue
        g = [index // s % m for s, m in zip(strides, orders)]
        elements = _generated(g, orders, strides)
        subgroups.add(tuple(sorted(elements)))
        for k in _units_below(len(elements)):
            covered[elements[k]] = 1
    return len(subgroups)


@lru_cache(maxsize=4096)
def _units_below(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(n) if gcd(k, n) == 1)


def cyclic_count_prime_power_pair(p: int, u: int, v: int) -> int:
    """Closed form for ``C_{p^u} x C_{p^v}`` with ``u >= v >= 1``."""
    if not arith.is_prime(p):
        raise ValidationError(f"cyclic_count_prime_power_pair: {p} is not prime")
    if not u >= v >= 1:
        raise ValidationError(f"cyclic_count_prime_power_pair: need u >= v >= 1, got u={u}, v={v}")
    return 2 * sum(p**i for i in range(v)) + (u - v + 1) * p**v


def cyclic_count_r2_gcd(m1: int, m2: int) -> int:
    """Two-factor form ``sum_{d1|m1, d2|m2} phi(gcd(d1, d2))``."""
    _orders((m1, m2))
    return sum(arith.euler_phi(gcd(d1, d2))
               for d1 in arith.divisors(m1) for d2 in arith.divisors(m2))


METHODS = {
    "formula": cyclic_count_formula,
    "burnside": cyclic_count_burnside,
    "enumerate": cyclic_count_enumerate,
}
