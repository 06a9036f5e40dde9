"""Brute-force reference implementations, written from the definitions only.

Nothing here imports the package under test.
"""

from itertools import product
from math import gcd


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def mobius(n):
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def count_roots(polys, moduli, coprime=False):
    """Roots of a congruence system by scanning every x mod lcm."""
    L = lcm(*moduli)
    count = 0
    for x in range(L):
        if coprime and any(gcd(x, m) != 1 for m in moduli):
            continue
        if all(sum(c * x**i for i, c in enumerate(g)) % m == 0 for g, m in zip(polys, moduli)):
            count += 1
    return count


def subgroups_by_closure(orders):
    """Cyclic subgroups of Z_m1 x ... x Z_mr as frozensets, by repeated addition."""
    seen = set()
    for g in product(*(range(m) for m in orders)):
        elems = set()
        x = tuple(0 for _ in orders)
        while x not in elems:
            elems.add(x)
            x = tuple((a + b) % m for a, b, m in zip(x, g, orders))
        seen.add(frozenset(elems))
    return seen
