"""Integer primitives and classical arithmetic functions of one variable.

Everything here is exact. Python integers never wrap, so the signed 128-bit
working range is enforced explicitly with :func:`checked`; a value outside it
raises :class:`~menon.errors.RangeOverflow` naming the operation.
"""

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, prod

from .errors import RangeOverflow, ValidationError

INT128_MIN = -(2**127)
INT128_MAX = 2**127 - 1
FACTOR_LIMIT = 2**63

# (prime, exponent) pairs with strictly increasing primes; () represents 1.
Factorization = tuple[tuple[int, int], ...]


def checked(value, op: str):
    """Return ``value`` unchanged if it fits the 128-bit range, else raise."""
    if isinstance(value, Fraction):
        parts = (value.numerator, value.denominator)
    else:
        parts = (value,)
    for part in parts:
        if not INT128_MIN <= part <= INT128_MAX:
            raise RangeOverflow(f"{op}: result exceeds signed 128-bit range")
    return value


def _require_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValidationError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise ValidationError(f"{name} must be a positive integer, got {n}")


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Prime factorization by trial division, for ``1 <= n < 2**63``.

    >>> factorize(360)
    ((2, 3), (3, 2), (5, 1))
    """
    _require_positive(n)
    if n >= FACTOR_LIMIT:
        raise ValidationError(f"factorize: n={n} is not below 2^63")
    pairs = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
    # candidates 6k-1, 6k+1
    p, step = 5, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        pairs.append((n, 1))
    return tuple(pairs)


def unfactor(fac: Factorization) -> int:
    return prod(p**e for p, e in fac)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    fac = factorize(n)
    return len(fac) == 1 and fac[0][1] == 1


@lru_cache(maxsize=65536)
def _divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in ascending order."""
    _require_positive(n)
    return list(_divisors(n))


def tau(n: int) -> int:
    _require_positive(n)
    return prod(e + 1 for _, e in factorize(n))


def euler_phi(n: int) -> int:
    _require_positive(n)
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(n))


def jordan_phi(t: int, n: int) -> int:
    """Jordan's totient ``n^t * prod_{p|n} (1 - p^-t)``.

    Only nonnegative integer orders are supported. At ``t = 0`` every factor
    ``p^0 - 1`` vanishes, so the value is 1 for ``n = 1`` and 0 otherwise,
    which is what ``mu * id_0`` gives.
    """
    if not isinstance(t, int) or t < 0:
        raise ValidationError(f"jordan_phi: order must be a nonnegative integer, got {t!r}")
    _require_positive(n)
    value = prod((p**t - 1) * p ** (t * (e - 1)) for p, e in factorize(n))
    return checked(value, f"jordan_phi({t}, {n})")


def mobius(n: int) -> int:
    _require_positive(n)
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    _require_positive(n)
    return len(factorize(n))


def sigma(k: int, n: int) -> int:
    """Divisor power sum ``sum_{d|n} d^k``."""
    if not isinstance(k, int) or k < 0:
        raise ValidationError(f"sigma: k must be a nonnegative integer, got {k!r}")
    _require_positive(n)
    value = prod(sum(p ** (k * i) for i in range(e + 1)) for p, e in factorize(n))
    return checked(value, f"sigma({k}, {n})")


def tau_coprime(n: int, a: int) -> int:
    """Number of divisors ``d`` of ``n`` with ``gcd(d, a) = 1``."""
    _require_positive(n)
    # only primes not dividing a contribute nontrivial divisor choices
    return prod(e + 1 for p, e in factorize(n) if a % p != 0)


def legendre_symbol(a: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValidationError(f"legendre_symbol: p={p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def lcm(*values: int) -> int:
    return reduce(lambda x, y: x * y // gcd(x, y), values, 1)


def gcd_many(*values: int) -> int:
    return reduce(gcd, values, 0)
