from fractions import Fraction
from math import gcd
import random

import pytest

from menon.congruence import X, IntPoly, linear
from menon.errors import BudgetExceeded, ValidationError
from menon.multifunc import ID, ONE, PHI, TAU, check_multiplicative, id_pow, table_func
from menon.sums import (
    MenonInstance, r_function, s_function, sum_R_direct, sum_R_formula, sum_S_direct,
    sum_S_formula,
)
from menon.verify import random_instances

import oracles

X_MINUS_1 = linear(1)


def test_s_example_both_paths():
    inst = MenonInstance((ID, ID), (X, X), (4, 6), 12)
    assert sum_S_direct(inst) == Fraction(35, 6)
    assert sum_S_formula(inst) == Fraction(35, 6)


def test_s_pillai_value():
    # A(4) = (gcd(1,4) + gcd(2,4) + gcd(3,4) + gcd(4,4)) / 4 = 8/4
    inst = MenonInstance((ID,), (X,), (4,))
    assert sum_S_direct(inst) == sum_S_formula(inst) == 2
    for m in range(1, 60):
        expected = sum(Fraction(oracles.phi(d), d) for d in oracles.divisors(m))
        assert sum_S_formula(MenonInstance((ID,), (X,), (m,))) == expected


@pytest.mark.parametrize("funcs, polys, moduli, M, expected", [
    ((ID,), (X_MINUS_1,), (12,), 12, 6),
    ((ID, ID), (X_MINUS_1, X_MINUS_1), (2, 4), 4, 6),
    ((ONE, ONE), (IntPoly((3, 1, 1)), X), (9, 10), 90, 1),
])
def test_r_examples(funcs, polys, moduli, M, expected):
    inst = MenonInstance(funcs, polys, moduli, M)
    assert sum_R_direct(inst) == expected
    assert sum_R_formula(inst) == expected


def test_r_value_matches_gcd_grid():
    # (x-1, x-1) with F = (id, id): sum over d1|m1, d2|m2 of phi(gcd(d1, d2))
    for m1 in range(1, 16):
        for m2 in range(1, 16):
            inst = MenonInstance((ID, ID), (X_MINUS_1, X_MINUS_1), (m1, m2))
            expected = sum(oracles.phi(gcd(a, b)) for a in oracles.divisors(m1)
                           for b in oracles.divisors(m2))
            assert sum_R_formula(inst) == expected


def test_all_ones_moduli():
    inst = MenonInstance((PHI, TAU, id_pow(3)), (X, X_MINUS_1, IntPoly((5, 0, 1))), (1, 1, 1))
    assert sum_S_formula(inst) == sum_R_formula(inst) == 1
    assert sum_S_direct(inst) == sum_R_direct(inst) == 1


def test_formulas_match_direct_on_random_grid():
    for inst in random_instances(150, seed=99):
        m = inst.lcm
        s = sum_S_formula(inst)
        r = sum_R_formula(inst)
        for M in (m, 2 * m, 3 * m, 6 * m):
            other = inst.with_moduli(inst.moduli, M)
            assert sum_S_direct(other) == s
            assert sum_R_direct(other) == r


def test_formulas_with_rational_table_functions():
    f = table_func({n: Fraction(n + 1, 2 * n + 3) for n in range(1, 25)})
    rng = random.Random(4)
    for _ in range(40):
        moduli = (rng.randint(1, 24), rng.randint(1, 24))
        polys = (IntPoly((rng.randint(-3, 3), 1)), IntPoly((rng.randint(-3, 3), 0, 1)))
        inst = MenonInstance((f, PHI), polys, moduli)
        assert sum_S_formula(inst) == sum_S_direct(inst)
        assert sum_R_formula(inst) == sum_R_direct(inst)


def test_pairwise_coprime_factorization():
    g = IntPoly((-2, 0, 1))
    for moduli in [(4, 9, 5), (7, 8, 15), (1, 11, 6)]:
        funcs = (ID, PHI, TAU)
        whole = sum_R_formula(MenonInstance(funcs, (g,) * 3, moduli))
        parts = 1
        for f, m in zip(funcs, moduli):
            parts *= sum_R_formula(MenonInstance((f,), (g,), (m,)))
        assert whole == parts


def test_s_and_r_functions_are_multiplicative():
    polys = (X_MINUS_1, IntPoly((1, 0, 1)))
    assert check_multiplicative(s_function((ID, PHI), polys), 10) == []
    assert check_multiplicative(r_function((ID, TAU), polys), 10) == []


def test_instance_validation():
    with pytest.raises(ValidationError):
        MenonInstance((ID,), (X, X), (3, 4))
    with pytest.raises(ValidationError):
        MenonInstance((ID,), (X,), (0,))
    with pytest.raises(ValidationError, match="not a positive multiple"):
        MenonInstance((ID, ID), (X, X), (4, 6), 18)
    with pytest.raises(ValidationError):
        MenonInstance((), (), ())
    assert MenonInstance((ID,), (X,), (6,)).big_modulus == 6


def test_budget_is_enforced():
    inst = MenonInstance((ID,), (X,), (10**6,))
    with pytest.raises(BudgetExceeded):
        sum_S_direct(inst, budget=1000)


def test_table_bound_reported_by_sums():
    f = table_func({1: 1, 2: 3})
    with pytest.raises(ValidationError):
        sum_S_direct(MenonInstance((f,), (X,), (5,)))
