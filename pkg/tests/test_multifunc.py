from fractions import Fraction
from itertools import product
from math import gcd
import random
import threading

import pytest
from hypothesis import given, settings, strategies as st

from menon import arith
from menon.errors import ValidationError
from menon.multifunc import (
    ID, ONE, PHI, TAU, MultiFunc, check_multiplicative, compose_gcd, compose_lcm, convolve,
    eval_func, id_pow, identity_element, load_table, mu_star, parse_funcspec, product_of,
    sigma_func, table_func,
)

import oracles


def test_eval_func_examples():
    assert eval_func(id_pow(0), 7) == 1
    assert eval_func(ID, 12) == 12
    assert eval_func(PHI, 12) == 4
    assert eval_func(TAU, 12) == 6
    assert eval_func(sigma_func(1), 6) == 12
    assert eval_func(ONE, 99) == 1


def test_table_bound_is_enforced():
    f = table_func({1: 1, 2: Fraction(1, 2), 3: 5})
    assert f.bound == 3
    assert eval_func(f, 2) == Fraction(1, 2)
    with pytest.raises(ValidationError, match="beyond table bound"):
        eval_func(f, 4)


def test_table_must_be_contiguous():
    with pytest.raises(ValidationError):
        table_func({1: 1, 3: 2})


def test_mu_star_examples():
    assert [mu_star(ONE, d) for d in range(1, 8)] == [1, 0, 0, 0, 0, 0, 0]
    assert mu_star(ID, 12) == 4
    assert mu_star(id_pow(2), 6) == 24


def test_mu_star_brute_force():
    f = table_func({n: Fraction(n * n + 1, n + 2) for n in range(1, 60)})
    for d in range(1, 60):
        expected = sum(oracles.mobius(d // e) * eval_func(f, e) for e in oracles.divisors(d))
        assert mu_star(f, d) == expected


def test_mu_star_of_id_pow_is_jordan():
    for t in range(4):
        for d in range(1, 501):
            assert mu_star(id_pow(t), d) == arith.jordan_phi(t, d)


@pytest.mark.parametrize("text, expected", [
    ("id", ID), ("id^3", id_pow(3)), ("one", ONE), ("phi", PHI), ("tau", TAU),
    ("sigma_2", sigma_func(2)), (" id^0 ", id_pow(0)),
])
def test_parse_funcspec(text, expected):
    assert parse_funcspec(text) == expected


@pytest.mark.parametrize("text", ["ident", "sigma", "id^-1", "phi2", ""])
def test_parse_funcspec_rejects(text):
    with pytest.raises(ValidationError):
        parse_funcspec(text)


def test_table_file_format(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("# a comment\n1 1\n2 -3/4\n\n3 10   \n4 2/2\n")
    f = parse_funcspec(f"table:{path}")
    assert [eval_func(f, n) for n in range(1, 5)] == [1, Fraction(-3, 4), 10, 1]
    assert str(f) == f"table:{path}"
    rel = parse_funcspec("table:f.txt", base_dir=tmp_path)
    assert rel.table == f.table


@pytest.mark.parametrize("body", ["1 1\n1 2\n", "1 x\n", "1 2 3\n", "2 1\n", "1 1/0\n"])
def test_table_file_errors(tmp_path, body):
    path = tmp_path / "bad.txt"
    path.write_text(body)
    with pytest.raises(ValidationError):
        load_table(path)


def test_convolution_examples():
    one2 = product_of((ONE, ONE))
    assert convolve(one2, one2)(4, 6) == 12 == arith.tau(4) * arith.tau(6)
    mu = MultiFunc(1, arith.mobius, "mu")
    assert convolve(product_of((ONE,)), mu)(12) == 0
    assert convolve(product_of((ONE,)), mu)(1) == 1


def test_convolution_arity_mismatch():
    with pytest.raises(ValidationError):
        convolve(product_of((ONE,)), product_of((ONE, ONE)))


def _random_func(arity, seed):
    rng = random.Random(seed)
    table = {}

    def f(*m):
        if m not in table:
            table[m] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        return table[m]
    # fill deterministically up front so evaluation order cannot matter
    for m in product(range(1, 9), repeat=arity):
        f(*m)
    return MultiFunc(arity, f, f"rand{seed}")


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_convolution_commutative_associative_identity(arity):
    f, g, h = (_random_func(arity, s) for s in (1, 2, 3))
    eps = identity_element(arity)
    grid = list(product(range(1, 9), repeat=arity))
    if arity == 3:
        grid = grid[::7]
    fg, gf = convolve(f, g), convolve(g, f)
    left, right = convolve(fg, h), convolve(f, convolve(g, h))
    fe = convolve(f, eps)
    for m in grid:
        assert fg(*m) == gf(*m)
        assert left(*m) == right(*m)
        assert fe(*m) == f(*m)


def test_convolution_preserves_multiplicativity():
    for a, b in [((ID, PHI), (TAU, ONE)), ((sigma_func(2), id_pow(2)), (PHI, PHI))]:
        conv = convolve(product_of(a), product_of(b))
        assert check_multiplicative(conv, 10) == []
    gcd_phi = compose_gcd(PHI, 2)
    assert check_multiplicative(convolve(gcd_phi, product_of((ID, TAU))), 10) == []


def test_check_multiplicative_examples():
    assert check_multiplicative(MultiFunc(2, gcd, "gcd"), 12) == []
    assert check_multiplicative(MultiFunc(2, arith.lcm, "lcm"), 12) == []
    fails = check_multiplicative(MultiFunc(1, lambda m: m + 1, "m+1"), 6)
    assert fails and fails[0][:2] == ((1,), (1,))


def test_zero_function_is_not_multiplicative():
    assert check_multiplicative(MultiFunc(2, lambda *m: 0, "zero"), 4)


@pytest.mark.parametrize("h", [PHI, TAU])
@pytest.mark.parametrize("arity", [1, 2, 3])
def test_gcd_and_lcm_compositions_multiplicative(h, arity):
    bound = 10 if arity < 3 else 6
    assert check_multiplicative(compose_gcd(h, arity), bound) == []
    assert check_multiplicative(compose_lcm(h, arity), bound) == []


def test_multifunc_arity_checked():
    with pytest.raises(ValidationError):
        product_of((ID, ID))(3)


def test_concurrent_evaluation_is_consistent():
    f = convolve(product_of((ID, PHI)), compose_gcd(TAU, 2))
    args = [(a, b) for a in range(1, 30) for b in range(1, 30)]
    expected = [f(*m) for m in args]
    results = {}

    def work(i):
        results[i] = [f(*m) for m in args]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results.values())


@settings(max_examples=50)
@given(st.integers(1, 200), st.integers(1, 200))
def test_product_of_matches_pointwise(a, b):
    assert product_of((ID, PHI))(a, b) == a * arith.euler_phi(b)
