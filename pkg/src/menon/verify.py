"""Property suites behind ``menon verify``.

Every suite returns a :class:`SuiteResult` listing each violated case with
its full inputs. ``limit`` scales the grids; the defaults reproduce the
acceptance bounds.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import gcd, prod
import random
from typing import Callable, Iterator

from . import arith, groups
from .congruence import (
    IntPoly, count_coprime_solutions, count_solutions, count_solutions_naive, crt_solve,
    eta_linear, linear, parse_poly,
)
from .identities import CATALOG, named_identity, r2_adjacent, r2_adjacent_table
from .multifunc import ID, ONE, PHI, FuncSpec, MultiFunc, check_multiplicative, id_pow, sigma_func, table_func, TAU
from .sums import MenonInstance, r_function, s_function, sum_R_direct, sum_R_formula, sum_S_direct, sum_S_formula

SEED = 20100601
SUITES = ("theorems", "identities", "groups", "lemmas")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, **case) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(case)

    def merge(self, other: "SuiteResult") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)


# -- theorems --------------------------------------------------------------

GRID_FUNCS = (ID, id_pow(2), ONE, PHI)


def random_poly(rng: random.Random, max_degree: int = 2, coeff: int = 3) -> IntPoly:
    degree = rng.randint(1, max_degree)
    coeffs = [rng.randint(-coeff, coeff) for _ in range(degree)] + [rng.choice([-2, -1, 1, 2])]
    return IntPoly(tuple(coeffs))


def random_instances(count: int, seed: int = SEED, funcs=GRID_FUNCS,
                     max_modulus: int = 24) -> Iterator[MenonInstance]:
    """Random (F, G, m) with r <= 3; ``big_modulus`` left at lcm."""
    rng = random.Random(seed)
    for _ in range(count):
        r = rng.randint(1, 3)
        yield MenonInstance(
            tuple(rng.choice(funcs) for _ in range(r)),
            tuple(random_poly(rng) for _ in range(r)),
            tuple(rng.randint(1, max_modulus) for _ in range(r)),
        )


def _describe(inst: MenonInstance) -> dict:
    return {"funcs": [str(f) for f in inst.funcs], "polys": [str(g) for g in inst.polys],
            "moduli": list(inst.moduli), "M": inst.big_modulus}


def theorem_checks(count: int = 500, seed: int = SEED) -> SuiteResult:
    """S and R formulas against direct sums, M-independence, integrality."""
    res = SuiteResult("theorems")
    rng = random.Random(seed + 1)
    for base in random_instances(count, seed):
        m = base.lcm
        inst = base.with_moduli(base.moduli, m * rng.choice((1, 2, 3)))
        s_formula, s_direct = sum_S_formula(inst), sum_S_direct(inst)
        res.check(s_formula == s_direct, check="S formula = direct", **_describe(inst),
                  formula=s_formula, direct=s_direct)
        r_formula = sum_R_formula(inst)
        r_direct = {k: sum_R_direct(base.with_moduli(base.moduli, k * m)) for k in (1, 2, 3)}
        res.check(r_formula == r_direct[inst.big_modulus // m], check="R formula = direct",
                  **_describe(inst), formula=r_formula, direct=r_direct[inst.big_modulus // m])
        res.check(len(set(r_direct.values())) == 1, check="R independent of M",
                  **_describe(base), values=[r_direct[k] for k in (1, 2, 3)])
        if all(f == ID for f in inst.funcs):
            res.check(r_formula.denominator == 1 and r_formula > 0, check="R integral",
                      **_describe(inst), value=r_formula)
    return res


# -- identity catalog ---------------------------------------------------------

def _table_for(bound: int) -> FuncSpec:
    # arbitrary, non-multiplicative, rational-valued
    return table_func({n: Fraction(n * n - 3 * n + 1, n + 1) for n in range(1, bound + 1)},
                      source="synthetic")


RICHARDS_POLYS = ("x-1", "x^2-1", "x^2+1", "x^3-2", "2*x+3", "x^2+x+1", "x^2-2", "x^4+x")
OFFSETS = range(-3, 4)


def identity_cases(name: str, limit: int = 200) -> Iterator[dict]:
    """Parameter sweep for one catalog entry.

    Single-variable identities take every valid ``n <= limit``; several-variable
    ones take every ``m_i <= min(20, limit // 10)`` (at least 2) and offsets in
    [-3, 3]. Multi-index sums cost ``n^s``, so their higher-arity sweeps use
    smaller ``n``.
    """
    N = limit
    B = min(20, max(2, limit // 10))
    ns = range(1, N + 1)
    if name == "menon_classic":
        for n in ns:
            yield {"n": n}
    elif name == "sita_ramaiah":
        funcs = (ID, ONE, PHI, TAU, sigma_func(1), id_pow(2), _table_for(N))
        for n in ns:
            for f in funcs:
                yield {"n": n, "f": f}
    elif name == "nageswara_rao":
        for n in ns:
            for a in OFFSETS:
                if gcd(a, n) == 1:
                    yield {"n": n, "a": (a,)}
        for n in range(1, min(N, 40) + 1):
            for a in product(OFFSETS, repeat=2):
                if arith.gcd_many(*a, n) == 1:
                    yield {"n": n, "a": a}
        for n in range(1, min(N, 12) + 1):
            for a in product((-1, 0, 1, 2), repeat=3):
                if arith.gcd_many(*a, n) == 1:
                    yield {"n": n, "a": a}
    elif name == "richards":
        polys = [parse_poly(t) for t in RICHARDS_POLYS]
        for n in ns:
            for g in polys:
                yield {"n": n, "g": g}
    elif name == "sury":
        for n in ns:
            yield {"n": n, "r": 1}
            yield {"n": n, "r": 2}
        for n in range(1, min(N, 30) + 1):
            yield {"n": n, "r": 3}
    elif name == "linear_bk_minus_a":
        for n in ns:
            for a in OFFSETS:
                for b in OFFSETS:
                    if gcd(b, n) == 1:
                        yield {"n": n, "a": a, "b": b}
    elif name == "square_minus_one":
        for n in ns:
            yield {"n": n}
    elif name == "power_j":
        for n in range(1, N + 1, 2):
            for j in range(1, 7):
                yield {"n": n, "j": j}
    elif name == "power_6":
        for n in range(1, N + 1, 2):
            yield {"n": n}
    elif name == "gcd_kj":
        for n in ns:
            for j in range(1, 5):
                yield {"n": n, "j": j}
    elif name == "general_menon":
        for m in range(1, B + 1):
            for a in OFFSETS:
                yield {"moduli": (m,), "a": (a,)}
        for ms in product(range(1, B + 1), repeat=2):
            for a in product(OFFSETS, repeat=2):
                yield {"moduli": ms, "a": a}
        for ms in product(range(1, min(B, 6) + 1), repeat=3):
            for a in product((-2, 0, 1, 3), repeat=3):
                yield {"moduli": ms, "a": a}
    elif name == "general_menon_t":
        for ms in product(range(1, B + 1), repeat=2):
            for a in product(OFFSETS, repeat=2):
                for t in ((2, 1), (0, 3)):
                    yield {"moduli": ms, "a": a, "t": t}
        for ms in product(range(1, min(B, 5) + 1), repeat=3):
            yield {"moduli": ms, "a": (1, -1, 2), "t": (1, 2, 0)}
    elif name == "r2_same_shift":
        for m1, m2 in product(range(1, B + 1), repeat=2):
            for a in OFFSETS:
                if gcd(a, arith.lcm(m1, m2)) == 1:
                    yield {"m1": m1, "m2": m2, "a": a}
    elif name == "pairwise_coprime":
        for m1, m2 in product(range(1, B + 1), repeat=2):
            if gcd(m1, m2) == 1:
                for a in product(OFFSETS, repeat=2):
                    yield {"moduli": (m1, m2), "a": a}
        small = range(1, min(B, 12) + 1)
        for ms in product(small, repeat=3):
            if all(gcd(x, y) == 1 for x, y in ((ms[0], ms[1]), (ms[0], ms[2]), (ms[1], ms[2]))):
                for a in OFFSETS:
                    yield {"moduli": ms, "a": (a, a + 1, -a)}
    elif name in ("r2_offsets", "r2_adjacent"):
        for m1, m2 in product(range(1, B + 1), repeat=2):
            for a1, a2 in product(OFFSETS, repeat=2):
                if name == "r2_offsets" or abs(a1 - a2) == 1:
                    yield {"m1": m1, "m2": m2, "a1": a1, "a2": a2}
    elif name == "quadratic_legendre":
        odd = range(1, B + 1, 2)
        for m1, m2 in product(odd, repeat=2):
            for a in OFFSETS:
                if gcd(a, arith.lcm(m1, m2)) == 1:
                    yield {"m1": m1, "m2": m2, "a": a}
    elif name == "pillai":
        for m in range(1, N + 1):
            yield {"moduli": (m,)}
        for ms in product(range(1, B + 1), repeat=2):
            yield {"moduli": ms}
        for ms in product(range(1, min(B, 8) + 1), repeat=3):
            yield {"moduli": ms}
    else:
        raise KeyError(name)


def _jsonable(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        out[k] = str(v) if isinstance(v, (IntPoly, FuncSpec)) else (list(v) if isinstance(v, tuple) else v)
    return out


def identity_checks(limit: int = 200, names=None) -> SuiteResult:
    res = SuiteResult("identities")
    for name in names or sorted(CATALOG):
        for params in identity_cases(name, limit):
            rep = named_identity(name, **params)
            res.check(rep.match, identity=name, **_jsonable(params), lhs=rep.lhs, rhs=rep.rhs)
    return res


def r2_adjacent_table_checks(primes=(2, 3, 5), exps=range(1, 4)) -> SuiteResult:
    res = SuiteResult("r2_adjacent_table")
    for p in primes:
        for u, v in product(exps, repeat=2):
            for a1 in OFFSETS:
                for a2 in (a1 - 1, a1 + 1):
                    lhs, _ = r2_adjacent(p**u, p**v, a1, a2)
                    table = r2_adjacent_table(p, u, v, a1, a2)
                    res.check(lhs == table, p=p, u=u, v=v, a1=a1, a2=a2, direct=lhs, table=table)
    return res


# -- groups --------------------------------------------------------------------

def order_tuples(limit: int, max_r: int = 3) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of length 1..max_r with product <= limit."""
    def extend(prefix, budget):
        if prefix:
            yield prefix
        if len(prefix) == max_r:
            return
        for m in range(1, budget + 1):
            yield from extend(prefix + (m,), budget // m)
    yield from extend((), limit)


def three_way_checks(limit: int = 2000) -> SuiteResult:
    """formula = burnside = enumerate on every ordered tuple with product <= limit."""
    res = SuiteResult("cyclic three-way")
    for orders in order_tuples(limit):
        values = [groups.METHODS[m](orders) for m in ("formula", "burnside", "enumerate")]
        res.check(len(set(values)) == 1, orders=list(orders), formula=values[0],
                  burnside=values[1], enumerate=values[2])
    return res


def group_checks(limit: int = 2000) -> SuiteResult:
    res = SuiteResult("groups")
    res.merge(three_way_checks(limit))
    bound = min(40, max(2, limit // 50))
    for m1, m2 in product(range(1, bound + 1), repeat=2):
        a, b = groups.cyclic_count_formula((m1, m2)), groups.cyclic_count_r2_gcd(m1, m2)
        res.check(a == b, check="two-factor gcd form", orders=[m1, m2], formula=a, gcd_form=b)
    for p in (2, 3, 5):
        for u in range(1, 5):
            for v in range(1, u + 1):
                closed = groups.cyclic_count_prime_power_pair(p, u, v)
                formula = groups.cyclic_count_formula((p**u, p**v))
                res.check(closed == formula, check="prime-power pair", p=p, u=u, v=v,
                          closed=closed, formula=formula)
    for orders in order_tuples(min(limit, 300)):
        base = groups.cyclic_count_formula(orders)
        for perm in set(permutations(orders)):
            res.check(groups.cyclic_count_formula(perm) == base, check="order invariance",
                      orders=list(perm))
    c = MultiFunc(2, lambda *m: groups.cyclic_count_formula(m), "c")
    for fail in check_multiplicative(c, 8):
        res.check(False, check="c multiplicative", m=list(fail[0]), n=list(fail[1]))
    res.checked += 1
    return res


# -- lemmas / congruence --------------------------------------------------------

def _coprime_pair(rng: random.Random, r: int, bound: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    m = tuple(rng.randint(1, bound) for _ in range(r))
    mprod = prod(m)
    n = []
    for _ in range(r):
        x = rng.randint(1, bound)
        while gcd(x, mprod) != 1:
            x = rng.randint(1, bound)
        n.append(x)
    return m, tuple(n)


def count_multiplicativity_checks(count: int = 300, seed: int = SEED, bound: int = 30,
                  max_lcm: int = 50_000) -> SuiteResult:
    """N_G and eta_G multiplicative, each side computed by unsplit brute force."""
    res = SuiteResult("count multiplicativity")
    rng = random.Random(seed + 2)
    for _ in range(count):
        r = rng.randint(1, 3)
        polys = tuple(random_poly(rng, 3) for _ in range(r))
        # the oracle scans every residue mod lcm(mn); redraw oversized tuples
        m, n = _coprime_pair(rng, r, bound)
        while arith.lcm(*m, *n) > max_lcm:
            m, n = _coprime_pair(rng, r, bound)
        mn = tuple(a * b for a, b in zip(m, n))
        for coprime in (False, True):
            whole = count_solutions_naive(polys, mn, coprime)
            parts = count_solutions_naive(polys, m, coprime) * count_solutions_naive(polys, n, coprime)
            split = (count_coprime_solutions if coprime else count_solutions)(polys, mn)
            res.check(whole == parts == split, coprime=coprime, polys=[str(g) for g in polys],
                      m=list(m), n=list(n), whole=whole, product=parts, split=split)
    return res


def unit_residue_checks(limit: int = 200) -> SuiteResult:
    res = SuiteResult("unit residue count")
    for n in range(1, limit + 1):
        units = [k for k in range(1, n + 1) if gcd(k, n) == 1]
        phi_n = len(units)
        for d in arith.divisors(n):
            expected = Fraction(phi_n, arith.euler_phi(d))
            for x in range(1, d + 1):
                if gcd(x, d) == 1:
                    got = sum(1 for k in units if (k - x) % d == 0)
                    res.check(got == expected, n=n, d=d, x=x, count=got, expected=expected)
    return res


def eta_linear_checks(max_r: int = 3, max_d: int = 12, offsets=range(-5, 6)) -> SuiteResult:
    res = SuiteResult("eta_linear")
    for r in range(1, max_r + 1):
        polys_cache = {}
        for a in product(offsets, repeat=r):
            polys = polys_cache.setdefault(a, tuple(linear(x) for x in a))
            for ds in product(range(1, max_d + 1), repeat=r):
                closed = eta_linear(a, ds)
                counted = count_coprime_solutions(polys, ds)
                if closed != counted:
                    res.check(False, a=list(a), d=list(ds), closed=closed, counted=counted)
                else:
                    res.checked += 1
    return res


def crt_checks(limit: int = 30) -> SuiteResult:
    res = SuiteResult("crt")
    rng = random.Random(SEED + 3)
    for _ in range(limit * 20):
        pairs = [(rng.randint(-limit, limit), rng.randint(1, limit)) for _ in range(rng.randint(1, 3))]
        sol = crt_solve(pairs)
        L = arith.lcm(*(d for _, d in pairs))
        brute = [x for x in range(L) if all((x - a) % d == 0 for a, d in pairs)]
        ok = (sol is None and not brute) or (sol is not None and brute == [sol.residue] and sol.modulus == L)
        res.check(ok, pairs=[list(p) for p in pairs], solution=None if sol is None else list(sol),
                  brute=brute)
    return res


def lemma_checks(limit: int = 200) -> SuiteResult:
    res = SuiteResult("lemmas")
    res.merge(count_multiplicativity_checks(count=max(50, limit + limit // 2)))
    res.merge(unit_residue_checks(limit))
    max_d = min(12, max(2, limit // 16))
    res.merge(eta_linear_checks(max_d=max_d))
    res.merge(crt_checks())
    return res


# -- multiplicativity of S, R ------------------------------------------------

MULT_SYSTEMS = (
    ((ID, PHI), ("x^2+1", "x-1")),
    ((id_pow(2), ONE), ("x", "2*x+1")),
    ((ID, ID), ("x-1", "x+1")),
    ((TAU, ID), ("x^2-2", "x^3+x+1")),
)


def multiplicativity_checks(bound: int = 10, systems=MULT_SYSTEMS) -> SuiteResult:
    res = SuiteResult("multiplicativity")
    for funcs, texts in systems:
        polys = tuple(parse_poly(t) for t in texts)
        for label, f in (("S", s_function(funcs, polys)), ("R", r_function(funcs, polys))):
            fails = check_multiplicative(f, bound)
            res.check(not fails, function=label, funcs=[str(x) for x in funcs], polys=list(texts),
                      counterexamples=[[list(m), list(n)] for m, n, *_ in fails[:5]])
    c = MultiFunc(2, lambda *m: groups.cyclic_count_formula(m), "c")
    fails = check_multiplicative(c, bound)
    res.check(not fails, function="c", counterexamples=[[list(m), list(n)] for m, n, *_ in fails[:5]])
    return res


RUNNERS: dict[str, Callable[[int], SuiteResult]] = {
    "theorems": lambda limit: _merged("theorems", theorem_checks(limit),
                                      multiplicativity_checks(min(10, max(2, limit // 50)))),
    "identities": lambda limit: _merged("identities", identity_checks(limit),
                                        r2_adjacent_table_checks()),
    "groups": group_checks,
    "lemmas": lemma_checks,
}


def _merged(name: str, *parts: SuiteResult) -> SuiteResult:
    res = SuiteResult(name)
    for p in parts:
        res.merge(p)
    return res


def run_suite(name: str, limit: int) -> list[SuiteResult]:
    names = SUITES if name == "all" else (name,)
    return [RUNNERS[n](limit) for n in names]
