"""Acceptance suite: one test per criterion, each printing a pass/fail line.

All results are exact residue congruences, so every comparison is equality;
the only tolerances are the stated runtime budgets.  Run with `pytest -s
tests/test_acceptance.py` to see the per-criterion lines.
"""

import time

from reference_tables import COEFF_6_9, COEFF_7_7, SUM_6_9, SUM_7_7, grid_of
from wolstenholme.cli import eval_closed, eval_coeff, eval_esp, spec_from_expression
from wolstenholme.closedforms import normalize_spec, triple_general
from wolstenholme.general import (
    GeneralSumParams,
    coeff_extraction_sum,
    esp_sum,
    multi_index_J,
    newton_esp,
    scaling_reduce,
)
from wolstenholme.modarith import is_prime, make_prime
from wolstenholme.oracle import brute_sum, brute_sum_mod_p2, make_spec
from wolstenholme.polyring import symbolic_coeff_table, symbolic_sum_table
from wolstenholme.verify import IDENTITY_SUITE, run_one

P17 = make_prime(17)


def _report(criterion: int, summary: str, elapsed: float) -> None:
    print(f"[acceptance] criterion {criterion:2d}: PASS  {summary}  ({elapsed:.3f}s)")


def _timed(fn, repeats: int = 5) -> tuple[object, float]:
    """Best-of-n wall time, filtering single-core scheduler noise."""
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return result, best


def test_criterion_01_worked_example_ratio_p17():
    spec = make_spec(P17, [(7, 9), (3, -13), (8, -8)])

    def run():
        brute = brute_sum(spec)
        norm = normalize_spec(spec)
        (a, m), (b, n), (_, s) = norm.terms
        closed = triple_general(P17, a, b, m, n, s)
        gp = GeneralSumParams(P17, tuple(o for o, _ in norm.terms), tuple(e for _, e in norm.terms))
        multi = multi_index_J(gp)
        return brute, closed, multi

    (brute, closed, multi), elapsed = _timed(run)
    assert brute == closed == multi == 8
    assert elapsed < 0.001
    _report(1, "ratio sum mod 17 = 8 by brute, triple closed form, multi-index", elapsed)


def test_criterion_02_worked_example_product_p17():
    spec = make_spec(P17, [(14, 3), (10, 8), (4, 9)])

    def run():
        return (
            brute_sum(spec),
            eval_closed(spec),
            eval_coeff(spec),
            eval_esp(spec),
        )

    values, elapsed = _timed(run)
    assert set(values) == {15}
    assert elapsed < 0.001
    # the staged reduction pipeline: shift, rescale, Newton recursion
    shifted = GeneralSumParams(P17, (10, 6, 0), (3, 8, 9))
    scale, reduced = scaling_reduce(shifted)
    assert scale == 4
    assert reduced.offsets == (13, 1, 0)
    es = newton_esp(reduced, 4)
    assert (es[1], es[2], es[3], es[4]) == (4, 14, 11, 9)
    assert scale * (-es[4]) % 17 == 15
    _report(2, "product sum mod 17 = 15 by all four strategies; e1..e4 = 4,-3,-6,9", elapsed)


def test_criterion_03_worked_example_triple_ratio_p23():
    pr = make_prime(23)
    spec = make_spec(pr, [(7, -16), (13, -17), (18, -19)])

    def run():
        norm = normalize_spec(spec)
        (a, m), (b, n), (_, s) = norm.terms
        return brute_sum(spec), triple_general(pr, a, b, m, n, s)

    (brute, closed), elapsed = _timed(run)
    assert brute == closed == 0
    assert elapsed < 0.001
    _report(3, "triple reciprocal sum mod 23 = 0", elapsed)


def test_criterion_04_ratio_single_exhaustive():
    t0 = time.perf_counter()
    total = 0
    for p in (5, 7, 11, 13):
        rep = run_one("thm2.1", p, budget=10_000)
        assert rep.passed and rep.exhaustive
        assert rep.grid == (p - 1) * p * p
        total += rep.grid
    elapsed = time.perf_counter() - t0
    assert elapsed < 30
    _report(4, f"single-offset ratio closed form == brute on {total} tuples", elapsed)


def test_criterion_05_pair_and_triple_exhaustive():
    theorems = ("thm2.3", "thm2.6", "thm2.8", "thm3.1", "thm3.4", "thm3.5", "thm3.6")
    t0 = time.perf_counter()
    total = 0
    for theorem in theorems:
        for p in (5, 7, 11):
            rep = run_one(theorem, p, budget=100_000)
            assert rep.passed and rep.exhaustive, (theorem, p, rep.failures[:3])
            total += rep.grid
        rep13 = run_one(theorem, 13, budget=100_000)
        assert rep13.passed, (theorem, 13, rep13.failures[:3])
        # grids smaller than the sample floor are simply exhausted instead
        assert rep13.exhaustive or rep13.grid >= 10_000
        total += rep13.grid
    elapsed = time.perf_counter() - t0
    assert elapsed < 300
    _report(5, f"pair/triple closed forms == brute on {total} tuples", elapsed)


def test_criterion_06_general_strategies_agree():
    t0 = time.perf_counter()
    grids = {}
    for theorem in ("thm4.1", "thm4.4", "thm4.5"):
        for p in (5, 7, 11):
            rep = run_one(theorem, p, budget=10_000, seed=0)
            assert rep.passed, (theorem, p, rep.failures[:3])
            grids.setdefault(p, []).append(rep.grid)
    # identical budgets and seeds draw identical tuples, so the three
    # evaluators were compared against brute force on the same grid
    for p, counts in grids.items():
        assert len(set(counts)) == 1
    elapsed = time.perf_counter() - t0
    total = sum(counts[0] for counts in grids.values())
    _report(6, f"multi-index == coeff == esp == brute on {total} tuples per route", elapsed)


def test_criterion_07_identity_suites_exhaustive():
    primes = [q for q in range(5, 32) if is_prime(q)]
    t0 = time.perf_counter()
    total = 0
    for theorem in IDENTITY_SUITE:
        for p in primes:
            rep = run_one(theorem, p, budget=33_000_000)
            assert rep.passed, (theorem, p, rep.failures[:3])
            assert rep.exhaustive, (theorem, p)
            total += rep.grid
    elapsed = time.perf_counter() - t0
    assert elapsed < 120
    _report(7, f"identity suites exhaustive for p <= 31: {total} instances", elapsed)


def test_criterion_08_golden_tables():
    t0 = time.perf_counter()
    pr = make_prime(11)
    for (m, n, golden) in ((7, 7, COEFF_7_7), (6, 9, COEFF_6_9)):
        rows = symbolic_coeff_table(pr, m, n)
        for j, text in golden.items():
            assert rows[j].coeffs == grid_of(text, 11, m + 1, n + 1), (m, n, j)
    for (m, n, golden) in ((7, 7, SUM_7_7), (6, 9, SUM_6_9)):
        rows = symbolic_sum_table(pr, m, n)
        for s, text in golden.items():
            assert rows[s - 1].coeffs == grid_of(text, 11, m + 1, n + 1), (m, n, s)
    elapsed = time.perf_counter() - t0
    _report(8, "all 51 reference table rows reproduced coefficient-for-coefficient", elapsed)


def test_criterion_09_figure_invariants():
    t0 = time.perf_counter()
    rep = run_one("figures", 11)
    assert rep.passed and rep.exhaustive
    assert rep.grid == 10 * 6  # six observations for every offset
    elapsed = time.perf_counter() - t0
    _report(9, "residue-matrix observations hold for p = 11, every offset", elapsed)


def test_criterion_10_mod_p2_properties():
    primes = [q for q in range(5, 98) if is_prime(q)]
    t0 = time.perf_counter()
    for p in primes:
        rep = run_one("thm1.3", p)
        assert rep.passed, (p, rep.failures[:3])
        rep2 = run_one("thm1.2", p)
        assert rep2.passed, (p, rep2.failures[:3])
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    # the mod-p^2 form of the odd congruence needs (p-1) to not divide 2n;
    # at p = 5, exponent 3 the sum is 20 mod 25 (zero only mod 5)
    assert brute_sum_mod_p2(make_prime(5), 3) == 20
    _report(10, f"harmonic/reciprocal sums verified mod p^2 for {len(primes)} primes", elapsed)


def test_criterion_11_table_correspondence():
    t0 = time.perf_counter()
    total = 0
    for p in (5, 7, 11):
        rep = run_one("tablecorr", p, budget=10_000)
        assert rep.passed and rep.exhaustive
        total += rep.grid
    elapsed = time.perf_counter() - t0
    _report(11, f"sum-table rows match summed coefficient rows ({total} rows)", elapsed)
