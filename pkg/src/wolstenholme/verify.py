"""Theorem verification registry: exhaustive or seeded-sampled grid checks.

Every congruence the library implements is registered here under a stable id.
A check enumerates the statement's hypothesis grid for one prime, evaluates
the claim both ways (closed form vs brute force, or lhs vs rhs), and returns
a VerificationReport.  Grids at or below the budget run exhaustively; larger
ones draw seeded-uniform samples so failures reproduce.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from operator import mul

from . import closedforms as cf
from . import general as gen
from . import identities as ident
from .errors import UnknownTheoremError
from .modarith import Prime, binom, make_prime, mod_inverse, pow_nonzero
from .oracle import SumSpec, auto_exclusions, brute_sum, brute_sum_mod_p2, residue_matrix
from .polyring import bipoly_add, symbolic_coeff_table, symbolic_sum_table

THREADS_ENV = "WOLSTENHOLME_THREADS"


@dataclass
class VerificationReport:
    """Outcome of checking one theorem id at one prime."""

    theorem: str
    prime: int
    grid: int
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    strategies: tuple[str, str] = ("lhs", "rhs")
    exhaustive: bool = True
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "theorem": self.theorem,
                "p": self.prime,
                "grid": self.grid,
                "pass": self.passed,
                "failures": self.failures[:50],
                "failure_count": len(self.failures),
                "elapsed_s": round(self.elapsed, 6),
                "strategies": list(self.strategies),
                "exhaustive": self.exhaustive,
                "seed": self.seed,
            }
        )


def _fail(failures: list, params: dict, expected: int, got: int) -> None:
    failures.append({"params": params, "expected": expected, "got": got})


# --- brute-force counterparts -------------------------------------------------

def _brute_ratio_single(pr: Prime, a: int, m: int, n: int) -> int:
    """Direct sum over k != a of k^m (a-k)^(-n); ground truth for thm2.1."""
    p = pr.p
    total = 0
    for k in range(1, p):
        if k == a:
            continue
        total += pow(k, m, p) * pow(mod_inverse(a - k, p), n, p)
    return total % p


def _spec_ratio_pair(pr, a, b, m, n) -> SumSpec:
    return SumSpec(pr, ((a % pr.p, m), (b % pr.p, -n)), frozenset({(-a) % pr.p, (-b) % pr.p}))


def _spec_products(pr, *terms) -> SumSpec:
    return SumSpec(pr, tuple((off % pr.p, e) for off, e in terms), frozenset())


# --- grid helpers -------------------------------------------------------------

def _distinct_pairs(p, lo=1):
    return [(a, b) for a in range(lo, p) for b in range(lo, p) if a != b]


def _sample_distinct(rng, p, count, lo=1):
    vals = rng.sample(range(lo, p), count)
    return tuple(vals)


# --- per-theorem checks -------------------------------------------------------
# Each returns (grid_size, failures, exhaustive); mode is "p2" (full stated
# moduli) or "p" (reduce the mod-p^2 statements to mod p).


def _run_thm1_1(pr, budget, seed, mode):
    p = pr.p
    failures = []
    grid = 0
    for n in range(0, 3 * (p - 1) + 1):
        got = cf.power_sum(pr, n)
        expected = sum(pow(k, n, p) for k in range(1, p)) % p
        grid += 1
        if expected != got:
            _fail(failures, {"n": n}, expected, got)
    return grid, failures, True


def _run_thm1_2(pr, budget, seed, mode):
    p = pr.p
    p2 = p * p
    failures = []
    checks = []
    h1 = brute_sum_mod_p2(pr, 1)
    checks.append(({"exp": 1, "mod": "p2"}, 0, h1 % (p2 if mode == "p2" else p)))
    h2 = brute_sum_mod_p2(pr, 2) % p
    checks.append(({"exp": 2, "mod": "p"}, 0, h2))
    h3 = brute_sum_mod_p2(pr, 3)
    checks.append(({"exp": 3, "mod": "p"}, 0, h3 % p))
    if p > 5:
        # the strengthening of the cubic harmonic sum, verified numerically
        checks.append(({"exp": 3, "mod": "p2"}, 0, h3 % (p2 if mode == "p2" else p)))
    for params, expected, got in checks:
        if expected != got:
            _fail(failures, params, expected, got)
    return len(checks), failures, True


def _run_thm1_3(pr, budget, seed, mode):
    p = pr.p
    p2 = p * p
    failures = []
    grid = 0
    for n in range(1, (p - 1) // 2 + 1):
        # the mod-p^2 congruence needs (p-1) to not divide 2n; at the edge
        # 2n = p-1 the odd-exponent sum is only divisible by p, not p^2
        strong = 2 * n < p - 1
        modulus = p2 if (mode == "p2" and strong) else p
        odd = brute_sum_mod_p2(pr, 2 * n - 1) % modulus
        grid += 1
        if odd != 0:
            _fail(failures, {"exp": 2 * n - 1, "mod": "p2" if strong else "p"}, 0, odd)
        if strong:  # at 2n = p-1 every term is 1, the sum -1, not 0
            even = brute_sum_mod_p2(pr, 2 * n) % p
            grid += 1
            if even != 0:
                _fail(failures, {"exp": 2 * n, "mod": "p"}, 0, even)
    return grid, failures, True


def _run_thm2_1(pr, budget, seed, mode):
    p = pr.p
    failures = []
    count = (p - 1) * p * p
    if count <= budget:
        tuples = ((a, m, n) for a in range(1, p) for m in range(p) for n in range(p))
        exhaustive = True
    else:
        rng = random.Random(seed)
        tuples = (
            (rng.randrange(1, p), rng.randrange(p), rng.randrange(p))
            for _ in range(budget)
        )
        exhaustive = False
    grid = 0
    for a, m, n in tuples:
        expected = _brute_ratio_single(pr, a, m, n)
        got = cf.ratio_single(pr, a, m, n)
        grid += 1
        if expected != got:
            _fail(failures, {"a": a, "m": m, "n": n}, expected, got)
    return grid, failures, exhaustive


def _run_thm2_3(pr, budget, seed, mode):
    p = pr.p
    failures = []
    count = p * (p - 1) * p * p
    if count <= budget:
        grid = 0
        for a in range(p):
            for b in range(p):
                if a == b:
                    continue
                for m in range(p):
                    for n in range(p):
                        expected = brute_sum(_spec_ratio_pair(pr, a, b, m, n))
                        got = cf.ratio_pair(pr, a, b, m, n)
                        grid += 1
                        if expected != got:
                            _fail(failures, {"a": a, "b": b, "m": m, "n": n}, expected, got)
        return grid, failures, True
    rng = random.Random(seed)
    for _ in range(budget):
        a, b = _sample_distinct(rng, p, 2, lo=0)
        m = rng.randrange(p)
        n = rng.randrange(p)
        expected = brute_sum(_spec_ratio_pair(pr, a, b, m, n))
        got = cf.ratio_pair(pr, a, b, m, n)
        if expected != got:
            _fail(failures, {"a": a, "b": b, "m": m, "n": n}, expected, got)
    return budget, failures, False


def _run_rem2_5(pr, budget, seed, mode):
    p = pr.p
    failures = []
    count = p * (p - 1) ** 2
    if count <= budget:
        tuples = ((a, m, n) for a in range(p) for m in range(1, p) for n in range(1, p))
        exhaustive = True
    else:
        rng = random.Random(seed)
        tuples = (
            (rng.randrange(p), rng.randrange(1, p), rng.randrange(1, p))
            for _ in range(budget)
        )
        exhaustive = False
    grid = 0
    for a, m, n in tuples:
        spec = SumSpec(pr, ((a, m), (a, -n)), frozenset({(-a) % p}))
        expected = brute_sum(spec)
        got = cf.ratio_equal_offsets(pr, a, m, n)
        grid += 1
        if expected != got:
            _fail(failures, {"a": a, "m": m, "n": n}, expected, got)
    return grid, failures, exhaustive


def _run_thm2_6(pr, budget, seed, mode):
    p = pr.p
    failures = []
    count = (p - 1) ** 3
    if count <= budget:
        tuples = (
            (a, m, n)
            for a in range(1, p)
            for m in range(1, p)
            for n in range(1, p)
        )
        exhaustive = True
    else:
        rng = random.Random(seed)
        tuples = (
            (rng.randrange(1, p), rng.randrange(1, p), rng.randrange(1, p))
            for _ in range(budget)
        )
        exhaustive = False
    grid = 0
    for a, m, n in tuples:
        expected = brute_sum(_spec_products(pr, (a, m), (0, n)))
        got = cf.product_pair_k(pr, a, m, n)
        grid += 1
        if expected != got:
            _fail(failures, {"a": a, "m": m, "n": n}, expected, got)
    return grid, failures, exhaustive


def _run_thm2_8(pr, budget, seed, mode):
    p = pr.p
    failures = []
    count = (p - 1) * (p - 2) * (p - 1) ** 2
    if count <= budget:
        tuples = (
            (a, b, m, n)
            for a, b in _distinct_pairs(p)
            for m in range(1, p)
            for n in range(1, p)
        )
        exhaustive = True
    else:
        rng = random.Random(seed)

        def draw():
            for _ in range(budget):
                a, b = _sample_distinct(rng, p, 2)
                yield a, b, rng.randrange(1, p), rng.randrange(1, p)

        tuples = draw()
        exhaustive = False
    grid = 0
    for a, b, m, n in tuples:
        expected = brute_sum(_spec_products(pr, (a, m), (b, n)))
        got = cf.product_pair(pr, a, b, m, n)
        grid += 1
        if expected != got:
            _fail(failures, {"a": a, "b": b, "m": m, "n": n}, expected, got)
    return grid, failures, exhaustive


def _triple_exps(pr, budget, seed, arity):
    """Exponent tuples for the triple-sum grids: full grid or seeded sample."""
    p = pr.p
    count = (p - 1) * (p - 2) * (p - 1) ** arity
    if count <= budget:
        return None, True  # caller enumerates exhaustively
    return random.Random(seed), False


def _run_thm3_1(pr, budget, seed, mode):
    p = pr.p
    failures = []
    rng, exhaustive = _triple_exps(pr, budget, seed, 3)
    grid = 0
    if exhaustive:
        for a, b in _distinct_pairs(p):
            for m in range(1, p):
                for n in range(1, p):
                    for s in range(1, p):
                        expected = brute_sum(_spec_products(pr, (a, m), (b, n), (0, s)))
                        got = cf.triple_binomial(cf.TripleParams(pr, a, b, 0, m, n, s))
                        grid += 1
                        if expected != got:
                            _fail(failures, {"a": a, "b": b, "m": m, "n": n, "s": s}, expected, got)
    else:
        for _ in range(budget):
            a, b = _sample_distinct(rng, p, 2)
            m, n, s = (rng.randrange(1, p) for _ in range(3))
            expected = brute_sum(_spec_products(pr, (a, m), (b, n), (0, s)))
            got = cf.triple_binomial(cf.TripleParams(pr, a, b, 0, m, n, s))
            grid += 1
            if expected != got:
                _fail(failures, {"a": a, "b": b, "m": m, "n": n, "s": s}, expected, got)
    return grid, failures, exhaustive


def _run_triple_fixed_s(pr, budget, seed, op, s_fixed):
    p = pr.p
    failures = []
    rng, exhaustive = _triple_exps(pr, budget, seed, 2)
    grid = 0
    if exhaustive:
        pairs = (
            (a, b, m, n)
            for a, b in _distinct_pairs(p)
            for m in range(1, p)
            for n in range(1, p)
        )
    else:
        def draw():
            for _ in range(budget):
                a, b = _sample_distinct(rng, p, 2)
                yield a, b, rng.randrange(1, p), rng.randrange(1, p)

        pairs = draw()
    for a, b, m, n in pairs:
        expected = brute_sum(_spec_products(pr, (a, m), (b, n), (0, s_fixed)))
        got = op(pr, a, b, m, n)
        grid += 1
        if expected != got:
            _fail(failures, {"a": a, "b": b, "m": m, "n": n}, expected, got)
    return grid, failures, exhaustive


def _run_thm3_4(pr, budget, seed, mode):
    return _run_triple_fixed_s(pr, budget, seed, cf.triple_s1, 1)


def _run_thm3_5(pr, budget, seed, mode):
    return _run_triple_fixed_s(pr, budget, seed, cf.triple_s2, 2)


def _run_thm3_6(pr, budget, seed, mode):
    p = pr.p
    failures = []
    rng, exhaustive = _triple_exps(pr, budget, seed, 3)
    grid = 0
    if exhaustive:
        for a, b in _distinct_pairs(p):
            for m in range(1, p):
                for n in range(1, p):
                    for s in range(1, p):
                        expected = brute_sum(_spec_products(pr, (a, m), (b, n), (0, s)))
                        got = cf.triple_general(pr, a, b, m, n, s)
                        grid += 1
                        if expected != got:
                            _fail(failures, {"a": a, "b": b, "m": m, "n": n, "s": s}, expected, got)
    else:
        for _ in range(budget):
            a, b = _sample_distinct(rng, p, 2)
            m, n, s = (rng.randrange(1, p) for _ in range(3))
            expected = brute_sum(_spec_products(pr, (a, m), (b, n), (0, s)))
            got = cf.triple_general(pr, a, b, m, n, s)
            grid += 1
            if expected != got:
                _fail(failures, {"a": a, "b": b, "m": m, "n": n, "s": s}, expected, got)
    return grid, failures, exhaustive


def _general_grid(pr, budget, seed, arity, check):
    """Shared sweep over distinct-offset tuples and exponent grids for the
    n-term sums.

    Fully exhaustive when the joint domain fits the budget.  Otherwise the
    distinct-offset tuples are still enumerated exhaustively while exponent
    tuples are seeded-sampled, capping the total near the budget; if even the
    offset tuples alone exceed the budget, both are sampled.
    """
    p = pr.p
    failures = []
    offset_tuples = []

    def offsets_rec(prefix):
        if len(prefix) == arity:
            offset_tuples.append(tuple(prefix))
            return
        for a in range(p):
            if a not in prefix:
                offsets_rec(prefix + [a])

    count_offsets = 1
    for i in range(arity):
        count_offsets *= p - i
    count = count_offsets * (p - 1) ** arity
    grid = 0

    def run_tuple(offs, exps):
        nonlocal grid
        expected, got = check(offs, exps)
        grid += 1
        if expected != got:
            _fail(failures, {"offsets": list(offs), "exps": list(exps)}, expected, got)

    if count <= budget:
        offsets_rec([])
        for offs in offset_tuples:
            for exps in _exp_tuples(p, arity):
                run_tuple(offs, exps)
        return grid, failures, True
    rng = random.Random(seed)
    if count_offsets <= budget:
        offsets_rec([])
        per_offsets = max(1, budget // count_offsets)
        for offs in offset_tuples:
            for _ in range(per_offsets):
                exps = tuple(rng.randrange(1, p) for _ in range(arity))
                run_tuple(offs, exps)
        return grid, failures, False
    for _ in range(budget):
        offs = tuple(rng.sample(range(p), arity))
        exps = tuple(rng.randrange(1, p) for _ in range(arity))
        run_tuple(offs, exps)
    return grid, failures, False


def _exp_tuples(p, arity):
    if arity == 1:
        for m in range(1, p):
            yield (m,)
    else:
        for rest in _exp_tuples(p, arity - 1):
            for m in range(1, p):
                yield rest + (m,)


def _run_general(pr, budget, seed, mode, evaluator):
    total_grid = 0
    failures = []
    exhaustive = True
    for arity in (2, 3, 4):
        def check(offs, exps):
            gp = gen.GeneralSumParams(pr, offs, exps)
            spec = _spec_products(pr, *zip(offs, exps))
            return brute_sum(spec), evaluator(gp)

        grid, fails, exh = _general_grid(pr, budget, seed + arity, arity, check)
        total_grid += grid
        failures.extend(fails)
        exhaustive = exhaustive and exh
    return total_grid, failures, exhaustive


def _run_thm4_1(pr, budget, seed, mode):
    return _run_general(pr, budget, seed, mode, gen.multi_index_J)


def _run_thm4_4(pr, budget, seed, mode):
    return _run_general(pr, budget, seed, mode, gen.coeff_extraction_sum)


def _run_thm4_5(pr, budget, seed, mode):
    return _run_general(pr, budget, seed, mode, gen.esp_sum)


def _run_eq2(pr, budget, seed, mode):
    p = pr.p
    failures = []
    grid = 0
    for n in range(p):
        for k in range(n + 1):
            for s in range(k + 1):
                inst = ident.cancellation(pr, n, k, s)
                grid += 1
                if not inst.holds:
                    _fail(failures, inst.params, inst.lhs, inst.rhs)
    return grid, failures, True


def _run_eq3(pr, budget, seed, mode):
    p = pr.p
    failures = []
    grid = 0
    for k in range(p):
        for s in range(k + 1):
            for inst in ident.semi_symmetry(pr, k, s):
                grid += 1
                if not inst.holds:
                    _fail(failures, inst.params, inst.lhs, inst.rhs)
    return grid, failures, True


def _run_cor2_7(pr, budget, seed, mode):
    p = pr.p
    failures = []
    grid = 0
    for m in range(p):
        for n in range(p):
            inst = ident.transpose_binomial(pr, m, n)
            grid += 1
            if not inst.holds:
                _fail(failures, inst.params, inst.lhs, inst.rhs)
    return grid, failures, True


def _cong_grid_count(p):
    total = 0
    for m in range(p):
        for n in range(p):
            base = m + n - (p - 1)
            s_lo = -base if base < 0 else 0
            s_hi = min(p - 1, p - 2 - base)
            for s in range(s_lo, s_hi + 1):
                total += base + s + 1  # j = 0..M
    return total


def _run_thm3_11(pr, budget, seed, mode):
    p = pr.p
    failures = []
    grid = 0
    cg = ident.cong_general
    if _cong_grid_count(p) <= budget:
        for m in range(p):
            for n in range(p):
                base = m + n - (p - 1)
                s_lo = -base if base < 0 else 0
                s_hi = min(p - 1, p - 2 - base)
                for s in range(s_lo, s_hi + 1):
                    M = base + s
                    for j in range(M + 1):
                        inst = cg(pr, m, n, s, j)
                        if inst.lhs != inst.rhs:
                            _fail(failures, inst.params, inst.lhs, inst.rhs)
                    grid += M + 1
        return grid, failures, True
    rng = random.Random(seed)
    while grid < budget:
        m, n = rng.randrange(p), rng.randrange(p)
        base = m + n - (p - 1)
        s_lo = -base if base < 0 else 0
        s_hi = min(p - 1, p - 2 - base)
        if s_hi < s_lo:
            continue
        s = rng.randrange(s_lo, s_hi + 1)
        j = rng.randrange(base + s + 1)
        inst = cg(pr, m, n, s, j)
        grid += 1
        if inst.lhs != inst.rhs:
            _fail(failures, inst.params, inst.lhs, inst.rhs)
    return grid, failures, False


def _comp_window(p, m, n):
    base = m + n - (p - 1)
    s_lo = -base if base < 0 else 0
    s_hi = p - 2 - base
    if s_hi > p - 1:
        s_hi = p - 1
    return s_lo, s_hi


def _comp_grid_count(p):
    per_ab = 0
    for m in range(1, p):
        for n in range(1, p):
            s_lo, s_hi = _comp_window(p, m, n)
            if s_hi >= s_lo:
                per_ab += s_hi - s_lo + 1
    return (p - 1) * (p - 2) * per_ab


def _run_thm3_13(pr, budget, seed, mode):
    p = pr.p
    failures = []
    grid = 0
    sides = ident.comp_sides
    if _comp_grid_count(p) <= budget:
        pm1 = p - 1
        for a in range(1, p):
            for b in range(1, p):
                if b == a:
                    continue
                for m in range(1, p):
                    for n in range(1, p):
                        s_lo, s_hi = _comp_window(p, m, n)
                        if s_hi < s_lo:
                            continue
                        M = m + n + s_lo - pm1
                        for s in range(s_lo, s_hi + 1):
                            lhs, rhs = sides(pr, a, b, m, n, s, M)
                            if lhs != rhs:
                                _fail(
                                    failures,
                                    {"a": a, "b": b, "m": m, "n": n, "s": s},
                                    lhs,
                                    rhs,
                                )
                            M += 1
                        grid += s_hi - s_lo + 1
        return grid, failures, True
    rng = random.Random(seed)
    cg = ident.comp_general
    while grid < budget:
        a, b = _sample_distinct(rng, p, 2)
        m, n = rng.randrange(1, p), rng.randrange(1, p)
        s_lo, s_hi = _comp_window(p, m, n)
        if s_hi < s_lo:
            continue
        s = rng.randrange(s_lo, s_hi + 1)
        inst = cg(pr, a, b, m, n, s)
        grid += 1
        if inst.lhs != inst.rhs:
            _fail(failures, inst.params, inst.lhs, inst.rhs)
    return grid, failures, False


def _cor312_grid_count(p):
    pairs = sum(1 for m in range(1, p) for n in range(1, p) if m + n >= p - 1)
    js = sum(
        m + n - (p - 1) + 1 for m in range(1, p) for n in range(1, p) if m + n >= p - 1
    )
    return js + pairs * (p - 1) * (p - 2)


def _run_cor3_12(pr, budget, seed, mode):
    """Both parts of the s = 0 corollary, including the m = n = p-1 corner
    that the stricter general hypothesis excludes."""
    p = pr.p
    failures = []
    grid = 0
    if _cor312_grid_count(p) > budget:
        return _run_cor3_12_sampled(pr, budget, seed)
    # part 1: (-1)^j C(m,M-j) C(n,j) == C(m,M) C(M,j)
    for m in range(1, p):
        rm = pr.binom_row(m)
        for n in range(1, p):
            M = m + n - (p - 1)
            if M < 0:
                continue
            rn = pr.binom_row(n)
            rM = pr.binom_row(M)
            cmM = rm[M] if M <= m else 0
            for j in range(M + 1):
                lhs = rm[M - j] * rn[j] % p if M - j <= m and j <= n else 0
                if j % 2 == 1:
                    lhs = -lhs % p
                rhs = cmM * rM[j] % p
                grid += 1
                if lhs != rhs:
                    _fail(failures, {"part": 1, "m": m, "n": n, "j": j}, rhs, lhs)
    # part 2: sum_j C(m,M-j) C(n,j) a^(M-j) b^j == (a-b)^M C(m,p-n-1)
    for m in range(1, p):
        for n in range(1, p):
            M = m + n - (p - 1)
            if M < 0:
                continue
            cm = binom(pr, m, p - n - 1)
            lo = M - m if M - m > 0 else 0
            hi = n if n < M else M
            i0 = m - M + lo
            i1 = m - M + hi + 1
            empty = hi < lo
            for a in range(1, p):
                wa_slice = pr.weighted_row(m, a)[1][i0:i1]
                for b in range(1, p):
                    if b == a:
                        continue
                    if empty:
                        lhs = 0
                    else:
                        lhs = sum(map(mul, wa_slice, pr.weighted_row(n, b)[0][lo : hi + 1])) % p
                    rhs = pow_nonzero(pr, a - b, M) * cm % p
                    grid += 1
                    if lhs != rhs:
                        _fail(failures, {"part": 2, "a": a, "b": b, "m": m, "n": n}, rhs, lhs)
    return grid, failures, True


def _run_cor3_12_sampled(pr, budget, seed):
    p = pr.p
    failures = []
    grid = 0
    rng = random.Random(seed)
    while grid < budget:
        m, n = rng.randrange(1, p), rng.randrange(1, p)
        M = m + n - (p - 1)
        if M < 0:
            continue
        if rng.randrange(8) == 0:  # part 1 is the small slice of the grid
            j = rng.randrange(M + 1)
            lhs = binom(pr, m, M - j) * binom(pr, n, j) % p
            if j % 2 == 1:
                lhs = -lhs % p
            rhs = binom(pr, m, M) * binom(pr, M, j) % p
            grid += 1
            if lhs != rhs:
                _fail(failures, {"part": 1, "m": m, "n": n, "j": j}, rhs, lhs)
            continue
        a, b = _sample_distinct(rng, p, 2)
        wa_rev = pr.weighted_row(m, a)[1]
        wb = pr.weighted_row(n, b)[0]
        lo = M - m if M - m > 0 else 0
        hi = n if n < M else M
        lhs = (
            sum(map(mul, wa_rev[m - M + lo : m - M + hi + 1], wb[lo : hi + 1])) % p
            if hi >= lo
            else 0
        )
        rhs = pow_nonzero(pr, a - b, M) * binom(pr, m, p - n - 1) % p
        grid += 1
        if lhs != rhs:
            _fail(failures, {"part": 2, "a": a, "b": b, "m": m, "n": n}, rhs, lhs)
    return grid, failures, False


def _run_vandermonde(pr, budget, seed, mode):
    p = pr.p
    failures = []
    grid = 0
    for m in range(p):
        for n in range(p - m):
            for M in range(m + n + 1):
                inst = ident.vandermonde(pr, m, n, M)
                grid += 1
                if not inst.holds:
                    _fail(failures, inst.params, inst.lhs, inst.rhs)
    return grid, failures, True


def _run_quickcase(pr, budget, seed, mode):
    """quick_case never disagrees with brute force when it answers."""
    p = pr.p
    failures = []
    grid = 0
    rng = random.Random(seed)
    specs = []
    # products hitting every constant row: totals p-2, p-1, p, and all p-1
    for arity in (2, 3):
        for _ in range(min(budget // 8, 200)):
            offs = rng.sample(range(p), arity)
            for total in (p - 2, p - 1, p):
                exps = _random_composition(rng, total, arity, p - 1)
                if exps:
                    specs.append(tuple(zip(offs, exps)))
            specs.append(tuple((o, p - 1) for o in offs))
    # ratio shapes from the triple corollaries
    for _ in range(min(budget // 8, 200)):
        a, b, c = rng.sample(range(p), 3)
        m, n = rng.randrange(1, p - 1), rng.randrange(1, p - 1)
        s = rng.randrange(1, p - 1)
        specs.append(((a, m), (b, n), (c, -s)))
        specs.append(((a, m), (b, -n), (c, -s)))
        specs.append(((a, -m), (b, -n), (c, -s)))
        if m != n:
            specs.append(((a, min(m, n)), (b, -max(m, n))))
    for terms in specs:
        spec = SumSpec(pr, tuple(terms), auto_exclusions(pr, terms))
        got = cf.quick_case(spec)
        if got is None:
            continue
        expected = brute_sum(spec)
        grid += 1
        if expected != got:
            _fail(failures, {"terms": [list(t) for t in terms]}, expected, got)
    return grid, failures, False


def _random_composition(rng, total, arity, cap):
    for _ in range(50):
        cuts = [rng.randrange(1, cap + 1) for _ in range(arity - 1)]
        last = total - sum(cuts)
        if 1 <= last <= cap:
            return cuts + [last]
    return None


def _run_tablecorr(pr, budget, seed, mode):
    """Sum-table row s equals the sum of coeff-table rows i(p-1)-s, i >= 1.

    Only i = 1, 2 contribute except at the m = n = p-1, s = p-1 corner,
    where row 3(p-1)-s = m+n joins in.
    """
    p = pr.p
    failures = []
    grid = 0
    count = (p - 1) ** 2 * (p - 1)
    if count <= budget:
        pairs = [(m, n) for m in range(1, p) for n in range(1, p)]
        exhaustive = True
    else:
        rng = random.Random(seed)
        wanted = max(1, budget // (p - 1))
        pairs = [
            (rng.randrange(1, p), rng.randrange(1, p)) for _ in range(wanted)
        ]
        exhaustive = False
    for m, n in pairs:
        coeffs = symbolic_coeff_table(pr, m, n)
        sums = symbolic_sum_table(pr, m, n)
        for s in range(1, p):
            want = None
            i = 1
            while i * (p - 1) - s <= m + n:
                j = i * (p - 1) - s
                want = coeffs[j] if want is None else bipoly_add(want, coeffs[j])
                i += 1
            got = sums[s - 1]
            ok = (want is None and got.is_zero()) or (
                want is not None and want.coeffs == got.coeffs
            )
            grid += 1
            if not ok:
                _fail(failures, {"m": m, "n": n, "s": s}, 0, 1)
    return grid, failures, exhaustive


def _run_figures(pr, budget, seed, mode):
    """The five residue-matrix observations, for every offset a."""
    p = pr.p
    failures = []
    grid = 0
    for a in range(1, p):
        mat = residue_matrix(pr, a).entries
        checks = []
        corners = {(0, 0), (0, p - 1), (p - 1, 0), (p - 1, p - 1)}
        checks.append(("corners", all(mat[i][j] == p - 2 for i, j in corners)))
        checks.append(("row_wrap", mat[0] == mat[p - 1]))
        checks.append(
            ("col_wrap", all(mat[i][0] == mat[i][p - 1] for i in range(p)))
        )
        checks.append(
            ("row0_reversed_is_col0", all(mat[0][p - 1 - m] == mat[m][0] for m in range(p)))
        )
        checks.append(
            ("col0_powers", all(mat[m][0] == (-pow(a, m, p)) % p for m in range(1, p - 1)))
        )
        checks.append(
            (
                "modified_pascal",
                all(
                    (mat[i][j - 1] + mat[i + 1][j]) % p == a * mat[i][j] % p
                    for i in range(p - 1)
                    for j in range(1, p)
                ),
            )
        )
        for name, ok in checks:
            grid += 1
            if not ok:
                _fail(failures, {"a": a, "check": name}, 1, 0)
    return grid, failures, True


@dataclass(frozen=True)
class Theorem:
    id: str
    description: str
    strategies: tuple[str, str]
    run: object  # callable(pr, budget, seed, mode) -> (grid, failures, exhaustive)


REGISTRY: dict[str, Theorem] = {
    t.id: t
    for t in [
        Theorem("thm1.1", "power sums of residues: 0 or -1", ("brute", "closed"), _run_thm1_1),
        Theorem("thm1.2", "harmonic sums mod p and p^2", ("brute-p2", "constant"), _run_thm1_2),
        Theorem("thm1.3", "reciprocal power sums mod p^2 / p", ("brute-p2", "constant"), _run_thm1_3),
        Theorem("thm2.1", "single-offset ratio sums", ("brute", "closed"), _run_thm2_1),
        Theorem("thm2.3", "two-offset ratio sums", ("brute", "closed"), _run_thm2_3),
        Theorem("rem2.5", "equal-offset ratio sums", ("brute", "closed"), _run_rem2_5),
        Theorem("thm2.6", "product with k-power", ("brute", "closed"), _run_thm2_6),
        Theorem("thm2.8", "product of two shifted powers", ("brute", "closed"), _run_thm2_8),
        Theorem("thm3.1", "triple product, banded binomial sums", ("brute", "closed"), _run_thm3_1),
        Theorem("thm3.4", "triple product, linear k factor", ("brute", "closed"), _run_thm3_4),
        Theorem("thm3.5", "triple product, quadratic k factor", ("brute", "closed"), _run_thm3_5),
        Theorem("thm3.6", "triple product, general k power", ("brute", "closed"), _run_thm3_6),
        Theorem("thm4.1", "n-term multi-index closed form", ("brute", "multi-index"), _run_thm4_1),
        Theorem("thm4.4", "n-term coefficient extraction", ("brute", "coeff"), _run_thm4_4),
        Theorem("thm4.5", "n-term elementary symmetric form", ("brute", "esp"), _run_thm4_5),
        Theorem("eq2", "binomial cancellation identity", ("lhs", "rhs"), _run_eq2),
        Theorem("eq3", "binomial semi-symmetry congruences", ("lhs", "rhs"), _run_eq3),
        Theorem("cor2.7", "binomial transpose congruence", ("lhs", "rhs"), _run_cor2_7),
        Theorem("thm3.11", "general coefficient congruence", ("lhs", "rhs"), _run_thm3_11),
        Theorem("thm3.13", "general weighted-sum congruence", ("lhs", "rhs"), _run_thm3_13),
        Theorem("cor3.12", "s = 0 corollary, both parts", ("lhs", "rhs"), _run_cor3_12),
        Theorem("vandermonde", "Vandermonde convolution", ("lhs", "rhs"), _run_vandermonde),
        Theorem("quickcase", "corollary constant shortcuts", ("brute", "quick"), _run_quickcase),
        Theorem("tablecorr", "sum-table vs coeff-table rows", ("sum-table", "coeff-rows"), _run_tablecorr),
        Theorem("figures", "residue-matrix observations", ("matrix", "observations"), _run_figures),
    ]
}

IDENTITY_SUITE = (
    "eq2",
    "eq3",
    "cor2.7",
    "thm3.11",
    "thm3.13",
    "cor3.12",
    "vandermonde",
)


def resolve_theorems(ids) -> list[str]:
    if isinstance(ids, str):
        ids = [ids]
    out: list[str] = []
    for raw in ids:
        name = raw.strip()
        if name == "all":
            out.extend(REGISTRY)
        elif name in REGISTRY:
            out.append(name)
        else:
            raise UnknownTheoremError(
                f"unknown theorem id {name!r}; known: {', '.join(REGISTRY)} or 'all'"
            )
    seen = set()
    ordered = []
    for name in out:
        if name not in seen:
            seen.add(name)
            ordered.append(name)
    return ordered


def thread_count() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def run_one(theorem_id: str, p: int | Prime, budget: int = 10_000, seed: int = 0,
            mode: str = "p2") -> VerificationReport:
    pr = p if isinstance(p, Prime) else make_prime(p)
    thm = REGISTRY.get(theorem_id)
    if thm is None:
        raise UnknownTheoremError(f"unknown theorem id {theorem_id!r}")
    start = time.perf_counter()
    grid, failures, exhaustive = thm.run(pr, budget, seed, mode)
    elapsed = time.perf_counter() - start
    return VerificationReport(
        theorem=theorem_id,
        prime=pr.p,
        grid=grid,
        failures=failures,
        elapsed=elapsed,
        strategies=thm.strategies,
        exhaustive=exhaustive,
        seed=None if exhaustive else seed,
    )


def run_verification(theorem_ids, primes, budget: int = 10_000, seed: int = 0,
                     mode: str = "p2") -> list[VerificationReport]:
    """Run every (theorem, prime) pair; reports sorted by theorem then prime.

    Work is sharded across a thread pool capped by WOLSTENHOLME_THREADS; the
    merge order is deterministic regardless of scheduling.
    """
    names = resolve_theorems(theorem_ids)
    tasks = [(name, p) for name in names for p in primes]
    workers = thread_count()
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda t: run_one(t[0], t[1], budget, seed, mode), tasks))
    else:
        reports = [run_one(name, p, budget, seed, mode) for name, p in tasks]
    reports.sort(key=lambda r: (r.theorem, r.prime))
    return reports
