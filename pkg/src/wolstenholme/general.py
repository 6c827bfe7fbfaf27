"""n-term sums: multi-index closed form, coefficient extraction, and the
elementary-symmetric-polynomial route through Newton's identities.

All three evaluators agree with each other and with the brute-force oracle;
they differ in how they reach the answer, which is the point: each one
cross-checks the others.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DuplicateOffsetsError,
    HypothesisViolationError,
    IndexNotInvertibleError,
    ZeroPivotError,
)
from .modarith import Prime, binom, mod_inverse
from .polyring import build_product, coeff


@dataclass(frozen=True)
class GeneralSumParams:
    """Offsets a_1..a_n (pairwise distinct) and exponents m_1..m_n in [1, p-1].

    Derived data: shifted offsets b_i = a_i - a_n, the level indices
    M_i = sum(m) - i(p-1), and t = the largest i >= 0 with M_i >= 0.
    """

    pr: Prime
    offsets: tuple[int, ...]
    exps: tuple[int, ...]

    def __post_init__(self):
        p = self.pr.p
        if len(self.offsets) != len(self.exps) or not self.offsets:
            raise HypothesisViolationError("offsets and exps must be nonempty, equal length")
        for a in self.offsets:
            if not 0 <= a < p:
                raise HypothesisViolationError(f"offset {a} outside [0, {p})")
        if len(set(self.offsets)) != len(self.offsets):
            raise DuplicateOffsetsError(f"offsets {self.offsets} are not pairwise distinct")
        for m in self.exps:
            if not 1 <= m <= p - 1:
                raise HypothesisViolationError(f"exponent {m} outside [1, p-1]")

    @property
    def n(self) -> int:
        return len(self.offsets)

    @property
    def total(self) -> int:
        return sum(self.exps)

    @property
    def shifted(self) -> tuple[int, ...]:
        """b_i = a_i - a_n mod p for i < n; all nonzero since offsets differ."""
        p = self.pr.p
        last = self.offsets[-1]
        return tuple((a - last) % p for a in self.offsets[:-1])

    def level(self, i: int) -> int:
        """M_i = m_1 + ... + m_n - i(p-1)."""
        return self.total - i * (self.pr.p - 1)

    @property
    def t(self) -> int:
        """Largest i with M_i >= 0; equals floor(total / (p-1))."""
        return self.total // (self.pr.p - 1)


def bounded_composition_sum(pr: Prime, exps, bases, target: int) -> int:
    """Sum over compositions (j_1..j_r) of target with 0 <= j_i <= exps[i] of
    the products C(m_1,j_1)...C(m_r,j_r) b_1^j_1 ... b_r^j_r, mod p.

    Depth-first with pruning by the remaining capacity of the suffix.  With
    every base equal to 1 this collapses to C(sum(exps), target) by the
    Vandermonde identity, which the tests exercise.
    """
    if target < 0:
        return 0
    weights = [pr.weighted_row(m, b)[0] for m, b in zip(exps, bases)]
    if not weights:
        return 1 if target == 0 else 0
    suffix_cap = [0] * (len(weights) + 1)
    for i in range(len(weights) - 1, -1, -1):
        suffix_cap[i] = suffix_cap[i + 1] + exps[i]
    p = pr.p
    total = 0

    def walk(idx: int, remaining: int, acc: int) -> None:
        nonlocal total
        if idx == len(weights) - 1:
            if remaining <= exps[idx]:
                total += acc * weights[idx][remaining]
            return
        lo = remaining - suffix_cap[idx + 1]
        if lo < 0:
            lo = 0
        hi = min(exps[idx], remaining)
        w = weights[idx]
        for j in range(lo, hi + 1):
            walk(idx + 1, remaining - j, acc * w[j] % p)

    walk(0, target, 1)
    return total % p


def multi_index_J(gp: GeneralSumParams) -> int:
    """Sum over all k of (a_1+k)^m_1 ... (a_n+k)^m_n via bounded compositions."""
    pr = gp.pr
    p = pr.p
    if gp.total < p - 1:
        return 0
    if all(m == p - 1 for m in gp.exps):
        return -gp.n % p
    bases = gp.shifted
    exps = gp.exps[:-1]
    acc = 0
    for i in range(1, gp.t + 1):
        acc += bounded_composition_sum(pr, exps, bases, gp.level(i))
    return -acc % p


def coeff_extraction_sum(gp: GeneralSumParams) -> int:
    """Same sum via coefficients of the shifted product polynomial.

    Evaluates -sum over i >= 1 of [x^(i(p-1) - m_n)] of the product of
    (b_i + x)^m_i; only i with that index <= deg contribute.
    """
    pr = gp.pr
    p = pr.p
    f = build_product(pr, gp.shifted, gp.exps[:-1])
    cap = sum(gp.exps[:-1])
    m_last = gp.exps[-1]
    acc = 0
    i = 1
    while i * (p - 1) - m_last <= cap:
        acc += coeff(f, i * (p - 1) - m_last)
        i += 1
    return -acc % p


def root_power_sum(gp: GeneralSumParams, r: int) -> int:
    """r-th power sum of the roots of the shifted product polynomial.

    The roots are -b_i with multiplicity m_i, so
    p_r = (-1)^r (m_1 b_1^r + ... + m_{n-1} b_{n-1}^r).
    """
    if r < 1:
        raise HypothesisViolationError("root_power_sum requires r >= 1")
    p = gp.pr.p
    acc = sum(m * pow(b, r, p) for m, b in zip(gp.exps[:-1], gp.shifted)) % p
    return acc if r % 2 == 0 else -acc % p


@dataclass(frozen=True)
class ESPVector:
    """Elementary symmetric polynomial values e_0..e_r of the root multiset."""

    pr: Prime
    values: tuple[int, ...]

    def __getitem__(self, r: int) -> int:
        return self.values[r]

    def __len__(self) -> int:
        return len(self.values)


def newton_esp(gp: GeneralSumParams, r_max: int) -> ESPVector:
    """e_0..e_r_max via Newton's identities; valid only for r_max < p.

    The recursion divides by r mod p, so indices at or above p would divide
    by zero; those e-values must come from polynomial coefficients instead.
    """
    pr = gp.pr
    p = pr.p
    if r_max >= p:
        raise IndexNotInvertibleError(f"r_max = {r_max} >= p = {p}: index not invertible")
    psums = [0] + [root_power_sum(gp, i) for i in range(1, r_max + 1)]
    es = [1]
    for r in range(1, r_max + 1):
        acc = 0
        sign = 1
        for i in range(1, r + 1):
            acc += sign * es[r - i] * psums[i]
            sign = -sign
        es.append(acc * mod_inverse(r, p) % p)
    return ESPVector(pr, tuple(es))


def esp_sum(gp: GeneralSumParams) -> int:
    """Same sum once more, as -sum over i of (-1)^(M_i) e_(M_i).

    e-values come from Newton's identities when every needed index stays
    below p, and from polynomial coefficients otherwise (M_1 can reach
    (n-1)(p-1) >= p for n >= 3, where Newton's recursion breaks down).
    """
    pr = gp.pr
    p = pr.p
    levels = [gp.level(i) for i in range(1, gp.t + 1)]
    if not levels:
        return 0
    cap = sum(gp.exps[:-1])  # levels never exceed this: M_1 = cap + m_n - (p-1)
    m1 = levels[0]
    if m1 < p:
        es = newton_esp(gp, m1)
        evals = {r: es[r] for r in levels}
    else:
        f = build_product(pr, gp.shifted, gp.exps[:-1])
        evals = {}
        for r in levels:
            c = coeff(f, cap - r)
            evals[r] = c if r % 2 == 0 else -c % p
    acc = sum(evals[r] if r % 2 == 0 else -evals[r] for r in levels)
    return -acc % p


def scaling_reduce(gp: GeneralSumParams) -> tuple[int, GeneralSumParams]:
    """Rescale a k-term sum so the last-but-one offset becomes 1.

    Requires the k-term form (last offset 0).  Returns (scale, reduced) with
    the original sum congruent to scale * sum(reduced); the scale is
    b_(n-1)^(M_1) with the exponent reduced mod p-1.
    """
    pr = gp.pr
    p = pr.p
    if gp.offsets[-1] != 0:
        raise HypothesisViolationError("scaling_reduce requires the last offset to be 0")
    if gp.n < 2:
        raise HypothesisViolationError("scaling_reduce needs at least two terms")
    pivot = gp.offsets[-2]
    if pivot == 0:
        raise ZeroPivotError("pivot offset b_(n-1) must be nonzero")
    inv = mod_inverse(pivot, p)
    new_offsets = tuple(b * inv % p for b in gp.offsets[:-2]) + (1, 0)
    scale = pow(pivot, gp.level(1) % (p - 1), p)
    return scale, GeneralSumParams(pr, new_offsets, gp.exps)


def vandermonde_collapse(pr: Prime, exps, target: int) -> int:
    """C(sum(exps), target) mod p: what bounded_composition_sum gives when
    every base is 1 (requires sum(exps) < p so the top stays in range)."""
    return binom(pr, sum(exps), target)
