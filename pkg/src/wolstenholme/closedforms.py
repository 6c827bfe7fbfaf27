"""Closed-form evaluators for pair and triple power-term sums.

Each function is total over its hypothesis domain, dispatches its special
cases ahead of the general expression, and returns a canonical residue in
[0, p).  Signed constants like -2 therefore come back as p-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import mul

from .errors import (
    ConversionInvalidError,
    EqualOffsetsError,
    HypothesisViolationError,
    OffsetZeroError,
)
from .modarith import Prime, binom, fermat_reduce, pow_nonzero
from .oracle import SumSpec, auto_exclusions


def power_sum(pr: Prime, n: int) -> int:
    """Sum of k^n over k = 1..p-1: 0 unless (p-1) | n, in which case -1."""
    if n < 0:
        raise HypothesisViolationError("power_sum requires n >= 0")
    return pr.p - 1 if n % (pr.p - 1) == 0 else 0


def _check_range(name: str, value: int, lo: int, hi: int) -> None:
    if not lo <= value <= hi:
        raise HypothesisViolationError(f"{name} = {value} outside [{lo}, {hi}]")


def ratio_single(pr: Prime, a: int, m: int, n: int) -> int:
    """Sum over k in {1,...,p-1}, k != a, of k^m / (a-k)^n."""
    p = pr.p
    a %= p
    if a == 0:
        raise OffsetZeroError("ratio_single requires a nonzero offset a")
    _check_range("m", m, 0, p - 1)
    _check_range("n", n, 0, p - 1)
    if m == 0 and 1 <= n <= p - 2:
        return -pow(a, p - 1 - n, p) % p
    if n == p - 1 and 1 <= m <= p - 2:
        return -pow(a, m, p) % p
    if m in (0, p - 1) and n in (0, p - 1):
        return p - 2
    val = pow_nonzero(pr, a, m - n) * binom(pr, m, n) % p
    return val if n % 2 == 1 else -val % p


def ratio_pair(pr: Prime, a: int, b: int, m: int, n: int) -> int:
    """Sum over k not congruent to -a, -b of (a+k)^m / (b+k)^n."""
    p = pr.p
    a %= p
    b %= p
    if a == b:
        raise EqualOffsetsError("a = b: use ratio_equal_offsets")
    _check_range("m", m, 0, p - 1)
    _check_range("n", n, 0, p - 1)
    d = (a - b) % p
    if m == 0 and 1 <= n <= p - 2:
        val = pow(d, p - 1 - n, p)
        return val if n % 2 == 1 else -val % p
    if n == p - 1 and 1 <= m <= p - 2:
        return -pow(d, m, p) % p
    if m in (0, p - 1) and n in (0, p - 1):
        return p - 2
    return -(pow_nonzero(pr, d, m - n) * binom(pr, m, n)) % p


def ratio_equal_offsets(pr: Prime, a: int, m: int, n: int) -> int:
    """Sum over k != -a of (a+k)^m / (a+k)^n, i.e. the equal-offset ratio."""
    p = pr.p
    _check_range("m", m, 1, p - 1)
    _check_range("n", n, 1, p - 1)
    if m > n:
        return power_sum(pr, m - n)
    if m < n:
        return power_sum(pr, p - 1 + m - n)
    return p - 1


def product_pair_k(pr: Prime, a: int, m: int, n: int) -> int:
    """Sum over all k of (a+k)^m * k^n."""
    p = pr.p
    a %= p
    _check_range("a", a, 1, p - 1)
    _check_range("m", m, 1, p - 1)
    _check_range("n", n, 1, p - 1)
    if m == n == p - 1:
        return p - 2
    c = binom(pr, m, p - 1 - n)
    if c == 0:
        return 0
    # c != 0 forces p-1-n <= m, so the exponent below is >= 0
    return -(pow(a, m + n - (p - 1), p) * c) % p


def product_pair(pr: Prime, a: int, b: int, m: int, n: int) -> int:
    """Sum over all k of (a+k)^m * (b+k)^n, offsets distinct and nonzero."""
    p = pr.p
    a %= p
    b %= p
    if a == b:
        raise EqualOffsetsError("product_pair requires a != b")
    if a == 0 or b == 0:
        raise HypothesisViolationError(
            "offset 0 is the k-term form: use product_pair_k instead"
        )
    _check_range("m", m, 1, p - 1)
    _check_range("n", n, 1, p - 1)
    if m == n == p - 1:
        return p - 2
    c = binom(pr, m, p - 1 - n)
    if c == 0:
        return 0
    return -(pow((a - b) % p, fermat_reduce(pr, m + n), p) * c) % p


@dataclass(frozen=True)
class TripleParams:
    """Parameters (a+k)^m (b+k)^n (c+k)^s with the derived band indices.

    M and R are recomputed properties so they can never go stale.
    """

    pr: Prime
    a: int
    b: int
    c: int
    m: int
    n: int
    s: int

    def __post_init__(self):
        p = self.pr.p
        for name in ("m", "n", "s"):
            _check_range(name, getattr(self, name), 1, p - 1)
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not 0 <= v < p:
                raise HypothesisViolationError(f"{name} = {v} outside [0, {p})")

    @property
    def M(self) -> int:
        return self.m + self.n + self.s - (self.pr.p - 1)

    @property
    def R(self) -> int:
        return self.m + self.n + self.s - 2 * (self.pr.p - 1)


def _conv(pr: Prime, a: int, b: int, m: int, n: int, t: int) -> int:
    """Sum over j of C(m, t-j) C(n, j) a^(t-j) b^j, zero-binomial convention."""
    if t < 0:
        return 0
    lo = t - m
    if lo < 0:
        lo = 0
    hi = n if n < t else t
    if hi < lo:
        return 0
    wa_rev = pr.weighted_row(m, a)[1]
    wb = pr.weighted_row(n, b)[0]
    # wa_rev[m - t + j] == C(m, t-j) a^(t-j)
    return sum(map(mul, wa_rev[m - t + lo : m - t + hi + 1], wb[lo : hi + 1])) % pr.p


def triple_binomial(tp: TripleParams) -> int:
    """Sum over all k of (a+k)^m (b+k)^n k^s via the banded binomial sums."""
    pr = tp.pr
    p = pr.p
    if tp.c != 0:
        raise HypothesisViolationError("triple_binomial requires c = 0 (the k-term form)")
    if tp.a == tp.b:
        raise HypothesisViolationError("triple_binomial requires a != b")
    if tp.a == 0 or tp.b == 0:
        raise HypothesisViolationError("triple_binomial requires a, b >= 1")
    total = tp.m + tp.n + tp.s
    if total < p - 1:
        return 0
    if total < 2 * (p - 1):
        return -_conv(pr, tp.a, tp.b, tp.m, tp.n, tp.M) % p
    if total < 3 * (p - 1):
        i2 = _conv(pr, tp.a, tp.b, tp.m, tp.n, tp.M)
        i3 = _conv(pr, tp.a, tp.b, tp.m, tp.n, tp.R)
        return -(i2 + i3) % p
    return p - 3  # m = n = s = p-1


def _triple_check(pr: Prime, a: int, b: int, *exps: int) -> tuple[int, int]:
    p = pr.p
    a %= p
    b %= p
    if a == b:
        raise EqualOffsetsError("offsets must differ")
    _check_range("a", a, 1, p - 1)
    _check_range("b", b, 1, p - 1)
    for name, e in zip("mns", exps):
        _check_range(name, e, 1, p - 1)
    return a, b


def triple_s1(pr: Prime, a: int, b: int, m: int, n: int) -> int:
    """Sum over all k of (a+k)^m (b+k)^n k."""
    p = pr.p
    a, b = _triple_check(pr, a, b, m, n)
    d = (a - b) % p
    if m == n == p - 1:
        return (a + b) % p
    if m == p - 1 and n == p - 2:
        return (-2 - b * pow(d, p - 2, p)) % p
    if m == p - 2 and n == p - 1:
        return (-2 + a * pow(d, p - 2, p)) % p
    t1 = pow(d, fermat_reduce(pr, m + n + 1), p) * binom(pr, m, p - n - 2)
    t2 = b * pow(d, fermat_reduce(pr, m + n), p) % p * binom(pr, m, p - n - 1)
    return (-t1 + t2) % p


def triple_s2(pr: Prime, a: int, b: int, m: int, n: int) -> int:
    """Sum over all k of (a+k)^m (b+k)^n k^2.

    The general three-term expression below is provably wrong at exactly
    (m, n) = (p-3, p-1) and (p-1, p-3): the reduction it comes from needs
    an exponent n+1 <= p-1.  Those two cells get the direct reduction to a
    complete pair sum minus the single dropped term instead; brute-force
    equivalence over full grids pins this down.
    """
    p = pr.p
    a, b = _triple_check(pr, a, b, m, n)
    d = (a - b) % p
    if m == n == p - 1:
        return -(a * a + b * b) % p
    if m == p - 1 and n == p - 2:
        return (2 * b + a * a * pow(d, p - 2, p)) % p
    if m == p - 2 and n == p - 1:
        return (2 * a - b * b * pow(d, p - 2, p)) % p
    if m == n == p - 2:
        return (-1 + 2 * a * b * pow(d, p - 3, p)) % p
    if n == p - 1 and m == p - 3:
        # (a+k)^(p-3) k^2 summed over k != -b, i.e. all k minus the k = -b term
        return (product_pair_k(pr, a, m, 2) - b * b % p * pow(d, m, p)) % p
    if m == p - 1 and n == p - 3:
        return (product_pair_k(pr, b, n, 2) - a * a % p * pow((b - a) % p, n, p)) % p
    t1 = pow(d, fermat_reduce(pr, m + n + 2), p) * binom(pr, m, p - n - 3)
    t2 = 2 * b * pow(d, fermat_reduce(pr, m + n + 1), p) % p * binom(pr, m, p - n - 2)
    t3 = b * b % p * pow(d, fermat_reduce(pr, m + n), p) % p * binom(pr, m, p - n - 1)
    return (-t1 + t2 - t3) % p


def triple_general(pr: Prime, a: int, b: int, m: int, n: int, s: int) -> int:
    """Sum over all k of (a+k)^m (b+k)^n k^s, general exponents."""
    p = pr.p
    a %= p
    b %= p
    if a == b or a == 0 or b == 0:
        raise HypothesisViolationError("triple_general requires distinct nonzero a, b")
    for name, e in (("m", m), ("n", n), ("s", s)):
        _check_range(name, e, 1, p - 1)
    if m == n == s == p - 1:
        return p - 3
    if m == p - 1:
        t = binom(pr, n, p - 1 - s)
        first = pow(b, n + s - (p - 1), p) * t % p if t else 0
        second = pow((b - a) % p, n, p) * pow((-a) % p, s, p) % p
        return (-first - second) % p
    M = m + n + s - (p - 1)
    R = M - (p - 1)
    return -(_conv(pr, a, b, m, n, R) + _conv(pr, a, b, m, n, M)) % p


def quick_case(spec: SumSpec) -> int | None:
    """Constant shortcut when the spec matches a known corollary shape.

    Never wrong, possibly absent: returns None unless the spec is a pure
    product or pure ratio with denominator-derived exclusions whose exponents
    land in a constant case.
    """
    pr = spec.pr
    p = pr.p
    if spec.exclusions != auto_exclusions(pr, spec.terms):
        return None
    offsets = [off for off, _ in spec.terms]
    if len(set(offsets)) != len(offsets):
        return None
    exps = [e for _, e in spec.terms]
    if any(e == 0 or abs(e) > p - 1 for e in exps):
        return None
    nneg = sum(1 for e in exps if e < 0)
    if nneg == 0:
        total = sum(exps)
        if total < p - 1:
            return 0
        if total == p - 1:
            return p - 1
        if total == p:
            return -sum(e * off for off, e in spec.terms) % p
        if all(e == p - 1 for e in exps):
            return -len(exps) % p
        return None
    if len(spec.terms) == 2 and nneg == 1:
        # ratio of two shifted powers with a smaller numerator exponent
        (m,) = [e for e in exps if e > 0]
        (nn,) = [-e for e in exps if e < 0]
        if m < nn and 1 <= m <= p - 2 and 1 <= nn <= p - 2:
            return 0
        return None
    if len(spec.terms) == 3:
        pos = [e for e in exps if e > 0]
        neg = [-e for e in exps if e < 0]
        if nneg == 1:
            (s,) = neg
            if sum(pos) < s != p - 1:
                return 0
        elif nneg == 2:
            (m,) = pos
            if p - 1 < sum(neg) - m and all(e != p - 1 for e in neg):
                return 0
        else:
            if 2 * (p - 1) < sum(neg) and all(e != p - 1 for e in neg):
                return 0
    return None


def normalize_spec(spec: SumSpec) -> SumSpec:
    """Rewrite to an equivalent all-positive-exponent spec, last offset at 0.

    Each (c+k)^(-n) becomes (c+k)^(p-1-n) and its k = -c exclusion is dropped
    (the rewritten factor vanishes there, so the dropped term contributes 0).
    A denominator exponent of p-1 would rewrite to exponent 0 and contribute
    1 instead, so that case is rejected.  Finally every offset is shifted by
    the last term's offset, which shifts surviving exclusions the other way.
    Preserves brute_sum exactly.
    """
    pr = spec.pr
    p = pr.p
    if not spec.terms:
        return spec
    excl = set(spec.exclusions)
    terms: list[tuple[int, int]] = []
    for off, exp in spec.terms:
        if exp < 0:
            n = -exp
            if n == p - 1:
                raise ConversionInvalidError(
                    f"denominator exponent {n} = p-1 cannot be rewritten"
                )
            excl.discard((-off) % p)
            terms.append((off, p - 1 - n))
        else:
            terms.append((off, exp))
    shift = terms[-1][0]
    new_terms = tuple(((off - shift) % p, exp) for off, exp in terms)
    new_excl = frozenset((k + shift) % p for k in excl)
    return SumSpec(pr, new_terms, new_excl)
