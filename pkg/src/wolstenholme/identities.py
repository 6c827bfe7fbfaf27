"""Binomial-coefficient congruence identities, both sides computed separately.

Each operation evaluates its left and right side independently (no shared
subexpressions) and returns an IdentityInstance exposing both, so a test can
assert equality rather than trust either side.  These run inside exhaustive
grids over every prime up to 31 on a single core, so the instances are slim
(__slots__, params materialized on demand) and the inner sums go through
slices of cached weighted rows and sum(map(mul, ...)).
"""

from __future__ import annotations

from operator import mul

from .errors import (
    EqualOffsetsError,
    HypothesisViolationError,
    RangeViolationError,
)
from .modarith import Prime, binom


class IdentityInstance:
    """One checked instance: parameters, both sides, and whether they match."""

    __slots__ = ("pr", "_names", "_values", "lhs", "rhs")

    def __init__(self, pr: Prime, names: tuple, values: tuple, lhs: int, rhs: int):
        self.pr = pr
        self._names = names
        self._values = values
        self.lhs = lhs
        self.rhs = rhs

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def params(self) -> dict[str, int]:
        return dict(zip(self._names, self._values))

    def __repr__(self) -> str:
        return f"IdentityInstance({self.params}, lhs={self.lhs}, rhs={self.rhs})"


_NKS = ("n", "k", "s")
_KS = ("k", "s")
_MN = ("m", "n")
_CONG = ("m", "n", "s", "j", "M")
_COMP = ("a", "b", "m", "n", "s", "M")
_VAND = ("m", "n", "M")


def cancellation(pr: Prime, n: int, k: int, s: int) -> IdentityInstance:
    """C(n,k) C(k,s) = C(n,s) C(n-s,k-s), an exact integer identity."""
    if not 0 <= s <= k <= n < pr.p:
        raise RangeViolationError(f"need 0 <= s <= k <= n < p, got {(n, k, s)}")
    p = pr.p
    lhs = binom(pr, n, k) * binom(pr, k, s) % p
    rhs = binom(pr, n, s) * binom(pr, n - s, k - s) % p
    return IdentityInstance(pr, _NKS, (n, k, s), lhs, rhs)


def semi_symmetry(pr: Prime, k: int, s: int) -> tuple[IdentityInstance, IdentityInstance]:
    """C(k,s) against (-1)^(k+s) C(p-1-s,k-s) and (-1)^s C(p-1-k+s,s)."""
    if not 0 <= s <= k < pr.p:
        raise RangeViolationError(f"need 0 <= s <= k < p, got {(k, s)}")
    p = pr.p
    lhs = binom(pr, k, s)
    r1 = binom(pr, p - 1 - s, k - s)
    if (k + s) % 2 == 1:
        r1 = -r1 % p
    r2 = binom(pr, p - 1 - k + s, s)
    if s % 2 == 1:
        r2 = -r2 % p
    return (
        IdentityInstance(pr, _KS, (k, s), lhs, r1),
        IdentityInstance(pr, _KS, (k, s), lhs, r2),
    )


def transpose_binomial(pr: Prime, m: int, n: int) -> IdentityInstance:
    """C(m, p-1-n) against (-1)^(m+n) C(n, p-1-m)."""
    p = pr.p
    if not (0 <= m <= p - 1 and 0 <= n <= p - 1):
        raise RangeViolationError(f"need m, n in [0, p-1], got {(m, n)}")
    lhs = binom(pr, m, p - 1 - n)
    rhs = binom(pr, n, p - 1 - m)
    if (m + n) % 2 == 1:
        rhs = -rhs % p
    return IdentityInstance(pr, _MN, (m, n), lhs, rhs)


def cong_general(pr: Prime, m: int, n: int, s: int, j: int) -> IdentityInstance:
    """(-1)^j C(m,M-j) C(n,j) against sum over k of C(s,k) C(m,M-k) C(M-k,j-k),
    where M = m+n+s-(p-1).  At s = 0, 1, 2 the right side collapses to one,
    two, and three products respectively.
    """
    p = pr.p
    if not (0 <= m < p and 0 <= n < p and 0 <= s < p):
        raise HypothesisViolationError(f"need m, n, s in [0, p-1], got {(m, n, s)}")
    M = m + n + s - (p - 1)
    if not 0 <= M < p - 1:
        raise HypothesisViolationError(f"M = {M} outside [0, p-2]")
    if not 0 <= j <= M:
        raise HypothesisViolationError(f"j = {j} outside [0, M = {M}]")
    lhs = binom(pr, m, M - j) * binom(pr, n, j) % p
    if j & 1:
        lhs = -lhs % p
    rm = pr.binom_row(m)
    rs = pr.binom_row(s)
    rows = pr.binom_row
    acc = 0
    lo = M - m if M - m > 0 else 0
    hi = s if s < M else M
    for k in range(lo, hi + 1):
        t = rs[k] * rm[M - k]
        if t:
            jk = j - k
            if 0 <= jk <= M - k:
                acc += t * rows(M - k)[jk]
    rhs = acc % p
    return IdentityInstance(pr, _CONG, (m, n, s, j, M), lhs, rhs)


def comp_sides(pr: Prime, a: int, b: int, m: int, n: int, s: int, M: int) -> tuple[int, int]:
    """Both sides of the weighted-sum identity, no validation or packaging.

    The exhaustive grid sweeps drive this directly (32M+ instances on one
    core); comp_general wraps it with the hypothesis checks.  Callers must
    guarantee a != b nonzero mod p, exponents in range, and
    M = m+n+s-(p-1) in [0, p-2].
    """
    p = pr.p
    wr = pr.weighted_row
    lo = M - m
    if lo < 0:
        lo = 0
    base = m - M  # wa_rev[base + j] == C(m, M-j) a^(M-j)
    hi = n if n < M else M
    if hi < lo:
        lhs = 0
    else:
        lhs = sum(map(mul, wr(m, a)[1][base + lo : base + hi + 1],
                      wr(n, b)[0][lo : hi + 1])) % p
    hi = s if s < M else M
    if hi < lo:
        rhs = 0
    else:
        rhs = sum(map(mul, wr(m, a - b)[1][base + lo : base + hi + 1],
                      wr(s, -b)[0][lo : hi + 1])) % p
    return lhs, rhs


def comp_general(pr: Prime, a: int, b: int, m: int, n: int, s: int) -> IdentityInstance:
    """The weighted-sum identity behind the triple closed forms:

    sum_j C(m,M-j) C(n,j) a^(M-j) b^j  against
    sum_k C(m,M-k) C(s,k) (a-b)^(M-k) (-b)^k,  M = m+n+s-(p-1).

    s = 0, 1, 2 are the constant, linear, and quadratic comparison forms.
    """
    p = pr.p
    if not (0 < a < p and 0 < b < p):
        a %= p
        b %= p
        if not (0 < a < p and 0 < b < p):
            raise HypothesisViolationError(f"offsets must be nonzero mod p: {(a, b)}")
    if a == b:
        raise EqualOffsetsError("comp_general requires a != b")
    if not (0 < m < p and 0 < n < p and 0 <= s < p):
        raise HypothesisViolationError(f"exponents outside hypothesis: {(m, n, s)}")
    M = m + n + s - (p - 1)
    if not 0 <= M < p - 1:
        raise HypothesisViolationError(f"M = {M} outside [0, p-2]")
    lhs, rhs = comp_sides(pr, a, b, m, n, s, M)
    return IdentityInstance(pr, _COMP, (a, b, m, n, s, M), lhs, rhs)


def vandermonde(pr: Prime, m: int, n: int, M: int) -> IdentityInstance:
    """sum_j C(m,M-j) C(n,j) against C(m+n,M), tops kept below p."""
    p = pr.p
    if m < 0 or n < 0 or m + n > p - 1:
        raise RangeViolationError(f"need m, n >= 0 with m+n <= p-1, got {(m, n)}")
    if not 0 <= M <= m + n:
        raise RangeViolationError(f"M = {M} outside [0, m+n]")
    rm = pr.binom_row(m)
    rn = pr.binom_row(n)
    lo = M - m if M - m > 0 else 0
    hi = n if n < M else M
    lhs = sum(rm[M - j] * rn[j] for j in range(lo, hi + 1)) % p
    rhs = binom(pr, m + n, M)
    return IdentityInstance(pr, _VAND, (m, n, M), lhs, rhs)
