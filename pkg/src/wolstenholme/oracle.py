"""Ground-truth brute-force evaluation of residue power sums, mod p and mod p^2.

Everything here evaluates sums term by term with no algebraic shortcuts, so
the closed-form evaluators can be checked against it exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import HypothesisViolationError, ZeroDenominatorError
from .modarith import Prime, mod_inverse

Term = tuple[int, int]  # (offset, signed exponent)


@dataclass(frozen=True)
class SumSpec:
    """A sum over k in [0, p) \\ exclusions of products (offset + k)^exp.

    Exclusions are explicit data rather than inferred: the sums under study
    differ in which k they skip, and exponent-0 terms (0^0 = 1) make skipping
    observable.  Negative exponents are evaluated via modular inverses.
    """

    pr: Prime
    terms: tuple[Term, ...]
    exclusions: frozenset[int]

    def __post_init__(self):
        p = self.pr.p
        for off, exp in self.terms:
            if not 0 <= off < p:
                raise HypothesisViolationError(f"offset {off} outside [0, {p})")
            if abs(exp) > p - 1:
                raise HypothesisViolationError(f"|exponent| {exp} exceeds p-1 = {p - 1}")
        for k in self.exclusions:
            if not 0 <= k < p:
                raise HypothesisViolationError(f"exclusion {k} outside [0, {p})")


def auto_exclusions(pr: Prime, terms) -> frozenset[int]:
    """The k-values where some negative-exponent base vanishes."""
    return frozenset((-off) % pr.p for off, exp in terms if exp < 0)


def make_spec(pr: Prime, terms, exclusions=None) -> SumSpec:
    """Build a SumSpec with offsets normalized mod p.

    When exclusions is None the denominator zeros (auto_exclusions) are used,
    matching the convention of the sums this package evaluates.
    """
    norm = tuple((off % pr.p, exp) for off, exp in terms)
    if exclusions is None:
        excl = auto_exclusions(pr, norm)
    else:
        excl = frozenset(k % pr.p for k in exclusions)
    return SumSpec(pr, norm, excl)


def brute_sum(spec: SumSpec) -> int:
    """Evaluate the sum literally; exact ground truth for all closed forms."""
    p = spec.pr.p
    terms = spec.terms
    excl = spec.exclusions
    total = 0
    for k in range(p):
        if k in excl:
            continue
        prod = 1
        for off, exp in terms:
            base = (off + k) % p
            if exp >= 0:
                prod = prod * pow(base, exp, p) % p
            else:
                if base == 0:
                    raise ZeroDenominatorError(
                        f"denominator (({off})+k)^{exp} vanishes at unexcluded k = {k}"
                    )
                prod = prod * pow(mod_inverse(base, p), -exp, p) % p
        total += prod
    return total % p


def brute_sum_mod_p2(pr: Prime, exp: int) -> int:
    """Sum of (k^-1 mod p^2)^exp over k = 1..p-1, reduced mod p^2."""
    if not 1 <= exp <= pr.p - 2:
        raise HypothesisViolationError(f"exp = {exp} outside [1, p-2]")
    p2 = pr.p * pr.p
    return sum(pow(mod_inverse(k, p2), exp, p2) for k in range(1, pr.p)) % p2


@dataclass(frozen=True)
class ResidueMatrix:
    """p x p grid: entries[m][n] = sum over k != a of k^m / (a-k)^n mod p."""

    pr: Prime
    a: int
    entries: tuple[tuple[int, ...], ...]

    def to_csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.entries) + "\n"

    def to_json_dict(self) -> dict:
        return {"p": self.pr.p, "a": self.a, "entries": [list(r) for r in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def residue_matrix(pr: Prime, a: int) -> ResidueMatrix:
    """Fill the grid of ratio sums for offsets 1 <= a <= p-1.

    Row m, column n holds sum over k in {1,...,p-1} minus {a} of
    k^m * (a-k)^(-n).
    """
    p = pr.p
    if not 1 <= a <= p - 1:
        raise HypothesisViolationError(f"a = {a} outside [1, p-1]")
    ks = [k for k in range(1, p) if k != a]
    kpow = [pr.powers(k) for k in ks]
    ipow = [pr.powers(mod_inverse(a - k, p)) for k in ks]
    entries = []
    for m in range(p):
        row = []
        for n in range(p):
            row.append(sum(kp[m] * ip[n] for kp, ip in zip(kpow, ipow)) % p)
        entries.append(tuple(row))
    return ResidueMatrix(pr, a, tuple(entries))
