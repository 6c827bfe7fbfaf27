"""Dense univariate and bivariate polynomials over Z/pZ.

PolyZp backs coefficient extraction for the n-term sums; BiPolyZp reproduces
the symbolic coefficient and sum tables exactly, keeping a and b as formal
symbols (no Fermat reduction of their exponents) until evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import HypothesisViolationError, ModulusMismatchError
from .modarith import Prime


@dataclass(frozen=True)
class PolyZp:
    """Dense coefficient list, coeffs[j] = coefficient of x^j, trimmed."""

    pr: Prime
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficients must be trimmed")

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1


def poly(pr: Prime, coeffs) -> PolyZp:
    """Build a PolyZp, reducing coefficients mod p and trimming zeros."""
    cs = [c % pr.p for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return PolyZp(pr, tuple(cs))


def poly_mul(f: PolyZp, g: PolyZp) -> PolyZp:
    """Schoolbook product; degrees stay at desk scale so this is plenty."""
    if f.pr.p != g.pr.p:
        raise ModulusMismatchError(f"moduli differ: {f.pr.p} vs {g.pr.p}")
    if not f.coeffs or not g.coeffs:
        return PolyZp(f.pr, ())
    p = f.pr.p
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if fi:
            for j, gj in enumerate(g.coeffs):
                out[i + j] += fi * gj
    return poly(f.pr, out)


def poly_add(f: PolyZp, g: PolyZp) -> PolyZp:
    if f.pr.p != g.pr.p:
        raise ModulusMismatchError(f"moduli differ: {f.pr.p} vs {g.pr.p}")
    n = max(len(f.coeffs), len(g.coeffs))
    out = [0] * n
    for i, c in enumerate(f.coeffs):
        out[i] += c
    for i, c in enumerate(g.coeffs):
        out[i] += c
    return poly(f.pr, out)


def coeff(f: PolyZp, j: int) -> int:
    """Coefficient of x^j, zero outside the support."""
    if j < 0 or j > f.degree:
        return 0
    return f.coeffs[j]


def evaluate(f: PolyZp, x: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % f.pr.p
    return acc


def binomial_power(pr: Prime, b: int, m: int) -> PolyZp:
    """(b + x)^m expanded directly: coefficient of x^j is C(m, j) b^(m-j)."""
    row = pr.binom_row(m)
    pw = pr.powers(b)
    return poly(pr, [row[j] * pw[m - j] for j in range(m + 1)])


def build_product(pr: Prime, offsets, exps) -> PolyZp:
    """The monic product of (b_i + x)^(m_i); the empty product is 1."""
    out = poly(pr, [1])
    for b, m in zip(offsets, exps):
        if m < 1:
            raise HypothesisViolationError("build_product requires exponents >= 1")
        out = poly_mul(out, binomial_power(pr, b % pr.p, m))
    return out


@dataclass(frozen=True)
class BiPolyZp:
    """Dense bivariate grid, coeffs[i][j] = coefficient of a^i b^j."""

    pr: Prime
    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.pr.p
        if len(self.coeffs) > p:
            raise HypothesisViolationError("degree in a must stay below p")
        for row in self.coeffs:
            if len(row) > p:
                raise HypothesisViolationError("degree in b must stay below p")
            for c in row:
                if not 0 <= c < p:
                    raise ValueError("coefficients must be canonical residues")

    def monomials(self) -> list[tuple[int, int, int]]:
        """Nonzero (a_exp, b_exp, coeff), ascending total degree then descending a."""
        out = [
            (i, j, c)
            for i, row in enumerate(self.coeffs)
            for j, c in enumerate(row)
            if c
        ]
        out.sort(key=lambda t: (t[0] + t[1], -t[0]))
        return out

    def evaluate(self, a: int, b: int) -> int:
        p = self.pr.p
        pa = self.pr.powers(a % p)
        pb = self.pr.powers(b % p)
        return sum(c * pa[i] % p * pb[j] for i, j, c in self.monomials()) % p

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.coeffs for c in row)

    def render(self, signed: bool = False) -> str:
        """Canonical text form, e.g. "10 + 9 a^7 b^3 + 8 a^6 b^4".

        Coefficients print in [0, p); signed mode shows balanced residues
        instead (purely a display choice).
        """
        mons = self.monomials()
        if not mons:
            return "0"
        p = self.pr.p
        parts: list[str] = []
        for i, j, c in mons:
            cc = c
            neg = False
            if signed and c > p // 2:
                cc, neg = p - c, True
            bits = []
            if cc != 1 or (i == 0 and j == 0):
                bits.append(str(cc))
            if i:
                bits.append("a" if i == 1 else f"a^{i}")
            if j:
                bits.append("b" if j == 1 else f"b^{j}")
            term = " ".join(bits)
            if not parts:
                parts.append(f"-{term}" if neg else term)
            else:
                parts.append(f"- {term}" if neg else f"+ {term}")
        return " ".join(parts)


def bipoly(pr: Prime, grid) -> BiPolyZp:
    return BiPolyZp(pr, tuple(tuple(c % pr.p for c in row) for row in grid))


def bipoly_add(f: BiPolyZp, g: BiPolyZp) -> BiPolyZp:
    if f.pr.p != g.pr.p:
        raise ModulusMismatchError(f"moduli differ: {f.pr.p} vs {g.pr.p}")
    rows = max(len(f.coeffs), len(g.coeffs))
    cols = max(
        max((len(r) for r in f.coeffs), default=0),
        max((len(r) for r in g.coeffs), default=0),
    )
    grid = [[0] * cols for _ in range(rows)]
    for src in (f, g):
        for i, row in enumerate(src.coeffs):
            for j, c in enumerate(row):
                grid[i][j] += c
    return bipoly(f.pr, grid)


def symbolic_coeff_table(pr: Prime, m: int, n: int) -> list[BiPolyZp]:
    """Row j = the bivariate polynomial -[x^j] (a+x)^m (b+x)^n, j = 0..m+n.

    The coefficient of a^i1 b^i2 in row j is -C(m,i1) C(n,i2) whenever
    (m-i1) + (n-i2) = j, so row j collects the monomials of total degree
    m+n-j.
    """
    p = pr.p
    if not 1 <= m <= p - 1 or not 1 <= n <= p - 1:
        raise HypothesisViolationError("table exponents must lie in [1, p-1]")
    rm = pr.binom_row(m)
    rn = pr.binom_row(n)
    rows = []
    for j in range(m + n + 1):
        grid = [[0] * (n + 1) for _ in range(m + 1)]
        # (m - i1) + (n - i2) = j  =>  i2 = m + n - j - i1
        for i1 in range(m + 1):
            i2 = m + n - j - i1
            if 0 <= i2 <= n:
                grid[i1][i2] = -(rm[i1] * rn[i2]) % p
        rows.append(bipoly(pr, grid))
    return rows


def symbolic_sum_table(pr: Prime, m: int, n: int) -> list[BiPolyZp]:
    """Row index s-1 = sum over k of (a+k)^m (b+k)^n k^s symbolically, s = 1..p-1.

    For each k both shifted binomials are expanded numerically in k and
    symbolically in a, b; the per-variable degrees stay at m and n < p, so
    nothing collapses before evaluation.
    """
    p = pr.p
    if not 1 <= m <= p - 1 or not 1 <= n <= p - 1:
        raise HypothesisViolationError("table exponents must lie in [1, p-1]")
    rm = pr.binom_row(m)
    rn = pr.binom_row(n)
    # grids[s-1][i1][i2] accumulates C(m,i1) C(n,i2) * sum_k k^(m-i1+n-i2+s)
    grids = [[[0] * (n + 1) for _ in range(m + 1)] for _ in range(p - 1)]
    for k in range(1, p):  # k = 0 contributes nothing: exponents are >= 1
        kp = pr.powers(k)
        kext = [kp[e % (p - 1)] for e in range(3 * p)]  # k != 0, Fermat wrap
        for i1 in range(m + 1):
            c1 = rm[i1]
            e1 = m - i1
            for i2 in range(n + 1):
                c = c1 * rn[i2] % p
                e = e1 + n - i2
                for s in range(1, p):
                    grids[s - 1][i1][i2] += c * kext[e + s]
    return [bipoly(pr, g) for g in grids]


def table_to_json(pr: Prime, rows: list[BiPolyZp], start_index: int = 0) -> str:
    payload = {
        "p": pr.p,
        "rows": [
            {
                "index": start_index + i,
                "monomials": [
                    {"ca": ai, "cb": bi, "coeff": c} for ai, bi, c in row.monomials()
                ],
            }
            for i, row in enumerate(rows)
        ],
    }
    return json.dumps(payload)
