"""Exact arithmetic in Z/pZ and Z/p^2: the foundation for every other module.

Residues are plain Python ints kept canonical in [0, m).  The Prime object
bundles a validated odd prime p >= 5 with factorial tables mod p and a few
lazily built lookup caches (binomial rows, power tables) that the closed-form
evaluators lean on in hot verification loops.
"""

from __future__ import annotations

from .errors import (
    NotInvertibleError,
    NotPrimeError,
    TooSmallError,
    TopOutOfRangeError,
)


def is_prime(n: int) -> bool:
    """Deterministic trial division up to sqrt(n)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def residue(value: int, modulus: int) -> int:
    """Canonical representative of value in [0, modulus)."""
    return value % modulus


class Prime:
    """Validated prime modulus p >= 5 with tables of i! and (i!)^-1 mod p.

    Immutable after construction (the internal caches only memoize pure
    functions), so instances are safe to share.
    """

    __slots__ = ("p", "fact", "inv_fact", "_binom_rows", "_powers", "_wrows")

    def __init__(self, p: int):
        if p < 5:
            raise TooSmallError(f"p = {p}: moduli below 5 are not supported")
        if not is_prime(p):
            raise NotPrimeError(f"p = {p} is composite")
        self.p = p
        fact = [1] * p
        for i in range(1, p):
            fact[i] = fact[i - 1] * i % p
        inv_fact = [1] * p
        inv_fact[p - 1] = mod_inverse(fact[p - 1], p)
        for i in range(p - 1, 0, -1):
            inv_fact[i - 1] = inv_fact[i] * i % p
        self.fact = tuple(fact)
        self.inv_fact = tuple(inv_fact)
        # lazily filled lookup caches, indexed directly for speed in sweeps
        self._binom_rows: list = [None] * p
        self._powers: list = [None] * p
        self._wrows: list = [None] * p

    def __repr__(self) -> str:
        return f"Prime({self.p})"

    def binom_row(self, n: int) -> tuple[int, ...]:
        """Row (C(n,0), ..., C(n,n)) mod p; requires 0 <= n < p."""
        if not 0 <= n < self.p:
            raise TopOutOfRangeError(f"binomial top {n} outside [0, {self.p})")
        row = self._binom_rows[n]
        if row is None:
            p, fn, inv = self.p, self.fact[n], self.inv_fact
            row = tuple(fn * inv[k] % p * inv[n - k] % p for k in range(n + 1))
            self._binom_rows[n] = row
        return row

    def powers(self, base: int) -> tuple[int, ...]:
        """(base^0, base^1, ..., base^(p-1)) mod p."""
        base %= self.p
        tab = self._powers[base]
        if tab is None:
            p = self.p
            out = [1] * p
            for e in range(1, p):
                out[e] = out[e - 1] * base % p
            tab = tuple(out)
            self._powers[base] = tab
        return tab

    def weighted_row(self, n: int, base: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(w, reversed(w)) with w[i] = C(n,i) * base^i mod p.

        The reversed copy lets convolution-style sums run through
        sum(map(mul, ...)) without re-slicing; both are cached.
        """
        base %= self.p
        bucket = self._wrows[base]
        if bucket is None:
            bucket = [None] * self.p
            self._wrows[base] = bucket
        pair = bucket[n]
        if pair is None:
            row = self.binom_row(n)
            pw = self.powers(base)
            p = self.p
            w = tuple(row[i] * pw[i] % p for i in range(n + 1))
            pair = (w, w[::-1])
            bucket[n] = pair
        return pair


def make_prime(p: int) -> Prime:
    """Validate p and build its factorial tables.

    Raises NotPrimeError for composites and TooSmallError for p < 5 (p = 2, 3
    are excluded: several congruences need p >= 5 and nonempty {1,...,p-2}).
    """
    return Prime(p)


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus for exp >= 0, with the convention 0^0 = 1."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("mod_pow requires exp >= 0; invert the base first")
    return pow(base % modulus, exp, modulus)


def mod_inverse(a: int, modulus: int) -> int:
    """Inverse of a modulo modulus via extended Euclid.

    Works for prime-power moduli (p^2) where Fermat exponentiation does not.
    Raises NotInvertibleError when gcd(a, modulus) != 1.
    """
    a %= modulus
    r0, r1 = modulus, a
    x0, x1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        x0, x1 = x1, x0 - q * x1
    if r0 != 1:
        raise NotInvertibleError(f"{a} not invertible mod {modulus} (gcd = {r0})")
    return x0 % modulus


def binom(pr: Prime, n: int, k: int) -> int:
    """C(n, k) mod p for 0 <= n < p; returns 0 when k < 0 or k > n.

    Tops >= p are rejected rather than routed through Lucas: every formula in
    scope keeps tops <= p-1, so a large top is a caller bug.
    """
    if n < 0 or n >= pr.p:
        raise TopOutOfRangeError(f"binomial top {n} outside [0, {pr.p})")
    if k < 0 or k > n:
        return 0
    return pr.fact[n] * pr.inv_fact[k] % pr.p * pr.inv_fact[n - k] % pr.p


def fermat_reduce(pr: Prime, exp: int) -> int:
    """Reduce exp >= 1 into {1, ..., p-1} modulo p-1.

    Multiples of p-1 map to p-1 (not 0), so a^fermat_reduce(e) == a^e for
    every nonzero residue a.  Callers must not apply this to zero bases.
    """
    if exp < 1:
        raise ValueError("fermat_reduce requires exp >= 1")
    r = exp % (pr.p - 1)
    return r if r else pr.p - 1


def pow_nonzero(pr: Prime, base: int, exp: int) -> int:
    """base^exp mod p for base not divisible by p; exp may be any integer.

    The exponent is reduced mod p-1 (valid by Fermat for nonzero bases), which
    is how negative symbolic exponents like a^(m-n) are realized.
    """
    b = base % pr.p
    if b == 0:
        raise ZeroDivisionError("pow_nonzero requires a base nonzero mod p")
    return pow(b, exp % (pr.p - 1), pr.p)
