import math

import pytest

from wolstenholme.errors import (
    NotInvertibleError,
    NotPrimeError,
    TooSmallError,
    TopOutOfRangeError,
)
from wolstenholme.modarith import (
    binom,
    fermat_reduce,
    is_prime,
    make_prime,
    mod_inverse,
    mod_pow,
    pow_nonzero,
    residue,
)

PRIMES = (5, 7, 11, 13, 17)


def test_make_prime_accepts_primes():
    for p in PRIMES:
        pr = make_prime(p)
        assert pr.p == p


def test_make_prime_rejects_composites_and_small():
    with pytest.raises(NotPrimeError):
        make_prime(9)
    with pytest.raises(NotPrimeError):
        make_prime(91)  # 7 * 13
    with pytest.raises(TooSmallError):
        make_prime(3)
    with pytest.raises(TooSmallError):
        make_prime(2)
    with pytest.raises(TooSmallError):
        make_prime(-7)


def test_factorial_tables():
    for p in PRIMES:
        pr = make_prime(p)
        assert pr.fact[0] == 1
        for i in range(1, p):
            assert pr.fact[i] == i * pr.fact[i - 1] % p
            assert pr.fact[i] * pr.inv_fact[i] % p == 1


def test_residue_normalizes_negatives():
    assert residue(-1, 11) == 10
    assert residue(-23, 11) == 10
    assert residue(22, 11) == 0


def test_mod_pow_examples():
    assert mod_pow(2, 10, 11) == 1
    assert mod_pow(0, 0, 7) == 1
    assert mod_pow(2, 5, 11) == 10
    with pytest.raises(ValueError):
        mod_pow(2, -1, 11)


def test_mod_inverse_examples():
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(4, 25) == 19
    with pytest.raises(NotInvertibleError):
        mod_inverse(5, 25)


def test_mod_inverse_matches_fermat_exponentiation():
    for p in PRIMES:
        for a in range(1, p):
            assert mod_inverse(a, p) == pow(a, p - 2, p)


def test_mod_inverse_prime_square():
    for p in (5, 7, 11):
        p2 = p * p
        for a in range(1, p2):
            if a % p == 0:
                continue
            assert a * mod_inverse(a, p2) % p2 == 1


def test_binom_examples():
    pr = make_prime(11)
    assert binom(pr, 7, 3) == 2
    assert binom(pr, 7, -1) == 0
    assert binom(pr, 3, 5) == 0
    with pytest.raises(TopOutOfRangeError):
        binom(pr, 11, 3)
    with pytest.raises(TopOutOfRangeError):
        binom(pr, -1, 0)


def test_binom_matches_math_comb():
    for p in PRIMES:
        pr = make_prime(p)
        for n in range(p):
            for k in range(n + 1):
                assert binom(pr, n, k) == math.comb(n, k) % p


def test_binom_pascal():
    for p in PRIMES:
        pr = make_prime(p)
        for n in range(1, p):
            for k in range(n + 1):
                assert binom(pr, n, k) == (binom(pr, n - 1, k - 1) + binom(pr, n - 1, k)) % p


def test_binom_cancellation_identity():
    for p in (7, 11):
        pr = make_prime(p)
        for n in range(p):
            for k in range(n + 1):
                for s in range(k + 1):
                    lhs = binom(pr, n, k) * binom(pr, k, s) % p
                    rhs = binom(pr, n, s) * binom(pr, n - s, k - s) % p
                    assert lhs == rhs


def test_fermat_reduce():
    pr = make_prime(11)
    assert fermat_reduce(pr, 19) == 9
    assert fermat_reduce(pr, 10) == 10
    assert fermat_reduce(pr, 3) == 3
    assert fermat_reduce(pr, 20) == 10
    with pytest.raises(ValueError):
        fermat_reduce(pr, 0)


def test_fermat_reduce_preserves_powers():
    for p in (7, 11):
        pr = make_prime(p)
        for a in range(1, p):
            for e in range(1, 3 * p):
                assert pow(a, e, p) == pow(a, fermat_reduce(pr, e), p)


def test_fermat_little_theorem():
    for p in PRIMES:
        for a in range(1, p):
            assert mod_pow(a, p - 1, p) == 1


def test_pow_nonzero_negative_exponents():
    pr = make_prime(11)
    for a in range(1, 11):
        for e in range(-15, 16):
            want = pow(mod_inverse(a, 11), -e, 11) if e < 0 else pow(a, e, 11)
            assert pow_nonzero(pr, a, e) == want


def test_prime_lookup_caches():
    pr = make_prime(13)
    assert pr.binom_row(6) == tuple(math.comb(6, k) % 13 for k in range(7))
    assert pr.powers(2) == tuple(pow(2, e, 13) for e in range(13))
    w, w_rev = pr.weighted_row(5, 3)
    assert w == tuple(math.comb(5, i) * pow(3, i, 13) % 13 for i in range(6))
    assert w_rev == w[::-1]


def test_is_prime_small():
    assert [n for n in range(2, 32) if is_prime(n)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31,
    ]
