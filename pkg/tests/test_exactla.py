"""Exact linear algebra: field elimination and prime-power lattice work."""

import random
from fractions import Fraction

from drwkz.exactla import (
    field_rank,
    field_rref,
    hnf_basis,
    in_span_mod_prime_power,
    int_val,
    kernel_mod_prime_power,
    reduce_mod_lattice,
)


def test_field_rank_basic():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert field_rank(rows) == 1
    rows = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert field_rank(rows) == 2
    assert field_rank([]) == 0
    assert field_rank([[Fraction(0), Fraction(0)]]) == 0


def test_field_rref_pivots():
    rows = [[Fraction(2), Fraction(4), Fraction(2)], [Fraction(1), Fraction(2), Fraction(3)]]
    pivots, red = field_rref(rows, 3)
    assert pivots == [0, 2]
    # reconstructed relations: e_pivot expressed over non-pivot columns
    assert red[0] == [Fraction(1), Fraction(2), Fraction(0)]
    assert red[1] == [Fraction(0), Fraction(0), Fraction(1)]


def test_int_val():
    assert int_val(50, 5) == 2
    assert int_val(-12, 2) == 2
    assert int_val(7, 5) == 0


def test_kernel_mod_prime_power_simple():
    # kernel of (x, y) -> x + 5y mod 25
    gens = kernel_mod_prime_power([[1, 5]], 5, 2)
    for g in gens:
        assert (g[0] + 5 * g[1]) % 25 == 0
    # contains (-5, 1) mod 25 = (20, 1)
    assert in_span_mod_prime_power(gens, [20, 1], 5, 2)
    assert not in_span_mod_prime_power(gens, [1, 0], 5, 2)


def test_kernel_contains_scaled_identity():
    gens = kernel_mod_prime_power([[1, 0], [0, 1]], 3, 2)
    assert in_span_mod_prime_power(gens, [9, 0], 3, 2)
    assert in_span_mod_prime_power(gens, [0, 9], 3, 2)
    assert not in_span_mod_prime_power(gens, [3, 0], 3, 2)


def test_kernel_randomized_soundness():
    rng = random.Random(7)
    for p in (2, 3, 5):
        for _ in range(25):
            M = rng.randrange(1, 4)
            nrows, ncols = rng.randrange(1, 4), rng.randrange(1, 4)
            A = [[rng.randrange(-10, 11) for _ in range(ncols)] for _ in range(nrows)]
            gens = kernel_mod_prime_power(A, p, M)
            q = p ** M
            for g in gens:
                img = [sum(A[i][j] * g[j] for j in range(ncols)) % q for i in range(nrows)]
                assert not any(img), (A, g, p, M)
            # completeness: every brute-force kernel vector lies in the span
            if ncols <= 2 and q <= 27:
                for x in range(q):
                    for y in range(q if ncols == 2 else 1):
                        v = [x, y][:ncols]
                        img = [sum(A[i][j] * v[j] for j in range(ncols)) % q for i in range(nrows)]
                        if not any(img):
                            assert in_span_mod_prime_power(gens, v, p, M), (A, v, p, M)


def test_in_span_matches_bruteforce():
    rng = random.Random(11)
    p, M = 3, 2
    q = p ** M
    for _ in range(30):
        cols = [[rng.randrange(q) for _ in range(2)] for _ in range(rng.randrange(1, 3))]
        target = [rng.randrange(q) for _ in range(2)]
        reachable = set()
        from itertools import product

        for coeffs in product(range(q), repeat=len(cols)):
            v = tuple(sum(c * col[i] for c, col in zip(coeffs, cols)) % q for i in range(2))
            reachable.add(v)
        assert in_span_mod_prime_power(cols, target, p, M) == (tuple(target) in reachable)


def test_hnf_canonical_and_reduction():
    # lattice spanned by (2,1),(0,4) inside Z^2, determinant 8
    basis = hnf_basis([[2, 1], [0, 4], [8, 0], [0, 8]], 2)
    assert basis[0][0] > 0 and basis[1][0] == 0 and basis[1][1] > 0
    det = basis[0][0] * basis[1][1]
    assert det == 8
    # canonical representative depends only on the coset
    t = [7, 5]
    r1 = reduce_mod_lattice(basis, t)
    r2 = reduce_mod_lattice(basis, [t[0] + 2, t[1] + 1])
    assert r1 == r2
    # different generating sets of the same lattice give identical bases
    basis2 = hnf_basis([[2, 5], [2, 1], [8, 0], [0, 8], [0, 4]], 2)
    assert basis == basis2


def test_reduce_zero_iff_in_lattice():
    rng = random.Random(3)
    for _ in range(20):
        g1 = [rng.randrange(-4, 5), rng.randrange(-4, 5), rng.randrange(-4, 5)]
        gens = [g1, [9, 0, 0], [0, 9, 0], [0, 0, 9]]
        basis = hnf_basis(gens, 3)
        # random lattice element reduces to zero
        coeffs = [rng.randrange(-3, 4) for _ in gens]
        v = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3)]
        assert reduce_mod_lattice(basis, v) == [0, 0, 0]
