import random
from fractions import Fraction

from envsos.exactla import (
    EchelonAccumulator,
    cmat_identity,
    cmat_mul,
    hermitian_form,
    invert_exact,
    ldl_hermitian,
    rref,
    solve_exact,
)
from envsos.scalar import Scalar

from oracles import psd_by_char_poly


def rand_frac(rng, lo=-4, hi=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def random_hermitian(rng, n):
    M = [[Scalar(0) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        M[i][i] = Scalar(rand_frac(rng))
        for j in range(i + 1, n):
            z = Scalar(rand_frac(rng), rand_frac(rng))
            M[i][j] = z
            M[j][i] = z.conj()
    return M


def random_psd(rng, n, rank=None):
    rank = rank if rank is not None else n
    cols = [[Scalar(rand_frac(rng), rand_frac(rng)) for _ in range(n)] for _ in range(rank)]
    M = [[Scalar(0) for _ in range(n)] for _ in range(n)]
    for v in cols:
        for i in range(n):
            for j in range(n):
                M[i][j] = M[i][j] + v[i] * v[j].conj()
    return M


def test_rref_and_solve():
    A = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    x = solve_exact(A, [Fraction(3), Fraction(6)])
    assert x is not None
    assert A[0][0] * x[0] + A[0][1] * x[1] == 3
    assert solve_exact(A, [Fraction(3), Fraction(7)]) is None


def test_invert_exact_roundtrip():
    rng = random.Random(2)
    for n in (1, 2, 4):
        while True:
            A = [[rand_frac(rng) for _ in range(n)] for _ in range(n)]
            R, pivots = rref([row[:] for row in A])
            if len(pivots) == n:
                break
        Ainv = invert_exact(A)
        prod = [
            [sum(A[i][k] * Ainv[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        assert prod == [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def test_echelon_accumulator_rank():
    acc = EchelonAccumulator(3)
    assert acc.insert([1, 0, 0])
    assert acc.insert([1, 1, 0])
    assert not acc.insert([2, 1, 0])
    assert acc.rank == 2
    assert acc.contains([5, 3, 0])
    assert not acc.contains([0, 0, 1])


def test_ldl_agrees_with_char_poly_oracle():
    rng = random.Random(5)
    for n in range(1, 7):
        for _ in range(8):
            M = random_hermitian(rng, n)
            assert ldl_hermitian(M).psd == psd_by_char_poly(M)
        for _ in range(4):
            M = random_psd(rng, n, rank=max(1, n - 1))
            res = ldl_hermitian(M)
            assert res.psd
            assert psd_by_char_poly(M)


def test_ldl_witness_is_exact_negative_direction():
    rng = random.Random(8)
    found = 0
    for n in range(2, 6):
        for _ in range(10):
            M = random_hermitian(rng, n)
            res = ldl_hermitian(M)
            if not res.psd:
                found += 1
                val = hermitian_form(M, res.witness)
                assert val.is_real() and val.re < 0
                assert val.re == res.witness_value
    assert found > 5


def test_ldl_zero_pivot_rule():
    # [[0, 1], [1, 0]] is indefinite even though the diagonal vanishes
    M = [[Scalar(0), Scalar(1)], [Scalar(1), Scalar(0)]]
    res = ldl_hermitian(M)
    assert not res.psd
    val = hermitian_form(M, res.witness)
    assert val.re < 0
    # genuinely zero row is fine
    Z = [[Scalar(0), Scalar(0)], [Scalar(0), Scalar(1)]]
    assert ldl_hermitian(Z).psd


def test_ldl_factorization_reconstructs():
    rng = random.Random(13)
    for n in (2, 3, 5):
        M = random_psd(rng, n)
        res = ldl_hermitian(M)
        assert res.psd
        # P M P^T = L D L^*
        perm = res.perm
        PMPT = [[M[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
        D = [[Scalar(res.diag[i]) if i == j else Scalar(0) for j in range(n)] for i in range(n)]
        Lh = [[res.lower[j][i].conj() for j in range(n)] for i in range(n)]
        recon = cmat_mul(cmat_mul(res.lower, D), Lh)
        assert recon == PMPT


def test_positive_definite_flag():
    I2 = cmat_identity(2)
    assert ldl_hermitian(I2).is_positive_definite()
    sing = [[Scalar(1), Scalar(1)], [Scalar(1), Scalar(1)]]
    res = ldl_hermitian(sing)
    assert res.psd and not res.is_positive_definite()
