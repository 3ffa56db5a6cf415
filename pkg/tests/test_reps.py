import random
from fractions import Fraction

import pytest

from envsos.errors import ContextInvalid, NotAbelian, NotHermitean
from envsos.exactla import cmat_identity, cmat_mul, cmat_sub, cmat_is_zero
from envsos.lie import builtin
from envsos.pbw import AlgebraElement, canonical_a
from envsos.reps import (
    FiniteDimRep,
    direct_sum,
    make_point_rep,
    make_spin_rep,
    scan_dual_window,
    spin_window,
)
from envsos.scalar import Scalar

from oracles import psd_by_char_poly, random_element, random_hermitean


def half(n):
    return Fraction(n, 2)


def test_spin_rep_canonical_element(su2):
    a = canonical_a(su2)
    for l2 in range(0, 7):
        l = half(l2)
        rep = make_spin_rep(l)
        A = rep.evaluate(a)
        expect = l * l + l + 1
        n = rep.dim_rep
        assert all(A[i][i] == Scalar(expect) for i in range(n))
        assert all(not A[i][j] for i in range(n) for j in range(n) if i != j)


def test_spin_half_is_two_dimensional():
    rep = make_spin_rep(half(1))
    assert rep.dim_rep == 2
    assert rep.evaluate(canonical_a(rep.algebra))[0][0] == Scalar(Fraction(7, 4))


def test_spin_zero_trivial():
    rep = make_spin_rep(0)
    assert rep.dim_rep == 1
    assert all(not rep.mats[k][0][0] for k in range(3))
    assert rep.metric == [Fraction(1)]


def test_spin_weight_operator_diagonal(su2):
    # the image of -i x1 is diag(j), j = -l..l, in integer steps
    from envsos.exprs import parse

    H = parse("-i*x1", su2)
    for l2 in (1, 2, 3, 4):
        l = half(l2)
        rep = make_spin_rep(l)
        M = rep.evaluate(H)
        diag = [M[i][i] for i in range(rep.dim_rep)]
        assert diag == [Scalar(-l + k) for k in range(rep.dim_rep)]
        assert all(not M[i][j] for i in range(rep.dim_rep) for j in range(rep.dim_rep) if i != j)


def test_constructor_rejects_broken_bracket(su2):
    rep = make_spin_rep(1)
    bad = [row[:] for row in rep.mats[0]]
    bad[0][0] = bad[0][0] + Scalar(1)
    with pytest.raises(ContextInvalid):
        FiniteDimRep(su2, [bad, rep.mats[1], rep.mats[2]], rep.metric)


def test_constructor_rejects_bad_metric(su2):
    rep = make_spin_rep(1)
    with pytest.raises(ContextInvalid):
        FiniteDimRep(su2, rep.mats, [Fraction(1), Fraction(2), Fraction(1)])


def test_point_rep_values():
    ab = builtin("abelian(2)")
    rep = make_point_rep(ab, [1, 2])
    a = canonical_a(ab)
    assert rep.evaluate(a)[0][0] == Scalar(6)
    zero = make_point_rep(ab, [0, 0])
    assert zero.evaluate(a)[0][0] == Scalar(1)


def test_point_rep_square_convention():
    ab = builtin("abelian(1)")
    rep = make_point_rep(ab, [1])
    x1 = AlgebraElement.generator(ab, 0)
    assert rep.evaluate(x1.star() * x1)[0][0] == Scalar(1)


def test_point_rep_requires_abelian(su2):
    with pytest.raises(NotAbelian):
        make_point_rep(su2, [1, 0, 0])


def test_evaluate_is_homomorphism(builtins, su2):
    rng = random.Random(31)
    reps = [make_spin_rep(half(k)) for k in (1, 2, 3)]
    ab = builtin("abelian(2)")
    reps.append(make_point_rep(ab, [1, -2]))
    for rep in reps:
        alg = rep.algebra
        for _ in range(12):
            u = random_element(alg, rng, max_degree=2)
            v = random_element(alg, rng, max_degree=2)
            left = rep.evaluate(u * v)
            right = cmat_mul(rep.evaluate(u), rep.evaluate(v))
            assert left == right
        assert rep.evaluate(AlgebraElement.unit(alg)) == cmat_identity(rep.dim_rep)


def test_evaluate_respects_involution():
    rng = random.Random(37)
    rep = make_spin_rep(half(3))
    for _ in range(10):
        e = random_element(rep.algebra, rng, max_degree=3)
        left = rep.weighted_matrix(e.star())
        right = rep.weighted_matrix(e)
        n = rep.dim_rep
        assert all(left[i][j] == right[j][i].conj() for i in range(n) for j in range(n))


def test_is_positive_requires_hermitean():
    rep = make_spin_rep(1)
    x1 = AlgebraElement.generator(rep.algebra, 0)
    with pytest.raises(NotHermitean):
        rep.is_positive(x1)


def test_is_positive_a_minus_one():
    a = canonical_a(builtin("su2"))
    one = AlgebraElement.unit(a.algebra)
    for l2 in range(0, 9):
        rep = make_spin_rep(half(l2))
        assert rep.is_positive(a - one)


def test_is_positive_weight_bound(su2):
    from envsos.exprs import parse

    e = parse("2 - H", su2, aliases={"H": "-i*x1"})
    # spectrum of the weight operator is -l..l, so 2-H >= 0 exactly when l <= 2
    for l2 in range(0, 9):
        rep = make_spin_rep(half(l2))
        verdict = rep.is_positive(e)
        assert bool(verdict) == (half(l2) <= 2)
        if not verdict:
            assert verdict.witness_value < 0


def test_is_positive_matches_char_poly_oracle():
    rng = random.Random(41)
    reps = [make_spin_rep(half(k)) for k in (1, 2, 3, 4)]
    for rep in reps:
        for _ in range(8):
            e = random_hermitean(rep.algebra, rng, max_degree=2)
            H = rep.weighted_matrix(e)
            assert bool(rep.is_positive(e)) == psd_by_char_poly(H)


def test_centrality_in_every_spin_rep(su2):
    rng = random.Random(43)
    a = canonical_a(su2)
    for l2 in (1, 2, 4):
        rep = make_spin_rep(half(l2))
        for _ in range(5):
            z = random_element(su2, rng, max_degree=2)
            res = cmat_sub(rep.evaluate(z * a), rep.evaluate(a * z))
            assert cmat_is_zero(res)


def test_direct_sum_blocks():
    r1 = make_spin_rep(half(1))
    r2 = make_spin_rep(1)
    ds = direct_sum(r1, r2)
    assert ds.dim_rep == 5
    A = ds.evaluate(canonical_a(ds.algebra))
    assert A[0][0] == Scalar(Fraction(7, 4))
    assert A[4][4] == Scalar(3)


def test_scan_trivial_generator_list(su2):
    unit = AlgebraElement.unit(su2)
    res = scan_dual_window(su2, [unit], spin_window(3))
    assert res.members() == res.window


def test_scan_weight_cutoff(su2):
    from envsos.exprs import parse

    unit = AlgebraElement.unit(su2)
    f2 = parse("2 - H", su2, aliases={"H": "-i*x1"})
    res = scan_dual_window(su2, [unit, f2], spin_window(3))
    assert res.members() == ["0", "1/2", "1", "3/2", "2"]
    assert "5/2" in res.witnesses
    assert res.witnesses["5/2"]["generator"] == 2


def test_scan_casimir_pin(su2):
    # -(a - 3)^2 >= 0 only where the canonical element evaluates to 3 (spin 1)
    from envsos.exprs import parse

    unit = AlgebraElement.unit(su2)
    f2 = parse("-(1 - x1^2 - x2^2 - x3^2 - 3)^2", su2)
    res = scan_dual_window(su2, [unit, f2], spin_window(3))
    assert res.members() == ["1"]


def test_scan_requires_unit_first(su2):
    from envsos.exprs import parse

    f2 = parse("2 - H", su2, aliases={"H": "-i*x1"})
    with pytest.raises(ValueError):
        scan_dual_window(su2, [f2], spin_window(2))


def test_scan_rejects_non_hermitean(su2):
    unit = AlgebraElement.unit(su2)
    x1 = AlgebraElement.generator(su2, 0)
    with pytest.raises(NotHermitean):
        scan_dual_window(su2, [unit, x1], spin_window(2))


def test_scan_abelian_grid():
    ab = builtin("abelian(2)")
    unit = AlgebraElement.unit(ab)
    a = canonical_a(ab)
    three = AlgebraElement.unit(ab, 3)
    # 3 - a = 2 - t1^2 - t2^2 at the point (t1, t2)
    res = scan_dual_window(ab, [unit, three - a], [(0, 0), (1, 1), (2, 0)])
    assert res.members() == ["(0, 0)", "(1, 1)"]
