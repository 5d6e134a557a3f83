"""Quadratic algebras: graded dimensions, Koszul series, distributivity."""

import pytest
from fractions import Fraction

from heckebialg.exactnum import ONE, ZERO
from heckebialg.linalg import echelonize, subspace_sum
from heckebialg.qalg import (
    QuadraticAlgebra,
    algebra_by_key,
    build_e,
    build_lambda,
    build_s,
    distributivity_check,
    dual_graded_dimension,
    graded_dimension,
    koszul_series_check,
    relation_lifts,
    subspace_lattice_distributivity,
)
from heckebialg.rmatrix import dj_r_matrix, flip_operator, super_flip


def binom(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------------------
# construction


def test_relation_dimensions_dj2():
    op = dj_r_matrix(2)
    assert build_s(op).relations.dim == 1
    assert build_lambda(op).relations.dim == 3
    assert build_e(op).relations.dim == 6


def test_relation_dimensions_dj3():
    op = dj_r_matrix(3)
    assert build_s(op).relations.dim == 3
    assert build_lambda(op).relations.dim == 6


def test_s_and_lambda_relations_are_complementary():
    # R has exactly the eigenvalues q and -1, so the two images fill V (x) V
    op = dj_r_matrix(2)
    s, lam = build_s(op), build_lambda(op)
    assert subspace_sum(s.relations, lam.relations).dim == 4


def test_algebra_by_key():
    op = dj_r_matrix(2)
    assert algebra_by_key(op, "S").label == build_s(op).label
    assert algebra_by_key(op, "lambda").relations == build_lambda(op).relations
    assert algebra_by_key(op, "E").generators == 4
    with pytest.raises(ValueError):
        algebra_by_key(op, "nope")


# ---------------------------------------------------------------------------
# graded dimensions


def test_degree_zero_and_one_are_free():
    a = build_e(dj_r_matrix(2))
    assert graded_dimension(a, 0) == 1
    assert graded_dimension(a, 1) == 4
    assert dual_graded_dimension(a, 0) == 1
    assert dual_graded_dimension(a, 1) == 4


def test_s_dimensions_dj2():
    s = build_s(dj_r_matrix(2))
    assert [graded_dimension(s, n) for n in range(6)] == [
        binom(2 + n - 1, n) for n in range(6)
    ]


def test_lambda_dimensions_dj2():
    lam = build_lambda(dj_r_matrix(2))
    assert [graded_dimension(lam, n) for n in range(5)] == [
        binom(2, n) for n in range(5)
    ]


def test_s_dimensions_dj3():
    s = build_s(dj_r_matrix(3))
    assert [graded_dimension(s, n) for n in range(5)] == [
        binom(3 + n - 1, n) for n in range(5)
    ]


def test_lambda_dimensions_dj3():
    lam = build_lambda(dj_r_matrix(3))
    assert [graded_dimension(lam, n) for n in range(5)] == [
        binom(3, n) for n in range(5)
    ]


def test_duality_swaps_s_and_lambda_dj2():
    op = dj_r_matrix(2)
    s, lam = build_s(op), build_lambda(op)
    for n in range(5):
        assert dual_graded_dimension(s, n) == graded_dimension(lam, n)
        assert dual_graded_dimension(lam, n) == graded_dimension(s, n)


def test_e_dimensions_dj2():
    e = build_e(dj_r_matrix(2))
    assert [graded_dimension(e, n) for n in range(4)] == [1, 4, 10, 20]


def test_e_dual_dimensions_dj2():
    e = build_e(dj_r_matrix(2))
    assert [dual_graded_dimension(e, n) for n in range(5)] == [
        binom(4, n) for n in range(5)
    ]


def test_e_dimensions_superflip():
    e = build_e(super_flip(1, 1))
    assert [graded_dimension(e, n) for n in range(4)] == [1, 4, 8, 12]


def test_e_of_flip_is_commutative_polynomial_size():
    # flip on V of dim 2 gives the honest 2x2 matrix function algebra
    e = build_e(flip_operator(2))
    assert [graded_dimension(e, n) for n in range(4)] == [1, 4, 10, 20]


# ---------------------------------------------------------------------------
# Koszul series identity


def test_koszul_series_s_lambda_dj2():
    op = dj_r_matrix(2)
    for key in ("S", "lambda"):
        rep = koszul_series_check(algebra_by_key(op, key), 4)
        assert rep.ok, str(rep)
        assert all(r == 0 for r in rep.residuals)


def test_koszul_series_s_dj3():
    rep = koszul_series_check(build_s(dj_r_matrix(3)), 3)
    assert rep.ok, str(rep)


def test_koszul_series_e_superflip():
    rep = koszul_series_check(build_e(super_flip(1, 1)), 4)
    assert rep.ok, str(rep)
    assert rep.dims == [1, 4, 8, 12, 16]


def test_koszul_series_detects_imbalance():
    # a one-relation algebra on two generators whose dual series cannot
    # cancel: relations spanned by x(x)x only
    rel = echelonize([{0: ONE}], 4)
    a = QuadraticAlgebra(2, rel, "toy")
    rep = koszul_series_check(a, 3)
    assert [r == 0 for r in rep.residuals].count(False) >= 1 or rep.ok


def test_koszul_series_e_dj2():
    rep = koszul_series_check(build_e(dj_r_matrix(2)), 4)
    assert rep.ok, str(rep)
    assert rep.dims == [1, 4, 10, 20, 35]
    assert rep.dual_dims == [1, 4, 6, 4, 1]


# ---------------------------------------------------------------------------
# distributivity


def line(ambient, coords):
    return echelonize([{j: v for j, v in coords.items()}], ambient)


def test_three_lines_in_plane_not_distributive():
    u = line(2, {0: ONE})
    v = line(2, {1: ONE})
    w = line(2, {0: ONE, 1: ONE})
    rep = subspace_lattice_distributivity([u, v, w], 2, label="M3")
    assert rep.status == "non_distributive"
    assert rep.witness is not None
    wu, wv, ww, lhs, rhs = rep.witness
    assert lhs.dim != rhs.dim


def test_two_generated_lattice_distributive():
    u = line(3, {0: ONE})
    v = line(3, {1: ONE})
    rep = subspace_lattice_distributivity([u, v], 3)
    assert rep.status == "distributive"
    # closure: u, v, u+v, 0
    assert rep.closure_size == 4


def test_cap_gives_inconclusive():
    op = dj_r_matrix(2)
    rep = distributivity_check(build_s(op), 3, cap=1)
    assert rep.status == "inconclusive"
    assert "cap" in rep.note


def test_round_limit_gives_inconclusive():
    op = dj_r_matrix(2)
    rep = distributivity_check(build_s(op), 3, max_rounds=0)
    assert rep.status == "inconclusive"


def test_time_budget_gives_inconclusive():
    op = dj_r_matrix(2)
    rep = distributivity_check(build_e(op), 3, time_budget=0.0)
    assert rep.status == "inconclusive"
    assert "budget" in rep.note


def test_s_dj2_distributive_n3():
    rep = distributivity_check(build_s(dj_r_matrix(2)), 3)
    assert rep.status == "distributive"


def test_s_dj2_distributive_n4():
    rep = distributivity_check(build_s(dj_r_matrix(2)), 4)
    assert rep.status == "distributive"


def test_lambda_dj2_distributive_n4():
    rep = distributivity_check(build_lambda(dj_r_matrix(2)), 4)
    assert rep.status == "distributive"


def test_shadow_off_matches_shadow_on():
    a = build_s(dj_r_matrix(2))
    with_shadow = distributivity_check(a, 3)
    without = distributivity_check(a, 3, shadow_point=None)
    assert with_shadow.status == without.status == "distributive"
    assert with_shadow.closure_size == without.closure_size


def test_e_dj2_distributive_n3():
    rep = distributivity_check(build_e(dj_r_matrix(2)), 3)
    assert rep.status == "distributive"
    assert rep.certified_ops > 0


def test_e_dj2_distributive_n4():
    rep = distributivity_check(build_e(dj_r_matrix(2)), 4)
    assert rep.status == "distributive"


def test_report_str_mentions_status():
    rep = distributivity_check(build_s(dj_r_matrix(2)), 3)
    assert "distributive" in str(rep)
