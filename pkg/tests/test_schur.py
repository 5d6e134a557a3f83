"""Character table, multiplicities, centralizer and bicommutant checks."""

import math

import pytest

from heckebialg.qalg import build_e, graded_dimension
from heckebialg.rmatrix import dj_r_matrix, flip_operator, super_flip
from heckebialg.schur import (
    bicommutant_check,
    centralizer_dimension,
    class_size,
    cycle_type_representative,
    hecke_span_dimension,
    hook_length_dimension,
    multiplicities,
    partitions,
    schur_dimension_check,
    sn_character_table,
)
from heckebialg.symhecke import all_permutations, cycle_type, length


# ---------------------------------------------------------------------------
# partitions and class combinatorics


def test_partitions_small():
    assert partitions(0) == [()]
    assert partitions(1) == [(1,)]
    assert partitions(3) == [(3,), (2, 1), (1, 1, 1)]
    assert len(partitions(8)) == 22


def test_class_sizes_sum_to_group_order():
    for n in range(1, 7):
        assert sum(class_size(mu) for mu in partitions(n)) == math.factorial(n)


def test_class_size_oracle_s4():
    sizes = {mu: class_size(mu) for mu in partitions(4)}
    assert sizes == {(4,): 6, (3, 1): 8, (2, 2): 3, (2, 1, 1): 6, (1, 1, 1, 1): 1}


def test_representative_has_right_type_and_minimal_length():
    for n in range(1, 7):
        for mu in partitions(n):
            w = cycle_type_representative(mu)
            assert cycle_type(w) == mu
            assert length(w) == sum(part - 1 for part in mu)


# ---------------------------------------------------------------------------
# the character table against brute force


def brute_character_values(n):
    """Characters of the trivial, sign, and (for n=3) standard modules,
    computed from the permutations themselves."""
    reps = {mu: cycle_type_representative(mu) for mu in partitions(n)}
    fix = {mu: sum(1 for i, v in enumerate(w, 1) if v == i) for mu, w in reps.items()}
    sign = {mu: (-1) ** length(w) for mu, w in reps.items()}
    out = {
        (n,): {mu: 1 for mu in reps},
        (1,) * n: sign,
    }
    if n == 3:
        out[(2, 1)] = {mu: fix[mu] - 1 for mu in reps}
    return out


def test_table_matches_brute_force_n2():
    t = sn_character_table(2)
    brute = brute_character_values(2)
    for lam, row in brute.items():
        for mu, val in row.items():
            assert t.chi(lam, mu) == val


def test_table_matches_brute_force_n3():
    t = sn_character_table(3)
    brute = brute_character_values(3)
    for lam, row in brute.items():
        for mu, val in row.items():
            assert t.chi(lam, mu) == val


def test_spec_values():
    t2 = sn_character_table(2)
    assert (t2.chi((2,), (1, 1)), t2.chi((2,), (2,))) == (1, 1)
    assert (t2.chi((1, 1), (1, 1)), t2.chi((1, 1), (2,))) == (1, -1)
    t3 = sn_character_table(3)
    assert t3.chi((2, 1), (3,)) == -1
    assert [t3.dimension(lam) for lam in t3.parts] == [1, 2, 1]


def test_dimensions_match_hook_lengths():
    for n in range(1, 8):
        t = sn_character_table(n)
        for lam in t.parts:
            assert t.dimension(lam) == hook_length_dimension(lam)


def test_sum_of_squared_dimensions():
    for n in range(1, 7):
        t = sn_character_table(n)
        assert sum(t.dimension(lam) ** 2 for lam in t.parts) == math.factorial(n)


def test_row_orthogonality():
    for n in range(1, 7):
        t = sn_character_table(n)
        fact = math.factorial(n)
        for lam in t.parts:
            for lam2 in t.parts:
                dot = sum(
                    class_size(mu) * t.chi(lam, mu) * t.chi(lam2, mu)
                    for mu in t.parts
                )
                assert dot == (fact if lam == lam2 else 0)


def test_table_bounds():
    with pytest.raises(ValueError):
        sn_character_table(0)
    with pytest.raises(ValueError):
        sn_character_table(9)


# ---------------------------------------------------------------------------
# multiplicities


def test_multiplicities_n1():
    t = multiplicities(dj_r_matrix(2), 1)
    assert t.mult == {(1,): 2}
    t3 = multiplicities(dj_r_matrix(3), 1)
    assert t3.mult == {(1,): 3}


def test_multiplicities_dj2_n2():
    t = multiplicities(dj_r_matrix(2), 2)
    assert t.mult == {(2,): 3, (1, 1): 1}
    assert t.sum_of_squares() == 10
    assert t.total_dimension() == 4


def test_multiplicities_dj2_n3():
    t = multiplicities(dj_r_matrix(2), 3)
    assert t.mult == {(3,): 4, (2, 1): 2, (1, 1, 1): 0}
    assert t.sum_of_squares() == 20
    assert t.total_dimension() == 8


def test_multiplicities_vanish_beyond_d_rows():
    t = multiplicities(dj_r_matrix(2), 4)
    for lam, m in t.mult.items():
        if len(lam) > 2:
            assert m == 0
    assert t.total_dimension() == 16


def test_multiplicities_dj3_n2():
    t = multiplicities(dj_r_matrix(3), 2)
    assert t.mult == {(2,): 6, (1, 1): 3}
    assert t.sum_of_squares() == 45
    assert t.total_dimension() == 9


def test_multiplicities_superflip_n2():
    t = multiplicities(super_flip(1, 1), 2)
    assert t.mult == {(2,): 2, (1, 1): 2}
    assert t.sum_of_squares() == 8


def test_multiplicities_refuse_specialized_operator():
    from fractions import Fraction

    op = dj_r_matrix(2).specialize(Fraction(3, 2))
    with pytest.raises(ValueError, match="specialized"):
        multiplicities(op, 2)


def test_multiplicity_table_str():
    t = multiplicities(dj_r_matrix(2), 2)
    assert "n=2" in str(t)


# ---------------------------------------------------------------------------
# centralizer dimensions


def test_centralizer_n1_is_full_matrix_algebra():
    assert centralizer_dimension(dj_r_matrix(2), 1) == 4
    assert centralizer_dimension(dj_r_matrix(3), 1) == 9


def test_centralizer_dj2():
    op = dj_r_matrix(2)
    assert centralizer_dimension(op, 2) == 10
    assert centralizer_dimension(op, 3) == 20


def test_centralizer_dj3_n2():
    assert centralizer_dimension(dj_r_matrix(3), 2) == 45


def test_centralizer_superflip_n2():
    assert centralizer_dimension(super_flip(1, 1), 2) == 8


def test_centralizer_matches_e_dimension():
    for op in (dj_r_matrix(2), flip_operator(2), super_flip(1, 1)):
        e = build_e(op)
        for n in (2, 3):
            assert centralizer_dimension(op, n) == graded_dimension(e, n)


# ---------------------------------------------------------------------------
# double centralizer


def test_hecke_span_dims_dj2():
    op = dj_r_matrix(2)
    assert hecke_span_dimension(op, 2) == 2
    # the sign isotypic block is dead at d=2, so 1 + 4 rather than 6
    assert hecke_span_dimension(op, 3) == 5


def test_bicommutant_dj2():
    op = dj_r_matrix(2)
    for n in (1, 2, 3):
        rep = bicommutant_check(op, n)
        assert rep.ok, str(rep)
        assert rep.hecke_span == rep.bicommutant


def test_bicommutant_flip2():
    rep = bicommutant_check(flip_operator(2), 3)
    assert rep.ok
    assert rep.hecke_span == 5


def test_bicommutant_report_str():
    rep = bicommutant_check(dj_r_matrix(2), 2)
    assert "pass" in str(rep)


# ---------------------------------------------------------------------------
# the three-route check


def test_schur_dimension_check_dj2():
    op = dj_r_matrix(2)
    e = build_e(op)
    for n, expected in ((2, 10), (3, 20)):
        rep = schur_dimension_check(op, n, e_algebra=e)
        assert rep.ok, str(rep)
        assert rep.sum_of_squares == rep.centralizer == rep.e_dimension == expected


def test_schur_dimension_check_superflip():
    rep = schur_dimension_check(super_flip(1, 1), 2)
    assert rep.ok
    assert rep.sum_of_squares == 8
    assert "pass" in str(rep)
