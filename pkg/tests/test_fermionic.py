from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpchar import (
    UnsoundTruncation,
    build_quadratic_form,
    check_positive_definite,
    fermionic_character,
    make_algebra,
    make_weight,
    minimal_energy,
    verify_character,
)
from qpchar.fermionic import QuadraticForm
from roots import positive_roots

B2, B3, C3, F4, G2 = (make_algebra(*a) for a in [("B", 2), ("B", 3), ("C", 3), ("F4", 4), ("G2", 2)])
h = Fraction(1, 2)


def test_b2_form():
    qf = build_quadratic_form(make_weight(B2, 1))
    # variables (a; b1, b2)
    assert qf.matrix == ((1, -h, -h), (-h, 1, 0), (-h, 0, 1))
    assert qf.linear == (0, 0, 0)


def test_g2_form():
    qf = build_quadratic_form(make_weight(G2, 0, 1, 2))
    assert qf.matrix[0] == (1, -h, -h, -h)
    assert [row[1:] for row in qf.matrix[1:]] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    # linear part sits on r_2^(3) since the threshold is 2
    assert qf.linear == (0, 0, 0, 1)


def test_color_one_block_is_identity():
    qf = build_quadratic_form(make_weight(C3, 2))
    block = [row[:2] for row in qf.matrix[:2]]
    assert block == [(1, 0), (0, 1)]


WEIGHTS = [make_weight(B3, 1, 1, 3), make_weight(C3, 1, 1, 2), make_weight(F4, 2), make_weight(G2, 1, 1, 2),
           make_weight(B2, 0, 3, 1)]


@st.composite
def weight_and_dual(draw):
    w = draw(st.sampled_from(WEIGHTS))
    dual = tuple(tuple(sorted(draw(st.lists(st.integers(0, 6), min_size=c, max_size=c)), reverse=True))
                 for c in w.k_alpha)
    return w, dual


@given(weight_and_dual())
@settings(max_examples=300)
def test_form_reproduces_minimal_energy(wd):
    w, dual = wd
    qf = build_quadratic_form(w)
    flat = [x for d in dual for x in d]
    assert qf.evaluate(flat) == minimal_energy(w, dual)


def test_identity_form_bound_is_one():
    qf = QuadraticForm((3,), ((1, 0, 0), (0, 1, 0), (0, 0, 1)), (0, 0, 0))
    assert check_positive_definite(qf) == 1


def test_b2_bound_below_true_eigenvalue():
    qf = build_quadratic_form(make_weight(B2, 1))
    lam = check_positive_definite(qf)
    true = np.linalg.eigvalsh(np.array(qf.matrix, dtype=float)).min()
    assert 0 < lam <= true
    assert float(lam) > 0.99 * true


def test_non_pd_rejected():
    qf = QuadraticForm((2,), ((-1, 0), (0, 1)), (0, 0))
    with pytest.raises(UnsoundTruncation):
        check_positive_definite(qf)


def test_literal_form_is_degenerate_for_c3_level_two():
    w = make_weight(C3, 2)
    with pytest.raises(UnsoundTruncation):
        check_positive_definite(build_quadratic_form(w, "literal"))
    # a nonzero dual-charge-type with literal exponent 0
    dual = ((2, 0), (2, 2, 0, 0), (1, 1, 1, 1))
    assert minimal_energy(w, dual, "literal") == 0
    assert minimal_energy(w, dual) == 4


@pytest.mark.parametrize("weight", WEIGHTS)
def test_degree_zero_is_one(weight):
    s = fermionic_character(weight, 0)
    assert dict(s.terms) == {(0, (0,) * weight.algebra.rank): 1}


def test_b2_vacuum_degree_one():
    # D = (1; 0,0), (0; 1,0), (1; 1,0), (1; 1,1), each with E_min = 1
    s = fermionic_character(make_weight(B2, 1), 1)
    assert s.degree_slice(1) == {(1, 0): 1, (0, 1): 1, (1, 1): 1, (1, 2): 1}


def test_b_lambda1_has_no_pure_y1_at_q1():
    for alg in (B2, B3):
        s = fermionic_character(make_weight(alg, 0, 1, 1), 2)
        e1 = (1,) + (0,) * (alg.rank - 1)
        # r_1 = (1): 1 + linear term 1, so the lone color-1 particle first shows at q^2
        assert s[(1, e1)] == 0
        assert s[(2, e1)] == 1


@pytest.mark.parametrize("family", [("F4", 4), ("G2", 2), ("C", 3)])
def test_vacuum_degree_one_positive_roots(family):
    s = fermionic_character(make_weight(make_algebra(*family), 1), 1)
    assert s.degree_slice(1) == {tuple(b): 1 for b in positive_roots(*family)}


@pytest.mark.parametrize("weight", WEIGHTS)
def test_radius_doubling_changes_nothing(weight):
    assert fermionic_character(weight, 7) == fermionic_character(weight, 7, radius_factor=2)


def test_verify_examples():
    assert verify_character(make_weight(G2, 1), 0).status == "equal"
    report = verify_character(make_weight(B2, 1), 10)
    assert report.status == "equal" and report.first_mismatch is None


def test_verify_literal_reports_first_mismatch():
    report = verify_character(make_weight(C3, 2), 10, convention="literal")
    assert report.status == "mismatch"
    fm = report.first_mismatch
    assert (fm["q"], fm["colors"], fm["enumerated"], fm["fermionic"]) == (0, [2, 4, 4], 0, 1)
    assert "literal" in report.cases[0].truncation


def test_literal_agrees_where_ranges_coincide():
    # B_l and G2 interfaces never have a short color i-1
    for w in (make_weight(B3, 1, 1, 3), make_weight(G2, 2)):
        assert verify_character(w, 6, convention="literal").status == "equal"
