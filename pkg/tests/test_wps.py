"""Tests for the weighted-projective hypersurface analyzer."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from logsurf.wps import (
    COEFF_MONOMIALS,
    FLAGSHIP_DEGREE,
    FLAGSHIP_WEIGHTS,
    AllZero,
    BadWeights,
    NotHomogeneous,
    Transform,
    WeightedPoly,
    Weights,
    analyze_origin,
    apply_transform,
    chart_poly,
    check_homogeneous,
    classify_hypersurface,
    coeffs_to_poly,
    coordinate_membership,
    format_poly,
    format_poly_human,
    hilbert_series,
    monomial_basis,
    node_only_certificate,
    normal_form,
    parse_poly,
    parse_poly_human,
    poly_to_coeffs,
    projective_equivalence,
    standard_member,
    wps_volume,
)

from _properties import (
    basis_vs_slow_enumeration,
    hilbert_vs_counting,
    node_fuzz,
    normal_form_roundtrip,
    volume_identity,
)


# --- weights and homogeneity -------------------------------------------------


def test_weights_gate():
    Weights((6, 11, 25, 43))  # fine
    with pytest.raises(BadWeights):
        Weights((6, 11, 14, 21))  # 6 and 14 share 2
    with pytest.raises(BadWeights):
        Weights((0, 1, 5, 7))
    with pytest.raises(BadWeights):
        Weights.of((2, 3, 5))  # only three


def test_check_homogeneous_degrees():
    w = (6, 11, 25, 43)
    assert check_homogeneous({(0, 0, 0, 2): F(1)}, w) == 86
    assert check_homogeneous({(1, 1, 0, 0): F(1)}, w) == 17
    with pytest.raises(NotHomogeneous):
        check_homogeneous({(0, 0, 0, 2): F(1), (1, 0, 0, 0): F(1)}, w)
    with pytest.raises(ValueError):
        check_homogeneous({}, w)


def test_monomial_basis_flagship():
    basis = monomial_basis(FLAGSHIP_WEIGHTS, FLAGSHIP_DEGREE)
    assert len(basis) == 6
    assert basis == sorted(basis)  # lexicographic
    assert set(basis) == set(COEFF_MONOMIALS)


def test_monomial_basis_small_degrees():
    assert monomial_basis(FLAGSHIP_WEIGHTS, 1) == []
    assert monomial_basis(FLAGSHIP_WEIGHTS, 6) == [(1, 0, 0, 0)]
    assert monomial_basis(FLAGSHIP_WEIGHTS, 0) == [(0, 0, 0, 0)]


def test_weighted_poly_build():
    p = WeightedPoly.build((6, 11, 25, 43), {(0, 0, 0, 2): F(3), (6, 0, 2, 0): F(0)})
    assert p.degree == 86
    assert p.coeff((0, 0, 0, 2)) == 3
    assert p.coeff((6, 0, 2, 0)) == 0  # zero terms are dropped
    with pytest.raises(NotHomogeneous):
        WeightedPoly.build((6, 11, 25, 43), {(0, 0, 0, 2): F(1), (0, 0, 0, 1): F(1)})


def test_coeff_vector_round_trip():
    coeffs = (F(1), F(0), F(2), F(-1, 2), F(1), F(3))
    assert poly_to_coeffs(coeffs_to_poly(coeffs)) == coeffs
    with pytest.raises(AllZero):
        coeffs_to_poly((0, 0, 0, 0, 0, 0))


# --- normal form -------------------------------------------------------------


def test_normal_form_already_normal():
    nf = normal_form((1, 0, 1, 0, 1, 1))
    assert nf.eps == (1, 0, 1, 1)
    assert (nf.s, nf.t) == (0, 1)
    assert nf.transform == Transform((F(1), F(1), F(1), F(1)), F(0), F(1))


def test_normal_form_shears_away_mixed_term():
    nf = normal_form((1, 2, 1, 0, 1, 1))
    assert nf.eps == (1, 0, 1, 1)
    assert nf.transform.d == -1
    assert (nf.s, nf.t) == (-1, 1)
    # the recorded transform really does reproduce the input
    got = apply_transform((F(1), F(2), F(1), F(0), F(1), F(1)), nf.transform)
    assert got == tuple(nf.transform.lam * c for c in nf.coeffs)


def test_normal_form_degenerate_vertex_case():
    nf = normal_form((0, 1, 1, 1, 1, 1))
    assert nf.eps[0] == 0 and nf.eps[1] == 1


def test_normal_form_rejects_zero():
    with pytest.raises(AllZero):
        normal_form((0, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        normal_form((1, 2, 3))


def test_apply_transform_shear_spill():
    # x3 -> x3 + x2*x0^3 sends m1 into m2 and m4.
    tr = Transform((F(1), F(1), F(1), F(1)), F(1), F(1))
    out = apply_transform((F(1), F(0), F(0), F(0), F(0), F(0)), tr)
    assert out == (F(1), F(2), F(0), F(1), F(0), F(0))


# --- charts ------------------------------------------------------------------


def test_chart_poly_flagship_example():
    member = standard_member((1, 0, 1, 1), 0, 1)
    chart = chart_poly(member, 0)  # variables x1, x2, x3
    assert chart == {
        (0, 0, 2): F(1),  # x3^2
        (1, 3, 0): F(1),  # x2^3 * x1
        (5, 1, 0): F(1),  # x2 * x1^5
        (4, 0, 0): F(1),  # x1^4
    }
    with pytest.raises(ValueError):
        chart_poly(member, 4)


def test_chart_poly_keeps_every_term():
    # Homogeneity with positive weights means no two terms can collide
    # after substituting x_i = 1, so charts preserve the term count.
    member = standard_member((1, 0, 1, 1), F(1, 2), -3)
    for i in range(4):
        assert len(chart_poly(member, i)) == len(member.terms)


def test_analyze_origin_off_surface():
    d = analyze_origin({(0, 0, 0): F(2), (1, 0, 0): F(1)}, chart_index=3)
    assert not d.on_surface
    assert d.multiplicity == 0


def test_analyze_origin_dossiers_for_flagship_member():
    member = standard_member((1, 0, 1, 1), 0, 1)
    dossiers = [analyze_origin(chart_poly(member, i), i) for i in range(4)]
    # chart 0: double point with corank-2 quadratic part; undecided here
    assert dossiers[0].multiplicity == 2
    assert dossiers[0].quadratic_rank == 1
    assert dossiers[0].inconclusive and not dossiers[0].a1
    # chart 1: ordinary node
    assert dossiers[1].a1 and dossiers[1].quadratic_rank == 3
    # chart 2: smooth point
    assert dossiers[2].smooth
    # chart 3: not on the surface at all
    assert not dossiers[3].on_surface


def test_analyze_origin_high_multiplicity():
    member = standard_member((0, 1, 1, 1), 1, 1)
    d = analyze_origin(chart_poly(member, 3), 3)
    assert d.multiplicity == 4
    assert d.mult_ge_4_not_lc


def test_analyze_origin_triple_point_undecided():
    d = analyze_origin({(3, 0, 0): F(1), (0, 3, 0): F(1)}, chart_index=0)
    assert d.multiplicity == 3
    assert d.inconclusive


def test_analyze_origin_rejects_zero_poly():
    with pytest.raises(ValueError):
        analyze_origin({})


# --- node-only certificates --------------------------------------------------


@pytest.mark.parametrize("st", [(1, 0), (1, 1)])
def test_node_only_certifies_klt_members(st):
    member = standard_member((1, 0, 1, 1), *st)
    for i in (0, 1, 2):
        assert node_only_certificate(member, i) == "certified"


def test_node_only_detects_square_factor():
    bad = WeightedPoly.build((1, 1, 1, 1), {(0, 2, 2, 0): F(1)})
    assert node_only_certificate(bad, 0) == "failed"


def test_node_only_chart_validation():
    member = standard_member((1, 0, 1, 1), 1, 1)
    with pytest.raises(ValueError):
        node_only_certificate(member, 3)


# --- global invariants -------------------------------------------------------


def test_wps_volume_values():
    assert wps_volume((6, 11, 25, 43), 86) == F(1, 825)
    assert wps_volume((6, 11, 14, 21), 42, twist=11) == F(1, 462)
    assert wps_volume((6, 11, 25, 43), 85) == 0


def test_hilbert_series_prefix():
    h = hilbert_series((6, 11, 25, 43), 86, 12)
    assert h[0] == 1
    assert h[1:6] == [0, 0, 0, 0, 0]
    assert h[6] == 1
    assert h[11] == 1 and h[12] == 1
    with pytest.raises(ValueError):
        hilbert_series((6, 11, 25, 43), 86, -1)


def test_coordinate_membership():
    member = standard_member((1, 0, 1, 1), 0, 1)
    assert coordinate_membership(member) == frozenset({0, 1, 2})
    # adding a pure x0 power term would evict P0
    p = WeightedPoly.build((1, 1, 1, 1), {(2, 0, 0, 0): F(1), (0, 1, 1, 0): F(1)})
    assert coordinate_membership(p) == frozenset({1, 2, 3})


# --- classification ----------------------------------------------------------

LEGAL_EPS = [
    (e1, e2, e3, e4)
    for e1 in (0, 1)
    for e2 in (0, 1)
    for e3 in (0, 1)
    for e4 in (0, 1)
    if not (e1 and e2)
]


def test_classification_grid():
    assert len(LEGAL_EPS) == 12
    for st in ((0, 0), (0, 1), (1, 0), (1, 1)):
        for eps in LEGAL_EPS:
            if eps == (0, 0, 0, 0) and st == (0, 0):
                continue  # no polynomial at all
            c = classify_hypersurface(eps, *st)
            want_lc = eps == (1, 0, 1, 1) and st != (0, 0)
            assert c.is_lc == want_lc, (eps, st)
            assert c.is_klt == (want_lc and st[0] != 0), (eps, st)


def test_classification_records_undecided_facts():
    c = classify_hypersurface((1, 0, 1, 1), 0, 1)
    assert c.is_lc and not c.is_klt
    assert any("chart 0" in note for note in c.deferred)
    klt = classify_hypersurface((1, 0, 1, 1), 1, 1)
    assert klt.is_klt


def test_classification_rejects_bad_eps():
    with pytest.raises(ValueError):
        classify_hypersurface((1, 1, 0, 0), 1, 1)
    with pytest.raises(ValueError):
        classify_hypersurface((1, 0, 2, 0), 1, 1)


def test_projective_equivalence():
    assert projective_equivalence((1, 2), (2, 4))
    assert projective_equivalence((F(1, 3), 0), (7, 0))
    assert not projective_equivalence((1, 0), (1, 1))
    with pytest.raises(ValueError):
        projective_equivalence((0, 0), (1, 1))


# --- text formats ------------------------------------------------------------


def test_parse_format_round_trip():
    p = standard_member((1, 0, 1, 1), F(1, 2), -3)
    assert parse_poly(format_poly(p)).terms == p.terms


def test_parse_poly_errors():
    with pytest.raises(ValueError):
        parse_poly("1 0 0 0 2\n")  # missing header
    with pytest.raises(ValueError):
        parse_poly("weights 6 11 25 43\n1 0 0 2\n")  # short term line


def test_parse_poly_human():
    p = parse_poly_human("x3^2 + x2^3*x1 + x2*x1^5*x0 + x1^4*x0^7", (6, 11, 25, 43))
    assert poly_to_coeffs(p) == (F(1), F(0), F(1), F(0), F(1), F(1))
    q = parse_poly_human("2*x0^2 - 1/2*x1*x2", (1, 1, 1, 1))
    assert q.coeff((2, 0, 0, 0)) == 2
    assert q.coeff((0, 1, 1, 0)) == F(-1, 2)
    with pytest.raises(ValueError):
        parse_poly_human("x9^2", (1, 1, 1, 1))


def test_format_poly_human_round_trip():
    p = standard_member((1, 0, 1, 1), F(-1, 2), 3)
    text = format_poly_human(p)
    assert parse_poly_human(text, FLAGSHIP_WEIGHTS).terms == p.terms


# --- randomized properties ---------------------------------------------------


def test_normal_form_round_trip_100():
    assert normal_form_roundtrip(97, 100) == 100


def test_basis_matches_slow_enumeration():
    assert basis_vs_slow_enumeration((6, 11, 25, 43), 100) > 0


def test_hilbert_matches_counting():
    assert hilbert_vs_counting((6, 11, 25, 43), 86, 200) == 201


def test_volume_identity_random():
    assert volume_identity(4242, 50) == 50


def test_node_recognition_fuzz():
    assert node_fuzz(1729, 50) == 50