"""Translates, almost split sequences, knitting, component taxonomy."""

import pytest

from arknit import (
    VertexSet,
    almost_split_sequence,
    ar_category_kind,
    classify_component,
    coker_proj,
    coxeter_transform,
    dim_vector,
    injective_at,
    is_pseudo_projective,
    iso_test,
    knit,
    minimal_left_almost_split_from,
    minimal_right_almost_split_into,
    min_proj_presentation,
    projective_at,
    simple_at,
    tau,
    tau_inv,
    thin_rep,
    verify_almost_split,
    verify_exact,
    ext_space,
    ext_class_to_ses,
    split_ses,
)

from oracles import (
    an_almost_split,
    an_ar_arrows,
    an_dims,
    an_intervals,
    an_is_injective,
    an_is_projective,
    an_tau,
    coxeter_images,
    nqop_truncation,
)


def interval_rep(q, iv):
    a, b = iv
    return thin_rep(q, VertexSet.make(q, tuple(range(a, b + 1)), ()))


# ---------------------------------------------------------------------------
# translates against the interval model


def test_tau_matches_interval_model(a5):
    verts = (1, 2, 3, 4, 5)
    for iv in an_intervals(5):
        if an_is_projective(iv, 5):
            continue
        t = tau(interval_rep(a5, iv))
        assert dim_vector(t, verts) == an_dims(an_tau(iv, 5), 5)


def test_tau_inv_matches_interval_model(a5):
    verts = (1, 2, 3, 4, 5)
    for iv in an_intervals(5):
        if an_is_injective(iv, 5):
            continue
        a, b = iv
        t = tau_inv(interval_rep(a5, iv))
        assert dim_vector(t, verts) == an_dims((a - 1, b - 1), 5)


def test_tau_roundtrip(a5):
    for iv in an_intervals(5):
        if an_is_projective(iv, 5):
            continue
        m = interval_rep(a5, iv)
        back = tau_inv(tau(m))
        assert iso_test(m, back) is not None


def test_tau_frozen_values(a3):
    assert dim_vector(tau(simple_at(a3, 2)), (1, 2, 3)) == (0, 0, 1)
    assert dim_vector(tau_inv(simple_at(a3, 2)), (1, 2, 3)) == (1, 0, 0)
    with pytest.raises(ValueError, match="projective"):
        tau(projective_at(a3, 1))
    with pytest.raises(ValueError, match="injective"):
        tau_inv(injective_at(a3, 1))


def test_tau_of_presented_cokernel(a3):
    # coker(P_3 -> P_1) evaluates like I_2; its translate is P_2
    pres = min_proj_presentation(injective_at(a3, 2))
    x = coker_proj(pres.pm)
    t = tau(x)
    assert iso_test(t, projective_at(a3, 2)) is not None


def test_tau_roundtrip_on_zigzag_window(zig):
    m = thin_rep(zig, VertexSet.make(zig, (0, 1, 2, 3), ()))
    back = tau_inv(tau(m))
    assert iso_test(m, back) is not None


def test_pseudo_projective(ladder, line):
    # tau of the simple at b_1 spreads along the whole a-ray
    assert is_pseudo_projective(simple_at(ladder, ("b", 1)))
    assert not is_pseudo_projective(simple_at(line, 0))


# ---------------------------------------------------------------------------
# almost split sequences


def test_ass_matches_interval_model(a5):
    verts = (1, 2, 3, 4, 5)
    for iv in an_intervals(5):
        if an_is_projective(iv, 5):
            continue
        ses = almost_split_sequence(interval_rep(a5, iv))
        sub_iv, mids, _ = an_almost_split(iv, 5)
        assert dim_vector(ses.sub, verts) == an_dims(sub_iv, 5)
        want_mid = tuple(
            sum(an_dims(m, 5)[i] for m in mids) for i in range(5))
        assert dim_vector(ses.middle, verts) == want_mid
        assert verify_exact(ses, verts)["exact"]


def test_ass_kronecker_middle(kron):
    ses = almost_split_sequence(tau_inv(projective_at(kron, 2)))
    assert dim_vector(ses.sub, (1, 2)) == (0, 1)
    assert dim_vector(ses.middle, (1, 2)) == (2, 4)
    assert dim_vector(ses.quot, (1, 2)) == (2, 3)


def test_verify_almost_split_accepts(a3):
    ses = almost_split_sequence(simple_at(a3, 2))
    battery = [projective_at(a3, a) for a in (1, 2, 3)] + \
        [injective_at(a3, a) for a in (1, 2)] + [simple_at(a3, 2)]
    report = verify_almost_split(ses, battery)
    assert report.passed
    assert report.exact and report.non_split


def test_verify_almost_split_rejects_split(a3):
    ses = split_ses(simple_at(a3, 3), simple_at(a3, 2))
    report = verify_almost_split(ses, [projective_at(a3, 2)])
    assert not report.passed
    assert not report.non_split


def test_verify_almost_split_rejects_wrong_nonsplit(a3):
    # 0 -> S_3 -> P_1 -> I_2 -> 0 is exact and non-split but not almost split
    ecb = ext_space(injective_at(a3, 2), simple_at(a3, 3))
    assert ecb.dimension == 1
    ses = ext_class_to_ses(ecb, (1,))
    assert dim_vector(ses.middle, (1, 2, 3)) == (1, 1, 1)
    battery = [simple_at(a3, 2), projective_at(a3, 2)]
    report = verify_almost_split(ses, battery)
    assert report.exact and report.non_split
    assert not report.passed
    assert report.lift_failures or report.factor_failures


# ---------------------------------------------------------------------------
# one-sided minimal almost split maps


def test_right_almost_split_into_projective(a3, kron, line):
    g = minimal_right_almost_split_into(projective_at(a3, 1))
    assert dim_vector(g.src, (1, 2, 3)) == (0, 1, 1)  # rad P_1 = P_2
    g2 = minimal_right_almost_split_into(projective_at(kron, 1))
    assert dim_vector(g2.src, (1, 2)) == (0, 2)  # rad P_1 = P_2 + P_2
    g3 = minimal_right_almost_split_into(projective_at(line, 0))
    assert iso_test(g3.src, projective_at(line, -1)) is not None


def test_left_almost_split_from_injective(a3, line):
    g = minimal_left_almost_split_from(injective_at(a3, 3))
    assert dim_vector(g.dst, (1, 2, 3)) == (1, 1, 0)  # I_3 / soc = I_2
    g2 = minimal_left_almost_split_from(injective_at(line, 0))
    assert iso_test(g2.dst, injective_at(line, 1)) is not None


# ---------------------------------------------------------------------------
# knitting


def test_knit_a3_full_component(a3):
    comp = knit(projective_at(a3, 3), 6)
    assert len(comp.nodes) == 6
    dminfo = sorted(dim_vector(n.rep, (1, 2, 3)) for n in comp.nodes)
    want = sorted(an_dims(iv, 3) for iv in an_intervals(3))
    assert dminfo == want
    assert len(comp.tau_links) == 3
    assert sum(comp.arrows.values()) == len(an_ar_arrows(3))


def test_knit_kronecker_chain(kron):
    comp = knit(projective_at(kron, 2), 5)
    assert len(comp.nodes) == 6
    dims = sorted(dim_vector(n.rep, (1, 2)) for n in comp.nodes)
    assert dims == [(k, k + 1) for k in range(6)]
    assert all(mult == 2 for mult in comp.arrows.values())
    assert len(comp.arrows) == 5
    assert len(comp.tau_links) == 4


def test_knit_ray_in_counts(ray_in):
    comp = knit(projective_at(ray_in, 0), 6)
    nodes, arrows, taus = nqop_truncation(6)
    assert len(comp.nodes) == len(nodes)
    assert sum(comp.arrows.values()) == len(arrows)
    assert len(comp.tau_links) == len(taus)


def test_knit_blocked_for_doubly_infinite(line, line_full):
    comp = knit(thin_rep(line, line_full), 3)
    assert len(comp.nodes) == 1
    assert comp.nodes[0].status == "blocked"
    hyp = classify_component(comp)
    assert hyp.tag == "TrivialSingleton"


def test_knit_rejects_bad_seed(zig):
    region = VertexSet.make(zig, (), [("inf", "even", 0), ("inf", "odd", 0)])
    with pytest.raises(ValueError):
        knit(thin_rep(zig, region), 2)


# ---------------------------------------------------------------------------
# component taxonomy and the category-level kind


def test_component_tags(a3, ray_in, line, line_full):
    assert classify_component(knit(projective_at(a3, 3), 6)).tag == \
        "Preprojective-NQop"
    assert classify_component(knit(projective_at(ray_in, 0), 4)).tag == \
        "Preprojective-NQop"
    assert classify_component(knit(simple_at(line, 0), 4)).tag == \
        "ZAinfinity"
    assert classify_component(knit(injective_at(line, 0), 2)).tag == \
        "Preinjective-NminusQop"


def test_ar_category_kind(a3, kron, zig, ray_in, ray_out, line, ladder):
    assert ar_category_kind(a3) == "both"
    assert ar_category_kind(kron) == "both"
    assert ar_category_kind(zig) == "both"
    assert ar_category_kind(ray_in) == "left"
    assert ar_category_kind(ray_out) == "right"
    assert ar_category_kind(line) == "neither"
    assert ar_category_kind(ladder) == "neither"


# ---------------------------------------------------------------------------
# Coxeter cross-check


def test_coxeter_kronecker_frozen(kron):
    assert coxeter_transform(kron, (0, 1), inverse_transform=True) == (2, 3)
    assert coxeter_transform(kron, (2, 3)) == (0, 1)
    assert coxeter_transform(kron, (1, 2)) == (-1, 0)


def test_coxeter_matches_oracle(a5, kron):
    for q in (a5, kron):
        vs = sorted(q.vertices)
        arrows = [(a.src, a.dst, a.label) for a in q.arrows]
        for dims in ((1, 0, 1, 0, 1)[:len(vs)], (2, 3, 1, 1, 2)[:len(vs)]):
            assert coxeter_transform(q, dims) == \
                coxeter_images(vs, arrows, dims)
            assert coxeter_transform(q, dims, inverse_transform=True) == \
                coxeter_images(vs, arrows, dims, inverse=True)


def test_coxeter_tracks_tau_inv_chain(kron):
    m = projective_at(kron, 2)
    dims = dim_vector(m, (1, 2))
    for _ in range(4):
        m = tau_inv(m)
        dims = coxeter_images((1, 2),
                              [(a.src, a.dst, a.label) for a in kron.arrows],
                              dims, inverse=True)
        assert dim_vector(m, (1, 2)) == dims
