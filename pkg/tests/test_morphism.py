"""Morphisms, kernels/cokernels, short exact sequences, gluing."""

import random

from arknit import (
    QQ,
    Mat,
    VertexSet,
    cokernel,
    dim_vector,
    equal_on,
    glue_ses,
    hom_space,
    identity_morphism,
    image,
    injective_at,
    kernel,
    morphism_from_components,
    naturality_defect,
    projective_at,
    restriction_ses,
    simple_at,
    split_ses,
    standard_ext,
    thin_rep,
    verify_exact,
    zero_morphism,
)

from conftest import random_fd_rep


def _one(field=QQ):
    return Mat.from_rows(field, [[1]])


def test_identity_and_zero(a3):
    p = projective_at(a3, 1)
    f = identity_morphism(p)
    z = zero_morphism(p, p)
    for v in (1, 2, 3):
        assert f.component(v).entries == ((QQ.one,),)
        assert z.component(v).is_zero()
    assert naturality_defect(f, (1, 2, 3))
    assert f.sub(f).is_zero_on((1, 2, 3))


def test_radical_inclusion_kernel_coker_image(a3):
    p1, p2 = projective_at(a3, 1), projective_at(a3, 2)
    incl = morphism_from_components(
        p2, p1, {1: Mat.zeros(QQ, 1, 0), 2: _one(), 3: _one()})
    assert naturality_defect(incl, (1, 2, 3))

    k, ki = kernel(incl)
    assert dim_vector(k, (1, 2, 3)) == (0, 0, 0)
    c, cp = cokernel(incl)
    assert dim_vector(c, (1, 2, 3)) == (1, 0, 0)  # coker = top = S_1
    im, ii = image(incl)
    assert dim_vector(im, (1, 2, 3)) == (0, 1, 1)
    assert naturality_defect(ki, (1, 2, 3))
    assert naturality_defect(cp, (1, 2, 3))
    assert naturality_defect(ii, (1, 2, 3))


def test_rank_nullity_on_random_homs(a3, kron):
    rng = random.Random(3)
    for q, verts in ((a3, (1, 2, 3)), (kron, (1, 2))):
        for _ in range(6):
            m = random_fd_rep(q, rng, verts)
            n = random_fd_rep(q, rng, verts)
            h = hom_space(m, n)
            for f in h.basis:
                k, _ = kernel(f)
                im, _ = image(f)
                c, _ = cokernel(f)
                for v in verts:
                    assert k.dim(v) + im.dim(v) == m.dim(v)
                    assert c.dim(v) == n.dim(v) - im.dim(v)


def test_composition_order(a3):
    # f.then(g) applies f first
    p1 = projective_at(a3, 1)
    s1 = simple_at(a3, 1)
    proj = morphism_from_components(
        p1, s1, {1: _one(), 2: Mat.zeros(QQ, 0, 1), 3: Mat.zeros(QQ, 0, 1)})
    back = zero_morphism(s1, p1)
    comp = proj.then(back)
    assert comp.src is p1 and comp.dst is p1
    assert comp.is_zero_on((1, 2, 3))


def test_glue_ses_realizes_nonsplit_extension(a3):
    (a12,) = [a for a in a3.out_arrows(1) if a.dst == 2]
    sub, quot = simple_at(a3, 2), simple_at(a3, 1)
    mid, ses = glue_ses(sub, quot, ((a12, _one()),))
    assert dim_vector(mid, (1, 2, 3)) == (1, 1, 0)
    assert equal_on(mid, injective_at(a3, 2), (1, 2, 3))
    rep = verify_exact(ses, (1, 2, 3))
    assert rep["exact"]
    assert ses.cocycle_at(a12).entries == ((QQ.one,),)


def test_split_ses_middle_is_sum(a3):
    sub, quot = simple_at(a3, 2), simple_at(a3, 1)
    ses = split_ses(sub, quot)
    assert dim_vector(ses.middle, (1, 2, 3)) == (1, 1, 0)
    rep = verify_exact(ses, (1, 2, 3))
    assert rep["exact"]
    (a12,) = [a for a in a3.out_arrows(1) if a.dst == 2]
    assert ses.middle.mat(a12).is_zero()


def test_restriction_ses(a3):
    p1 = projective_at(a3, 1)
    omega = VertexSet.make(a3, (2, 3), ())
    comp = VertexSet.make(a3, (1,), ())
    ses = restriction_ses(p1, omega, comp)
    assert dim_vector(ses.sub, (1, 2, 3)) == (0, 1, 1)
    assert dim_vector(ses.quot, (1, 2, 3)) == (1, 0, 0)
    assert verify_exact(ses, (1, 2, 3))["exact"]


def test_standard_ext_on_all_ones_line(line, line_full):
    m = thin_rep(line, line_full)
    omega, ses = standard_ext(m)
    assert omega.tails == (("neg", "v", 0),)
    window = tuple(range(-4, 5))
    assert verify_exact(ses, window)["exact"]
    assert naturality_defect(ses.incl, window)
    assert naturality_defect(ses.proj, window)


def test_morphism_linear_algebra(a3):
    p = projective_at(a3, 1)
    f = identity_morphism(p)
    g = f.add(f).scale(QQ.of(3))
    for v in (1, 2, 3):
        assert g.component(v).entries == ((QQ.of(6),),)
    assert g.sub(g).is_zero_on((1, 2, 3))
    assert f.equal_on(identity_morphism(p), (1, 2, 3))
    assert f.is_invertible_on((1, 2, 3))
