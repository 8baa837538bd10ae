"""Minimal projective presentations and minimal injective copresentations.

The projective presentation of a finitely presented object is built from its
top: generators are lifted top basis vectors, so the cover is minimal by
construction and the relation matrix has radical entries (no trivial paths).
The injective copresentation is obtained by running the same construction on
the pointwise dual over the opposite quiver and dualizing back.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .linalg import Mat, coker_projection, rank
from .morphism import Morphism
from .quiver import Arrow, Path, QuiverBase, vkey
from .rep import (BudgetError, DirectSumRep, InjRep, PathMatrix, ProjRep, Rep,
                  ZeroRep, classify_membership, direct_sum, dualize,
                  incoming_stack, path_matrix, proj_sum_basis, support_exact,
                  zero_rep)


@dataclass
class Presentation:
    """side 'proj': 0 -> (sum over pm.domain) -> (sum over pm.codomain) -> obj -> 0.
    side 'inj':  0 -> obj -> (sum over pm.domain) -> (sum over pm.codomain).
    cover: the surjection onto obj (proj side) / the embedding of obj (inj side).
    gens: one (vertex, column) pair per summand of the cover term; on the proj
    side columns are lifted top basis vectors, on the inj side they are the
    socle functionals expressed in the evaluation basis.
    """

    obj: Rep
    pm: PathMatrix
    side: str
    sum_rep: Rep
    cover: Morphism
    gens: tuple
    minimal: bool
    certificate: dict


def _sum_of_proj(q, field, verts) -> Rep:
    if not verts:
        return zero_rep(q, field)
    return direct_sum(*[ProjRep(q, field, v) for v in verts])


def _sum_of_inj(q, field, verts) -> Rep:
    if not verts:
        return zero_rep(q, field)
    return direct_sum(*[InjRep(q, field, v) for v in verts])


def top_generators(m: Rep, region, deep_bands):
    """Lifted top basis: list of (vertex, coordinate column in m(v)).

    deep_bands are vertices where the top must vanish (certifies that the
    region caught all of it); a nonzero top there raises BudgetError.
    """
    F = m.field
    gens = []
    for v in sorted(region, key=vkey):
        inc, _ = incoming_stack(m, v)
        _, free = coker_projection(inc)
        for r in free:
            col = Mat(F, m.dim(v), 1,
                      tuple((F.one,) if i == r else (F.zero,)
                            for i in range(m.dim(v))))
            gens.append((v, col))
    for v in deep_bands:
        inc, _ = incoming_stack(m, v)
        if rank(inc) != m.dim(v):
            raise BudgetError(
                f"top does not vanish at {m.quiver.vertex_str(v)}; "
                f"object is not finitely presented over this window")
    return gens


def _cover_from_gens(m: Rep, gens):
    """(P0 rep, pi: P0 -> m) with pi sending the i-th generator path basis to
    m evaluated along the path applied to the generator vector."""
    q, F = m.quiver, m.field
    verts = tuple(v for (v, _) in gens)
    p0 = _sum_of_proj(q, F, verts)

    def rule(w):
        basis = proj_sum_basis(q, verts, w)
        cols = []
        for (i, p) in basis:
            cols.append(tuple(m.mat_path(p).mul(gens[i][1]).col(0)))
        rows = tuple(tuple(c[r] for c in cols) for r in range(m.dim(w)))
        return Mat(F, m.dim(w), len(basis), rows)

    return p0, verts, Morphism(p0, m, rule=rule, label="cover")


def _probe_and_deep(m: Rep, cert, pad=1):
    supp = support_exact(m, cert.profiles)
    depth = max([p.cutoff for p in cert.profiles], default=0)
    region = supp.members(depth + pad)
    deep = []
    for p in cert.profiles:
        for r in p.rays:
            if r.dim > 0:
                end = m.quiver.end(r.eid)
                deep.append(end.vertex(r.rid, depth + pad + 1))
                deep.append(end.vertex(r.rid, depth + pad + 2))
    return region, deep


def min_proj_presentation(x: Rep, budget: Optional[int] = None,
                          cert=None) -> Presentation:
    q, F = x.quiver, x.field
    if cert is None:
        cert = classify_membership(x, budget)
    if cert.verdict not in ("fp", "fd"):
        raise ValueError(
            f"minimal projective presentation needs an fp object, got {cert.verdict}")
    region, deep = _probe_and_deep(x, cert)
    gens = top_generators(x, region, deep)
    p0, p0_verts, cover = _cover_from_gens(x, gens)

    # surjectivity of the cover over the probe (tails follow by stability)
    for v in list(region) + deep:
        if rank(cover.component(v)) != x.dim(v):
            raise ValueError("top generators do not generate; object not fp")

    from .rep import KernelOfRep
    k = KernelOfRep(cover)
    kcert = classify_membership(k, budget)
    kregion, kdeep = _probe_and_deep(k, kcert)
    kgens = top_generators(k, kregion, kdeep)

    # relation entries read off the kernel generators in the path basis of P0
    p1_verts = tuple(v for (v, _) in kgens)
    entries = [[[] for _ in p1_verts] for _ in p0_verts]
    for i, (w, col) in enumerate(kgens):
        vec = k.kb(w).mul(col).col(0)  # coordinates inside P0(w)
        basis = proj_sum_basis(q, p0_verts, w)
        for (coord, (j, p)) in zip(vec, basis):
            if not F.is_zero(coord):
                entries[j][i].append((coord, p))
    pm = path_matrix(q, F, "proj", p1_verts, p0_verts, entries)

    minimal = all(p.length >= 1 for row in pm.entries for combo in row
                  for (_, p) in combo)
    if not minimal:
        raise AssertionError("cover is not minimal: trivial path in relations")
    return Presentation(x, pm, "proj", p0, cover, tuple(gens), True,
                        {"region": [q.vertex_str(v) for v in region],
                         "generators": [q.vertex_str(v) for v in p0_verts],
                         "relations": [q.vertex_str(v) for v in p1_verts]})


def _reverse_path(q: QuiverBase, p: Path) -> Path:
    """A path over the opposite quiver, rewritten over q (or vice versa)."""
    arrows = tuple(Arrow(a.dst, a.src, a.label) for a in reversed(p.arrows))
    return Path(p.dst, p.src, arrows)


def min_inj_copresentation(w: Rep, budget: Optional[int] = None,
                           cert=None) -> Presentation:
    q, F = w.quiver, w.field
    if cert is None:
        cert = classify_membership(w, budget)
    if cert.verdict not in ("fc", "fd"):
        raise ValueError(
            f"minimal injective copresentation needs an fc object, got {cert.verdict}")
    wd = dualize(w)
    dpres = min_proj_presentation(wd, budget)
    # dualize back: contravariant, so domain/codomain swap and paths reverse
    i0_verts = dpres.pm.codomain
    i1_verts = dpres.pm.domain
    entries = [[[] for _ in i0_verts] for _ in i1_verts]
    for j in range(len(dpres.pm.codomain)):
        for i in range(len(dpres.pm.domain)):
            for (c, p) in dpres.pm.entries[j][i]:
                entries[i][j].append((c, _reverse_path(q, p)))
    pm = path_matrix(q, F, "inj", i0_verts, i1_verts, entries)
    i0 = _sum_of_inj(q, F, i0_verts)
    # socle functionals: the dual-side top generators read as row vectors
    gens = tuple((v, col) for (v, col) in dpres.gens)

    def rule(v):
        from .rep import inj_sum_basis
        bl = inj_sum_basis(q, i0_verts, v)
        rows = []
        for (i, p) in bl:
            rows.append(gens[i][1].transpose().mul(w.mat_path(p)).row(0))
        return Mat(F, len(bl), w.dim(v), tuple(rows))

    coemb = Morphism(w, i0, rule=rule, label="coembed")
    return Presentation(w, pm, "inj", i0, coemb, gens, dpres.minimal,
                        {"socle": [q.vertex_str(v) for v in i0_verts],
                         "cosocle": [q.vertex_str(v) for v in i1_verts]})


def nakayama(pm: PathMatrix) -> PathMatrix:
    """Swap the interpretation side; vertex lists and entries are unchanged."""
    return pm.flip_side()
