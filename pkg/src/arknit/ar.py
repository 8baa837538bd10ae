"""Translates, almost split sequences, knitting, component classification.

tau sends a finitely presented non-projective object to the kernel of the
reinterpreted relation matrix on the injective side; tau_inv is the dual.
Almost split sequences are built from the socle class of Ext(X, tau X) under
the endomorphism action and checked by an explicit battery.  Knitting walks
the component graph breadth first in both directions, with payload identity
decided by fingerprints plus certified isomorphism tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .ext import ext_class_to_ses, ext_space
from .hom import (_endo_from_coords, _iso_indec, decompose, end_algebra,
                  hom_space, joint_window, solve_natural)
from .linalg import Mat, inverse, kernel_basis
from .morphism import SES, Morphism, verify_exact
from .presentations import (min_inj_copresentation, min_proj_presentation,
                            nakayama)
from .quiver import FiniteQuiver, QuiverBase, vkey
from .rep import (DEFAULT_BUDGET, CokerProjRep, KerInjRep, Rep,
                  classify_membership, dim_vector, direct_sum, injective_at,
                  is_doubly_infinite, projective_at, support_exact, zero_rep)


# ---------------------------------------------------------------------------
# translates


def tau(x: Rep, budget: Optional[int] = None) -> Rep:
    cert = classify_membership(x, budget)
    if cert.verdict not in ("fp", "fd"):
        raise ValueError(f"tau undefined: input is {cert.verdict}, not fp")
    pres = min_proj_presentation(x, budget, cert=cert)
    if not pres.pm.domain:
        raise ValueError("tau undefined for projective objects")
    return KerInjRep(nakayama(pres.pm))


def tau_inv(w: Rep, budget: Optional[int] = None) -> Rep:
    cert = classify_membership(w, budget)
    if cert.verdict not in ("fc", "fd"):
        raise ValueError(f"tau_inv undefined: input is {cert.verdict}, not fc")
    cop = min_inj_copresentation(w, budget, cert=cert)
    if not cop.pm.codomain:
        raise ValueError("tau_inv undefined for injective objects")
    return CokerProjRep(nakayama(cop.pm))


def is_pseudo_projective(x: Rep, budget: Optional[int] = None) -> bool:
    """fp non-projective with infinite-dimensional translate."""
    tx = tau(x, budget)
    cert = classify_membership(tx, budget)
    return any(r.dim > 0 for p in cert.profiles for r in p.rays)


# ---------------------------------------------------------------------------
# almost split sequences


def almost_split_sequence(x: Rep, budget: Optional[int] = None) -> SES:
    """0 -> tau X -> E -> X -> 0 from the socle class of Ext(X, tau X)."""
    tx = tau(x, budget)
    E = end_algebra(x, budget)
    if not E.is_local:
        raise ValueError("almost split sequence needs an indecomposable end")
    ecb = ext_space(x, tx, budget)
    if ecb.dimension == 0:
        raise AssertionError("Ext(X, tau X) vanished unexpectedly")
    F = x.field
    if not E.radical:
        coeffs = [F.one] + [F.zero] * (ecb.dimension - 1)
    else:
        # socle of the right End(X)-action: classes killed by the radical
        stacked = None
        for rad in E.radical:
            r = _endo_from_coords(E, rad)
            cols = []
            for bc in ecb.basis:
                moved = {a: m.mul(r.component(a.src)) for a, m in bc.items()}
                cols.append(ecb.coords(lambda a: moved.get(a)))
            act = Mat(F, len(cols[0]) if cols else 0, len(cols),
                      tuple(tuple(c[rr] for c in cols)
                            for rr in range(len(cols[0]) if cols else 0)))
            stacked = act if stacked is None else stacked.vstack(act)
        soc = kernel_basis(stacked)
        if soc.cols == 0:
            raise AssertionError("Ext socle vanished; class selection failed")
        coeffs = list(soc.col(0))
    return ext_class_to_ses(ecb, coeffs)


def _pa_index(q: QuiverBase, a, v) -> dict:
    return {p.key(): i for i, p in enumerate(q.paths_between(a, v))}


def minimal_right_almost_split_into(p: Rep,
                                    budget: Optional[int] = None) -> Morphism:
    """The radical inclusion into an indecomposable projective."""
    q, F = p.quiver, p.field
    pres = min_proj_presentation(p, budget)
    if pres.pm.domain:
        raise ValueError("input is not projective")
    if len(pres.pm.codomain) != 1:
        raise ValueError("input is not an indecomposable projective")
    a = pres.pm.codomain[0]
    pa = projective_at(q, a, F)
    arrows = sorted(q.out_arrows(a))
    rad = direct_sum(*[projective_at(q, al.dst, F) for al in arrows]) \
        if arrows else zero_rep(q, F)

    def rule(v):
        from .rep import proj_sum_basis
        bl = proj_sum_basis(q, tuple(al.dst for al in arrows), v)
        idx = _pa_index(q, a, v)
        rows = len(idx)
        ent = [[F.zero] * len(bl) for _ in range(rows)]
        for c, (i, r) in enumerate(bl):
            from .quiver import Path
            full = Path(a, r.dst, (arrows[i],) + r.arrows)
            ent[idx[full.key()]][c] = F.one
        return Mat(F, rows, len(bl), tuple(tuple(rw) for rw in ent))

    incl = Morphism(rad, pa, rule=rule, label="rad")
    pair = _iso_indec(pa, p, budget)
    if pair is None:
        raise ValueError("input is not isomorphic to the expected projective")
    u, _ = pair
    return incl.then(u)


def minimal_left_almost_split_from(i: Rep,
                                   budget: Optional[int] = None) -> Morphism:
    """The quotient by the socle out of an indecomposable injective."""
    q, F = i.quiver, i.field
    cop = min_inj_copresentation(i, budget)
    if cop.pm.codomain:
        raise ValueError("input is not injective")
    if len(cop.pm.domain) != 1:
        raise ValueError("input is not an indecomposable injective")
    a = cop.pm.domain[0]
    ia = injective_at(q, a, F)
    arrows = sorted(q.in_arrows(a))
    quot = direct_sum(*[injective_at(q, al.src, F) for al in arrows]) \
        if arrows else zero_rep(q, F)

    def rule(v):
        from .rep import inj_sum_basis
        from .quiver import Path
        bl = inj_sum_basis(q, tuple(al.src for al in arrows), v)
        ia_paths = {p.key(): c for c, p in enumerate(q.paths_between(v, a))}
        cols = len(ia_paths)
        ent = [[F.zero] * cols for _ in range(len(bl))]
        for r, (i_, p) in enumerate(bl):
            full = Path(v, a, p.arrows + (arrows[i_],))
            ent[r][ia_paths[full.key()]] = F.one
        return Mat(F, len(bl), cols, tuple(tuple(rw) for rw in ent))

    proj = Morphism(ia, quot, rule=rule, label="cosoc")
    pair = _iso_indec(i, ia, budget)
    if pair is None:
        raise ValueError("input is not isomorphic to the expected injective")
    u, _ = pair
    return u.then(proj)


# ---------------------------------------------------------------------------
# verification battery


@dataclass
class ASReport:
    exact: bool
    non_split: bool
    sub_indecomposable: bool
    quot_indecomposable: bool
    lift_failures: tuple
    factor_failures: tuple
    battery_size: int
    window: tuple

    @property
    def passed(self) -> bool:
        return (self.exact and self.non_split and self.sub_indecomposable
                and self.quot_indecomposable and not self.lift_failures
                and not self.factor_failures)


def _radical_morphisms(src: Rep, dst: Rep, budget):
    """Basis of the radical of Hom(src, dst) for indecomposable ends."""
    pair = _iso_indec(src, dst, budget)
    if pair is None:
        return list(hom_space(src, dst, budget=budget).basis)
    u, _ = pair
    E = end_algebra(dst, budget)
    return [u.then(_endo_from_coords(E, coords)) for coords in E.radical]


def verify_almost_split(ses: SES, battery, budget: Optional[int] = None) -> ASReport:
    sub, mid, quot = ses.sub, ses.middle, ses.quot
    certs = [classify_membership(r, budget) for r in (sub, mid, quot)]
    window, _ = joint_window([sub, mid, quot], certs)
    checks = verify_exact(ses, window)
    exact = checks["exact"]

    sec_extra = [(v, ses.proj.component(v), None,
                  Mat.identity(quot.field, quot.dim(v))) for v in window]
    part, _ = solve_natural(quot, mid, window, extra=sec_extra)
    non_split = part is None

    sub_loc = end_algebra(sub, budget).is_local
    quot_loc = end_algebra(quot, budget).is_local

    lift_failures, factor_failures = [], []
    for m in battery:
        certm = classify_membership(m, budget)
        w2 = sorted(set(window)
                    | set(joint_window([m], [certm])[0]), key=vkey)
        for g in _radical_morphisms(m, quot, budget):
            extra = [(v, ses.proj.component(v), None, g.component(v))
                     for v in w2]
            part, _ = solve_natural(m, mid, w2, extra=extra)
            if part is None:
                lift_failures.append((m.describe(), g.label))
        for g in _radical_morphisms(sub, m, budget):
            extra = [(v, None, ses.incl.component(v), g.component(v))
                     for v in w2]
            part, _ = solve_natural(mid, m, w2, extra=extra)
            if part is None:
                factor_failures.append((m.describe(), g.label))
    return ASReport(exact, non_split, sub_loc, quot_loc,
                    tuple(lift_failures), tuple(factor_failures),
                    len(list(battery)), tuple(window))


# ---------------------------------------------------------------------------
# knitting


@dataclass
class ARNode:
    key: int
    rep: Rep
    fingerprint: tuple
    is_projective: bool = False
    is_injective: bool = False
    status: str = "open"       # open | expanded | frontier | blocked
    hops: int = 0
    notes: tuple = ()


@dataclass
class ARComponent:
    quiver: QuiverBase
    nodes: list
    arrows: dict               # (src_key, dst_key) -> multiplicity
    tau_links: dict            # key of X -> key of tau X
    seed_key: int
    depth: int
    notes: list = dc_field(default_factory=list)

    def node(self, key) -> ARNode:
        return self.nodes[key]

    def frontier(self):
        return [n.key for n in self.nodes if n.status == "frontier"]


def _fingerprint(rep: Rep, window, cert) -> tuple:
    tails = tuple(sorted((p.eid, r.rid, r.kind, r.dim)
                         for p in cert.profiles for r in p.rays if r.dim > 0))
    return dim_vector(rep, window), tails


def _match_standard(rep: Rep, verts, budget, kind: str):
    """Vertex a with rep isomorphic to P_a / I_a, or None."""
    q, F = rep.quiver, rep.field
    probe = list(verts)
    for a in sorted(set(probe), key=vkey):
        std = projective_at(q, a, F) if kind == "proj" else injective_at(q, a, F)
        if dim_vector(std, probe) != dim_vector(rep, probe):
            continue
        if _iso_indec(std, rep, budget) is not None:
            return a
    return None


def knit(seed: Rep, depth: int, budget: Optional[int] = None) -> ARComponent:
    """Breadth-first closure of the component of the seed under almost split
    sequences, radical inclusions of projectives, and socle quotients of
    injectives, up to the given hop depth."""
    q, F = seed.quiver, seed.field
    bud = DEFAULT_BUDGET if budget is None else budget
    cert0 = classify_membership(seed, budget)
    if not cert0.is_in_rrep():
        raise ValueError(f"seed is {cert0.verdict}; knitting needs rrep payloads")
    base_window = support_exact(seed, cert0.profiles).members(
        max([p.cutoff for p in cert0.profiles], default=0) + 2)
    fwindow = tuple(sorted(_expand_window(q, base_window, depth + 2),
                           key=vkey))

    comp = ARComponent(q, [], {}, {}, 0, depth)
    certs = {}

    def find_node(rep: Rep, cert) -> Optional[int]:
        fp = _fingerprint(rep, fwindow, cert)
        for n in comp.nodes:
            if n.fingerprint == fp and _iso_indec(n.rep, rep, budget):
                return n.key
        return None

    def add_node(rep: Rep, hops: int, cert=None) -> int:
        cert = classify_membership(rep, budget) if cert is None else cert
        key = find_node(rep, cert)
        if key is not None:
            comp.nodes[key].hops = min(comp.nodes[key].hops, hops)
            return key
        node = ARNode(len(comp.nodes), rep, _fingerprint(rep, fwindow, cert),
                      hops=hops)
        comp.nodes.append(node)
        certs[node.key] = cert
        return node.key

    def add_translate(rep: Rep, hops: int) -> Optional[int]:
        """Translates sit two hops out; past the depth they are only linked
        when their iso class is already present, never created."""
        cert = classify_membership(rep, budget)
        key = find_node(rep, cert)
        if key is None and hops > depth:
            return None
        return add_node(rep, hops, cert)

    def add_arrow(src: int, dst: int, mult: int):
        old = comp.arrows.get((src, dst))
        if old is None:
            comp.arrows[(src, dst)] = mult
        elif old != mult:
            raise AssertionError(
                f"valuation mismatch on arrow {src}->{dst}: {old} vs {mult}")

    seed_key = add_node(seed, 0, cert0)
    comp.seed_key = seed_key
    queue = [seed_key]
    seen = set()
    while queue:
        key = queue.pop(0)
        if key in seen:
            continue
        seen.add(key)
        node = comp.nodes[key]
        if node.hops >= depth:
            node.status = "frontier"
            continue
        if len(comp.nodes) > bud * 4:
            comp.notes.append("node budget exhausted; frontier left open")
            node.status = "frontier"
            continue
        x = node.rep
        cert = certs[key]
        notes = list(node.notes)

        if is_doubly_infinite(x, budget):
            node.status = "blocked"
            notes.append("doubly infinite payload: trivial component member")
            node.notes = tuple(notes)
            continue

        probe = joint_window([x], [cert])[0]
        pa = _match_standard(x, probe, budget, "proj")
        ia = _match_standard(x, probe, budget, "inj")
        node.is_projective = pa is not None
        node.is_injective = ia is not None

        # backward step: predecessors through the right almost split map
        if pa is not None:
            incl = minimal_right_almost_split_into(x, budget)
            for (summand, mult) in decompose(incl.src, budget):
                skey = add_node(summand, node.hops + 1)
                add_arrow(skey, key, mult)
                queue.append(skey)
        elif cert.verdict in ("fp", "fd"):
            ses = almost_split_sequence(x, budget)
            tkey = add_translate(ses.sub, node.hops + 2)
            if tkey is not None:
                comp.tau_links[key] = tkey
                queue.append(tkey)
            for (summand, mult) in decompose(ses.middle, budget):
                skey = add_node(summand, node.hops + 1)
                add_arrow(skey, key, mult)
                if tkey is not None:
                    add_arrow(tkey, skey, mult)
                queue.append(skey)
        else:
            notes.append("no backward expansion: payload not fp")

        # forward step: successors through the left almost split map
        if ia is not None:
            proj = minimal_left_almost_split_from(x, budget)
            for (summand, mult) in decompose(proj.dst, budget):
                skey = add_node(summand, node.hops + 1)
                add_arrow(key, skey, mult)
                queue.append(skey)
        elif cert.verdict in ("fc", "fd"):
            y = tau_inv(x, budget)
            ses = almost_split_sequence(y, budget)
            ykey = add_translate(y, node.hops + 2)
            if ykey is not None:
                comp.tau_links[ykey] = key
                queue.append(ykey)
            for (summand, mult) in decompose(ses.middle, budget):
                skey = add_node(summand, node.hops + 1)
                add_arrow(key, skey, mult)
                if ykey is not None:
                    add_arrow(skey, ykey, mult)
                queue.append(skey)
        else:
            notes.append("no forward expansion: payload not fc")

        node.notes = tuple(notes)
        node.status = "expanded"
    return comp


def _expand_window(q: QuiverBase, verts, radius: int):
    out = set(verts)
    for _ in range(radius):
        nxt = set(out)
        for v in out:
            for a in q.out_arrows(v):
                nxt.add(a.dst)
            for a in q.in_arrows(v):
                nxt.add(a.src)
        out = nxt
    return out


# ---------------------------------------------------------------------------
# component classification


@dataclass
class ShapeHypothesis:
    tag: str
    certificate: dict


def classify_component(comp: ARComponent,
                       budget: Optional[int] = None) -> ShapeHypothesis:
    certs = [classify_membership(n.rep, budget) for n in comp.nodes]
    cert_info = {"nodes": len(comp.nodes), "arrows": len(comp.arrows),
                 "depth": comp.depth, "frontier": comp.frontier(),
                 "notes": list(comp.notes)}
    if any(c.verdict.startswith("unknown") for c in certs):
        return ShapeHypothesis("Inconclusive", {**cert_info,
                               "reason": "membership budget exhausted"})
    if len(comp.nodes) == 1 and not comp.arrows and \
            comp.nodes[0].status == "blocked":
        return ShapeHypothesis("TrivialSingleton", cert_info)
    if any(n.is_projective for n in comp.nodes):
        return ShapeHypothesis("Preprojective-NQop", cert_info)
    if any(n.is_injective for n in comp.nodes):
        return ShapeHypothesis("Preinjective-NminusQop", cert_info)
    verdicts = [c.verdict for c in certs]
    has_p = any(v == "fp" for v in verdicts)
    has_i = any(v == "fc" for v in verdicts)
    has_both = any(v == "rrep" for v in verdicts)
    if has_both or (has_p and has_i):
        return ShapeHypothesis("Wing", cert_info)
    if has_p:
        return ShapeHypothesis("NminusAinfinity", cert_info)
    if has_i:
        return ShapeHypothesis("NAinfinity", cert_info)
    return ShapeHypothesis("ZAinfinity", cert_info)


def ar_category_kind(q: QuiverBase) -> str:
    left = not q.has_right_infinite_path()
    right = not q.has_left_infinite_path()
    if left and right:
        return "both"
    if left:
        return "left"
    if right:
        return "right"
    return "neither"


# ---------------------------------------------------------------------------
# Coxeter oracle for finite quivers


def coxeter_matrix(q: FiniteQuiver, field=None) -> Mat:
    """C[i][j] = number of paths from vertex j to vertex i (Cartan matrix)."""
    from .linalg import QQ
    F = QQ if field is None else field
    vs = sorted(q.vertices, key=vkey)
    return Mat(F, len(vs), len(vs), tuple(
        tuple(F.of(len(q.paths_between(b, a))) for b in vs) for a in vs))


def coxeter_transform(q: FiniteQuiver, dims, inverse_transform=False):
    """Dim-vector action of the Coxeter matrix Phi = -C^T C^{-1}.

    dims is a sequence in sorted vertex order, or a vertex -> dim mapping."""
    C = coxeter_matrix(q)
    F = C.field
    if isinstance(dims, dict):
        dims = [dims.get(v, 0) for v in sorted(q.vertices, key=vkey)]
    Ci = inverse(C)
    phi = C.transpose().mul(Ci).scale(F.neg(F.one))
    if inverse_transform:
        phi = inverse(phi)
    vec = phi.apply([F.of(d) for d in dims])
    return tuple(vec)
