"""Representations given by finite data: constructor trees and exact evaluation.

A representation is a tree of constructor nodes (projectives, injectives,
explicit finite data, kernels/cokernels of path matrices, glued extensions,
sums, duals, restrictions).  Every node can be evaluated exactly at any
vertex of the quiver; infinite supports are handled symbolically through the
preset end/ray structure of the quiver layer.

Membership in the four classes (finite dimensional, finitely presented,
finitely copresented, finite-extension) is decided by stabilizing the
evaluation data along each ray: once the per-band snapshot repeats beyond the
node's structural depth, the data is shift-equivariant and the verdict is a
certificate, not a sample.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

from .linalg import (Field, Mat, QQ, block_matrix, coker_projection,
                     column_space_basis, is_invertible, kernel_basis, rank,
                     solve_matrix)
from .quiver import (Arrow, Path, QuiverBase, VertexSet, Window,
                     classify_subquiver, trivial_path, vkey, window)

DEFAULT_BUDGET = 40


class BudgetError(RuntimeError):
    """Raised when a stabilization or search exceeds its window budget."""


class EvalRangeError(ValueError):
    """Raised when evaluation is requested outside any computable region."""


def _loc_depth(q: QuiverBase, v) -> int:
    loc = q.locate(v)
    return loc[2] if loc is not None else 0


# ---------------------------------------------------------------------------
# path matrices (maps between finite sums of projectives or of injectives)


@dataclass(frozen=True)
class PathMatrix:
    """Map between sums of projectives ('proj') or injectives ('inj').

    entries[j][i] is a combination of paths codomain[j] ~> domain[i]; this is
    the canonical identification of Hom(P_x, P_y) and Hom(I_x, I_y) with the
    span of the paths y ~> x.
    """

    quiver: QuiverBase
    field: Field
    side: str
    domain: tuple
    codomain: tuple
    entries: tuple  # entries[j][i] = tuple of (coeff, Path)

    def __post_init__(self):
        if self.side not in ("proj", "inj"):
            raise ValueError("side must be 'proj' or 'inj'")
        if len(self.entries) != len(self.codomain):
            raise ValueError("entry row count mismatch")
        for j, row in enumerate(self.entries):
            if len(row) != len(self.domain):
                raise ValueError("entry column count mismatch")
            for i, combo in enumerate(row):
                for (_, p) in combo:
                    if p.src != self.codomain[j] or p.dst != self.domain[i]:
                        raise ValueError(
                            f"entry path must run codomain[{j}] ~> domain[{i}]")

    def flip_side(self) -> "PathMatrix":
        other = "inj" if self.side == "proj" else "proj"
        return PathMatrix(self.quiver, self.field, other, self.domain,
                          self.codomain, self.entries)

    def is_zero(self) -> bool:
        return all(not combo for row in self.entries for combo in row)

    def depth_bound(self) -> int:
        q = self.quiver
        d = 0
        for v in self.domain + self.codomain:
            d = max(d, _loc_depth(q, v))
        return d


def path_matrix(quiver, field, side, domain, codomain, entries) -> PathMatrix:
    norm = tuple(tuple(tuple((c, p) for (c, p) in combo) for combo in row)
                 for row in entries)
    return PathMatrix(quiver, field, side, tuple(domain), tuple(codomain), norm)


def proj_sum_basis(q: QuiverBase, verts: Sequence, v) -> list:
    """Basis of (⊕_i P_{verts[i]})(v): pairs (i, path verts[i] ~> v)."""
    out = []
    for i, a in enumerate(verts):
        for p in q.paths_between(a, v):
            out.append((i, p))
    return out


def inj_sum_basis(q: QuiverBase, verts: Sequence, v) -> list:
    """Basis of (⊕_i I_{verts[i]})(v): pairs (i, path v ~> verts[i])."""
    out = []
    for i, a in enumerate(verts):
        for p in q.paths_between(v, a):
            out.append((i, p))
    return out


def pm_eval(pm: PathMatrix, v) -> Mat:
    """The map (⊕ over domain)(v) -> (⊕ over codomain)(v)."""
    q, F = pm.quiver, pm.field
    if pm.side == "proj":
        dom_b = proj_sum_basis(q, pm.domain, v)
        cod_b = proj_sum_basis(q, pm.codomain, v)
        index = {(j, p.key()): r for r, (j, p) in enumerate(cod_b)}
        cols = []
        for (i, p) in dom_b:
            col = [F.zero] * len(cod_b)
            for j in range(len(pm.codomain)):
                for (c, qpath) in pm.entries[j][i]:
                    tgt = qpath.then(p)  # codomain[j] ~> domain[i] ~> v
                    col[index[(j, tgt.key())]] = F.add(
                        col[index[(j, tgt.key())]], F.of(c))
            cols.append(col)
        rows = tuple(tuple(col[r] for col in cols) for r in range(len(cod_b)))
        return Mat(F, len(cod_b), len(dom_b), rows)
    dom_b = inj_sum_basis(q, pm.domain, v)
    cod_b = inj_sum_basis(q, pm.codomain, v)
    index = {(j, p.key()): r for r, (j, p) in enumerate(cod_b)}
    cols = []
    for (i, p) in dom_b:
        col = [F.zero] * len(cod_b)
        for j in range(len(pm.codomain)):
            for (c, qpath) in pm.entries[j][i]:
                # strip the suffix qpath: p = r . qpath with r: v ~> codomain[j]
                k = len(qpath.arrows)
                if k <= len(p.arrows) and (k == 0 or p.arrows[-k:] == qpath.arrows):
                    rpath = Path(v, pm.codomain[j],
                                 p.arrows[:len(p.arrows) - k] if k else p.arrows)
                    col[index[(j, rpath.key())]] = F.add(
                        col[index[(j, rpath.key())]], F.of(c))
        cols.append(col)
    rows = tuple(tuple(col[r] for col in cols) for r in range(len(cod_b)))
    return Mat(F, len(cod_b), len(dom_b), rows)


def _sum_action_proj(q, F, verts, arrow, basis_u, basis_w) -> Mat:
    """Arrow action on (⊕ P_verts): append the arrow to each path."""
    index = {(j, p.key()): r for r, (j, p) in enumerate(basis_w)}
    rows = [[F.zero] * len(basis_u) for _ in range(len(basis_w))]
    for c, (i, p) in enumerate(basis_u):
        tgt = Path(p.src, arrow.dst, p.arrows + (arrow,))
        rows[index[(i, tgt.key())]][c] = F.one
    return Mat(F, len(basis_w), len(basis_u), tuple(tuple(r) for r in rows))


def _sum_action_inj(q, F, verts, arrow, basis_u, basis_w) -> Mat:
    """Arrow action on (⊕ I_verts): strip the arrow from the front."""
    index = {(j, p.key()): r for r, (j, p) in enumerate(basis_w)}
    rows = [[F.zero] * len(basis_u) for _ in range(len(basis_w))]
    for c, (i, p) in enumerate(basis_u):
        if p.arrows and p.arrows[0] == arrow:
            tgt = Path(arrow.dst, p.dst, p.arrows[1:])
            rows[index[(i, tgt.key())]][c] = F.one
    return Mat(F, len(basis_w), len(basis_u), tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# representation nodes


class Rep:
    """Base class; subclasses implement _dim_at/_mat_at and structure hooks."""

    def __init__(self, quiver: QuiverBase, field: Field):
        self.quiver = quiver
        self.field = field
        self._dims: dict = {}
        self._mats: dict = {}

    # -- evaluation --
    def dim(self, v) -> int:
        if not self.quiver.contains(v):
            raise EvalRangeError(f"vertex {v!r} outside the quiver")
        if v not in self._dims:
            self._dims[v] = self._dim_at(v)
        return self._dims[v]

    def mat(self, a: Arrow) -> Mat:
        if a not in self._mats:
            m = self._mat_at(a)
            if m.rows != self.dim(a.dst) or m.cols != self.dim(a.src):
                raise AssertionError(f"bad matrix shape for {a}")
            self._mats[a] = m
        return self._mats[a]

    def mat_path(self, p: Path) -> Mat:
        m = Mat.identity(self.field, self.dim(p.src))
        for a in p.arrows:
            m = self.mat(a).mul(m)
        return m

    def basis_labels(self, v) -> tuple:
        return tuple(f"e{i}" for i in range(self.dim(v)))

    # -- structure --
    def _dim_at(self, v) -> int:
        raise NotImplementedError

    def _mat_at(self, a: Arrow) -> Mat:
        raise NotImplementedError

    def support(self) -> VertexSet:
        """A vertex set guaranteed to contain the support."""
        raise NotImplementedError

    def _extra_depth(self) -> int:
        return 0

    def structural_depth(self) -> int:
        d = self._extra_depth()
        s = self.support()
        for v in s.explicit:
            d = max(d, _loc_depth(self.quiver, v))
        for (_, _, t0) in s.tails:
            d = max(d, t0)
        return d

    def describe(self) -> str:
        return type(self).__name__

    def spec_dict(self) -> dict:
        raise NotImplementedError(f"{type(self).__name__} has no JSON form")

    def _zero_mat(self, a: Arrow) -> Mat:
        return Mat.zeros(self.field, self.dim(a.dst), self.dim(a.src))


class ZeroRep(Rep):
    def _dim_at(self, v):
        return 0

    def _mat_at(self, a):
        return Mat.zeros(self.field, 0, 0)

    def support(self):
        return VertexSet.make(self.quiver, ())

    def describe(self):
        return "0"

    def spec_dict(self):
        return {"zero": True}


class ProjRep(Rep):
    def __init__(self, quiver, field, a):
        super().__init__(quiver, field)
        if not quiver.contains(a):
            raise ValueError(f"vertex {a!r} outside the quiver")
        self.vertex = a
        self._bases: dict = {}

    def basis(self, v) -> list:
        if v not in self._bases:
            self._bases[v] = self.quiver.paths_between(self.vertex, v)
        return self._bases[v]

    def _dim_at(self, v):
        return len(self.basis(v))

    def basis_labels(self, v):
        return tuple("." .join(a.label for a in p.arrows) or "<triv>"
                     for p in self.basis(v))

    def _mat_at(self, a):
        F = self.field
        bu, bw = self.basis(a.src), self.basis(a.dst)
        index = {p.key(): r for r, p in enumerate(bw)}
        rows = [[F.zero] * len(bu) for _ in range(len(bw))]
        for c, p in enumerate(bu):
            rows[index[Path(p.src, a.dst, p.arrows + (a,)).key()]][c] = F.one
        return Mat(F, len(bw), len(bu), tuple(tuple(r) for r in rows))

    def support(self):
        return self.quiver.succ_closure([self.vertex])

    def describe(self):
        return f"P({self.quiver.vertex_str(self.vertex)})"

    def spec_dict(self):
        return {"proj": self.quiver.vertex_str(self.vertex)}


class InjRep(Rep):
    def __init__(self, quiver, field, a):
        super().__init__(quiver, field)
        if not quiver.contains(a):
            raise ValueError(f"vertex {a!r} outside the quiver")
        self.vertex = a
        self._bases: dict = {}

    def basis(self, v) -> list:
        if v not in self._bases:
            self._bases[v] = self.quiver.paths_between(v, self.vertex)
        return self._bases[v]

    def _dim_at(self, v):
        return len(self.basis(v))

    def basis_labels(self, v):
        return tuple(".".join(a.label for a in p.arrows) or "<triv>"
                     for p in self.basis(v))

    def _mat_at(self, a):
        F = self.field
        bu, bw = self.basis(a.src), self.basis(a.dst)
        index = {p.key(): r for r, p in enumerate(bw)}
        rows = [[F.zero] * len(bu) for _ in range(len(bw))]
        for c, p in enumerate(bu):
            if p.arrows and p.arrows[0] == a:
                rows[index[Path(a.dst, p.dst, p.arrows[1:]).key()]][c] = F.one
        return Mat(F, len(bw), len(bu), tuple(tuple(r) for r in rows))

    def support(self):
        return self.quiver.pred_closure([self.vertex])

    def describe(self):
        return f"I({self.quiver.vertex_str(self.vertex)})"

    def spec_dict(self):
        return {"inj": self.quiver.vertex_str(self.vertex)}


class SimpleRep(Rep):
    def __init__(self, quiver, field, a):
        super().__init__(quiver, field)
        if not quiver.contains(a):
            raise ValueError(f"vertex {a!r} outside the quiver")
        self.vertex = a

    def _dim_at(self, v):
        return 1 if v == self.vertex else 0

    def _mat_at(self, a):
        return self._zero_mat(a)

    def support(self):
        return VertexSet.make(self.quiver, (self.vertex,))

    def describe(self):
        return f"S({self.quiver.vertex_str(self.vertex)})"

    def spec_dict(self):
        return {"simple": self.quiver.vertex_str(self.vertex)}


class ThinRep(Rep):
    """One-dimensional on a region, identity on arrows inside the region."""

    def __init__(self, quiver, field, region: VertexSet):
        super().__init__(quiver, field)
        self.region = region

    def _dim_at(self, v):
        return 1 if self.region.contains(v) else 0

    def _mat_at(self, a):
        if self.region.contains(a.src) and self.region.contains(a.dst):
            return Mat(self.field, 1, 1, ((self.field.one,),))
        return self._zero_mat(a)

    def support(self):
        return self.region

    def describe(self):
        return f"Thin{self.region.describe()}"

    def spec_dict(self):
        return {"thin": _region_dict(self.region)}


class ExplicitFdRep(Rep):
    def __init__(self, quiver, field, dims: dict, mats: dict):
        """dims: vertex -> int; mats: arrow label -> Mat (only nonzero ones)."""
        super().__init__(quiver, field)
        self.dims = dict(dims)
        self.mats = dict(mats)
        for v in self.dims:
            if not quiver.contains(v):
                raise ValueError(f"vertex {v!r} outside the quiver")

    def _dim_at(self, v):
        return self.dims.get(v, 0)

    def _mat_at(self, a):
        m = self.mats.get(a.label)
        if m is None:
            return self._zero_mat(a)
        if m.rows != self._dim_at(a.dst) or m.cols != self._dim_at(a.src):
            raise ValueError(f"matrix for arrow {a.label} has wrong shape")
        return m

    def support(self):
        return VertexSet.make(self.quiver,
                              {v for v, d in self.dims.items() if d > 0})

    def describe(self):
        q = self.quiver
        items = sorted(self.dims.items(), key=lambda kv: vkey(kv[0]))
        inner = ",".join(f"{q.vertex_str(v)}:{d}" for v, d in items if d > 0)
        return f"Fd[{inner}]"

    def spec_dict(self):
        q = self.quiver
        return {"explicit_fd": {
            "dims": {q.vertex_str(v): d for v, d in sorted(
                self.dims.items(), key=lambda kv: vkey(kv[0])) if d > 0},
            "mats": {lbl: _mat_json(m) for lbl, m in sorted(self.mats.items())
                     if not m.is_zero()},
        }}


class DirectSumRep(Rep):
    def __init__(self, parts: Sequence[Rep]):
        parts = tuple(parts)
        if not parts:
            raise ValueError("use ZeroRep for the empty sum")
        super().__init__(parts[0].quiver, parts[0].field)
        for p in parts:
            if p.quiver != self.quiver or p.field != self.field:
                raise ValueError("summands live over different quivers/fields")
        self.parts = parts

    def _dim_at(self, v):
        return sum(p.dim(v) for p in self.parts)

    def _mat_at(self, a):
        blocks = [[p.mat(a) if i == j else None for j in range(len(self.parts))]
                  for i, p in enumerate(self.parts)]
        return block_matrix(self.field, blocks,
                            [p.dim(a.dst) for p in self.parts],
                            [p.dim(a.src) for p in self.parts])

    def support(self):
        return reduce(lambda s, p: s.union(p.support()), self.parts,
                      VertexSet.make(self.quiver, ()))

    def _extra_depth(self):
        return max(p._extra_depth() for p in self.parts)

    def describe(self):
        return " + ".join(p.describe() for p in self.parts)

    def spec_dict(self):
        return {"sum": [p.spec_dict() for p in self.parts]}


class DualRep(Rep):
    """Pointwise dual over the opposite quiver."""

    def __init__(self, base: Rep):
        super().__init__(base.quiver.opposite(), base.field)
        self.base = base

    def _dim_at(self, v):
        return self.base.dim(v)

    def _mat_at(self, a):
        orig = Arrow(a.dst, a.src, a.label)
        return self.base.mat(orig).transpose()

    def support(self):
        s = self.base.support()
        return VertexSet(self.quiver, s.explicit, s.tails)

    def _extra_depth(self):
        return self.base._extra_depth()

    def describe(self):
        return f"D({self.base.describe()})"

    def spec_dict(self):
        return {"dual": self.base.spec_dict()}


class RestrictRep(Rep):
    def __init__(self, base: Rep, region: VertexSet):
        super().__init__(base.quiver, base.field)
        self.base = base
        self.region = region

    def _dim_at(self, v):
        return self.base.dim(v) if self.region.contains(v) else 0

    def _mat_at(self, a):
        if self.region.contains(a.src) and self.region.contains(a.dst):
            return self.base.mat(a)
        return self._zero_mat(a)

    def support(self):
        return self.base.support().intersect(self.region)

    def _extra_depth(self):
        return max(self.base.structural_depth(), self.region.probe_depth())

    def describe(self):
        return f"({self.base.describe()})|{self.region.describe()}"

    def spec_dict(self):
        return {"restrict": {"rep": self.base.spec_dict(),
                             "region": _region_dict(self.region)}}


class CokerProjRep(Rep):
    """Cokernel of a path matrix between sums of projectives."""

    def __init__(self, pm: PathMatrix):
        if pm.side != "proj":
            raise ValueError("CokerProj needs a projective-side path matrix")
        super().__init__(pm.quiver, pm.field)
        self.pm = pm
        self._data: dict = {}

    def _at(self, v):
        if v not in self._data:
            cod_b = proj_sum_basis(self.quiver, self.pm.codomain, v)
            m = pm_eval(self.pm, v)
            P, free = coker_projection(m)
            self._data[v] = (cod_b, P, free)
        return self._data[v]

    def _dim_at(self, v):
        return len(self._at(v)[2])

    def _mat_at(self, a):
        F = self.field
        bu, Pu, fu = self._at(a.src)
        bw, Pw, fw = self._at(a.dst)
        act = _sum_action_proj(self.quiver, F, self.pm.codomain, a, bu, bw)
        lift_cols = tuple(tuple(F.one if r == fr else F.zero
                                for fr in fu) for r in range(len(bu)))
        lift = Mat(F, len(bu), len(fu), lift_cols)
        return Pw.mul(act).mul(lift)

    def support(self):
        return reduce(lambda s, c: s.union(self.quiver.succ_closure([c])),
                      self.pm.codomain, VertexSet.make(self.quiver, ()))

    def _extra_depth(self):
        return self.pm.depth_bound()

    def describe(self):
        q = self.quiver
        return ("coker(P[" + ",".join(q.vertex_str(x) for x in self.pm.domain)
                + "] -> P[" + ",".join(q.vertex_str(x) for x in self.pm.codomain) + "])")

    def spec_dict(self):
        return {"coker_proj": _pm_dict(self.pm)}


class KerInjRep(Rep):
    """Kernel of a path matrix between sums of injectives."""

    def __init__(self, pm: PathMatrix):
        if pm.side != "inj":
            raise ValueError("KerInj needs an injective-side path matrix")
        super().__init__(pm.quiver, pm.field)
        self.pm = pm
        self._data: dict = {}

    def _at(self, v):
        if v not in self._data:
            dom_b = inj_sum_basis(self.quiver, self.pm.domain, v)
            kb = kernel_basis(pm_eval(self.pm, v))
            self._data[v] = (dom_b, kb)
        return self._data[v]

    def _dim_at(self, v):
        return self._at(v)[1].cols

    def _mat_at(self, a):
        F = self.field
        bu, ku = self._at(a.src)
        bw, kw = self._at(a.dst)
        act = _sum_action_inj(self.quiver, F, self.pm.domain, a, bu, bw)
        sol = solve_matrix(kw, act.mul(ku))
        if sol is None:
            raise AssertionError("kernel is not arrow-stable; path matrix invalid")
        return sol

    def support(self):
        return reduce(lambda s, c: s.union(self.quiver.pred_closure([c])),
                      self.pm.domain, VertexSet.make(self.quiver, ()))

    def _extra_depth(self):
        return self.pm.depth_bound()

    def describe(self):
        q = self.quiver
        return ("ker(I[" + ",".join(q.vertex_str(x) for x in self.pm.domain)
                + "] -> I[" + ",".join(q.vertex_str(x) for x in self.pm.codomain) + "])")

    def spec_dict(self):
        return {"ker_inj": _pm_dict(self.pm)}


@dataclass(frozen=True)
class RungFamily:
    """Symbolic cocycle on a crossing-arrow family: coeff on every arrow
    crossing_arrow(cid, t) for t >= start.  Requires thin (1-dim) slots."""

    eid: str
    cid: str
    start: int
    coeff: object


class GlueRep(Rep):
    """Extension middle: block triangular [[sub, cocycle], [0, quot]]."""

    def __init__(self, sub: Rep, quot: Rep, cocycle=(), families=()):
        if sub.quiver != quot.quiver or sub.field != quot.field:
            raise ValueError("glue parts live over different quivers/fields")
        super().__init__(sub.quiver, sub.field)
        self.sub = sub
        self.quot = quot
        self.cocycle = tuple(cocycle)  # (Arrow, Mat)
        self.families = tuple(families)
        for (a, m) in self.cocycle:
            if m.rows != sub.dim(a.dst) or m.cols != quot.dim(a.src):
                raise ValueError(
                    f"dimension-mismatched cocycle entry at arrow {a.label}: "
                    f"expected {sub.dim(a.dst)}x{quot.dim(a.src)}, got {m.rows}x{m.cols}")

    def cocycle_at(self, a: Arrow) -> Optional[Mat]:
        for (arr, m) in self.cocycle:
            if arr == a:
                return m
        for fam in self.families:
            loc = self.quiver.locate(a.src)
            if loc is None or loc[0] != fam.eid:
                continue
            t = loc[2]
            if t >= fam.start and self.quiver._crossing_arrow(fam.eid, fam.cid, t) == a:
                if self.sub.dim(a.dst) != 1 or self.quot.dim(a.src) != 1:
                    raise ValueError("symbolic cocycle families need thin slots")
                return Mat(self.field, 1, 1, ((self.field.of(fam.coeff),),))
        return None

    def _dim_at(self, v):
        return self.sub.dim(v) + self.quot.dim(v)

    def _mat_at(self, a):
        c = self.cocycle_at(a)
        blocks = [[self.sub.mat(a), c], [None, self.quot.mat(a)]]
        return block_matrix(self.field, blocks,
                            [self.sub.dim(a.dst), self.quot.dim(a.dst)],
                            [self.sub.dim(a.src), self.quot.dim(a.src)])

    def support(self):
        return self.sub.support().union(self.quot.support())

    def _extra_depth(self):
        d = max(self.sub.structural_depth(), self.quot.structural_depth())
        for (a, _) in self.cocycle:
            d = max(d, _loc_depth(self.quiver, a.src), _loc_depth(self.quiver, a.dst))
        for fam in self.families:
            d = max(d, fam.start)
        return d

    def describe(self):
        return f"glue({self.sub.describe()}, {self.quot.describe()})"

    def spec_dict(self):
        q = self.quiver
        return {"glue": {
            "sub": self.sub.spec_dict(),
            "quot": self.quot.spec_dict(),
            "cocycle": [{"src": q.vertex_str(a.src), "dst": q.vertex_str(a.dst),
                         "label": a.label, "mat": _mat_json(m)}
                        for (a, m) in self.cocycle],
            "families": [[f.eid, f.cid, f.start, str(f.coeff)] for f in self.families],
        }}


class KernelOfRep(Rep):
    """Kernel of a morphism (duck-typed: .src, .dst, .component(v))."""

    def __init__(self, f):
        super().__init__(f.src.quiver, f.src.field)
        self.f = f
        self._kb: dict = {}

    def kb(self, v) -> Mat:
        if v not in self._kb:
            self._kb[v] = kernel_basis(self.f.component(v))
        return self._kb[v]

    def _dim_at(self, v):
        return self.kb(v).cols

    def _mat_at(self, a):
        sol = solve_matrix(self.kb(a.dst), self.f.src.mat(a).mul(self.kb(a.src)))
        if sol is None:
            raise AssertionError("morphism does not commute with arrows")
        return sol

    def support(self):
        return self.f.src.support()

    def _extra_depth(self):
        return max(self.f.src.structural_depth(), self.f.dst.structural_depth(),
                   self.f.depth_bound())

    def describe(self):
        return f"ker(-> {self.f.dst.describe()})"


class CokerOfRep(Rep):
    """Cokernel of a morphism (duck-typed like KernelOfRep)."""

    def __init__(self, f):
        super().__init__(f.dst.quiver, f.dst.field)
        self.f = f
        self._data: dict = {}

    def _at(self, v):
        if v not in self._data:
            self._data[v] = coker_projection(self.f.component(v))
        return self._data[v]

    def _dim_at(self, v):
        return len(self._at(v)[1])

    def _mat_at(self, a):
        F = self.field
        Pu, fu = self._at(a.src)
        Pw, _ = self._at(a.dst)
        n = self.f.dst.dim(a.src)
        lift = Mat(F, n, len(fu), tuple(tuple(F.one if r == fr else F.zero
                                              for fr in fu) for r in range(n)))
        return Pw.mul(self.f.dst.mat(a)).mul(lift)

    def support(self):
        return self.f.dst.support()

    def _extra_depth(self):
        return max(self.f.src.structural_depth(), self.f.dst.structural_depth(),
                   self.f.depth_bound())

    def describe(self):
        return f"coker({self.f.src.describe()} ->)"


class ImageRep(Rep):
    """Image of an idempotent endomorphism; used by decompose for splitting."""

    def __init__(self, base: Rep, idem):
        super().__init__(base.quiver, base.field)
        self.base = base
        self.idem = idem
        self._cb: dict = {}

    def cb(self, v) -> Mat:
        if v not in self._cb:
            self._cb[v] = column_space_basis(self.idem.component(v))
        return self._cb[v]

    def _dim_at(self, v):
        return self.cb(v).cols

    def _mat_at(self, a):
        sol = solve_matrix(self.cb(a.dst), self.base.mat(a).mul(self.cb(a.src)))
        if sol is None:
            raise AssertionError("image is not arrow-stable; not an endomorphism")
        return sol

    def support(self):
        return self.base.support()

    def _extra_depth(self):
        return max(self.base.structural_depth(), self.idem.depth_bound())

    def describe(self):
        return f"summand({self.base.describe()})"


# ---------------------------------------------------------------------------
# public constructors


def zero_rep(quiver, field=QQ) -> Rep:
    return ZeroRep(quiver, field)


def projective_at(quiver, a, field=QQ) -> Rep:
    return ProjRep(quiver, field, a)


def injective_at(quiver, a, field=QQ) -> Rep:
    return InjRep(quiver, field, a)


def simple_at(quiver, a, field=QQ) -> Rep:
    return SimpleRep(quiver, field, a)


def thin_rep(quiver, region: VertexSet, field=QQ) -> Rep:
    return ThinRep(quiver, field, region)


def explicit_fd(quiver, dims, mats=None, field=QQ) -> Rep:
    return ExplicitFdRep(quiver, field, dims, mats or {})


def direct_sum(*parts: Rep) -> Rep:
    flat = []
    for p in parts:
        if isinstance(p, DirectSumRep):
            flat.extend(p.parts)
        elif not isinstance(p, ZeroRep):
            flat.append(p)
    if not flat:
        if not parts:
            raise ValueError("empty direct sum needs an ambient quiver; use zero_rep")
        return ZeroRep(parts[0].quiver, parts[0].field)
    if len(flat) == 1:
        return flat[0]
    return DirectSumRep(flat)


def dualize(m: Rep) -> Rep:
    if isinstance(m, DualRep):
        return m.base
    return DualRep(m)


def restrict(m: Rep, region: VertexSet) -> Rep:
    return RestrictRep(m, region)


def glue_rep(sub: Rep, quot: Rep, cocycle=(), families=()) -> Rep:
    return GlueRep(sub, quot, cocycle, families)


def coker_proj(pm: PathMatrix) -> Rep:
    return CokerProjRep(pm)


def ker_inj(pm: PathMatrix) -> Rep:
    return KerInjRep(pm)


# ---------------------------------------------------------------------------
# window helpers


def dim_vector(m: Rep, verts) -> tuple:
    return tuple(m.dim(v) for v in verts)


def equal_on(m1: Rep, m2: Rep, verts) -> bool:
    """Evaluation equality: same dims and same arrow matrices on the region."""
    vs = set(verts)
    for v in vs:
        if m1.dim(v) != m2.dim(v):
            return False
    for v in sorted(vs, key=vkey):
        for a in m1.quiver.out_arrows(v):
            if a.dst in vs and m1.mat(a).entries != m2.mat(a).entries:
                return False
    return True


def incoming_stack(m: Rep, v):
    """(hstack of M(α) over incoming α, ordered arrow list); rows = dim(v)."""
    arrows = sorted(m.quiver.in_arrows(v))
    F = m.field
    mat = Mat.zeros(F, m.dim(v), 0)
    for a in arrows:
        mat = mat.hstack(m.mat(a))
    return mat, arrows


def outgoing_stack(m: Rep, v):
    """(vstack of M(α) over outgoing α, ordered arrow list); cols = dim(v)."""
    arrows = sorted(m.quiver.out_arrows(v))
    F = m.field
    mat = Mat.zeros(F, 0, m.dim(v))
    for a in arrows:
        mat = mat.vstack(m.mat(a))
    return mat, arrows


def probe_vertices(m: Rep, depth: int) -> list:
    """Support-hint members down to the given tail depth, sorted."""
    return m.support().members(depth)


# ---------------------------------------------------------------------------
# stabilization along ends and class membership


@dataclass
class RayProfile:
    eid: str
    rid: str
    kind: str
    cutoff: int
    dim: int
    transition: Optional[Mat]
    status: str  # 'zero' | 'iso' | 'other'


@dataclass
class CrossingProfile:
    eid: str
    cid: str
    cutoff: int
    mat: Mat
    nonzero: bool


@dataclass
class EndProfile:
    eid: str
    cutoff: int
    rays: tuple
    crossings: tuple
    checked_depths: tuple


def _ray_transition(q, end, rid, t):
    """The unique arrow between ray depths t and t+1, or None."""
    vt, vn = end.vertex(rid, t), end.vertex(rid, t + 1)
    for a in q.out_arrows(vt):
        if a.dst == vn:
            return a
    for a in q.out_arrows(vn):
        if a.dst == vt:
            return a
    return None


def _band_snapshot(m: Rep, end, t):
    dims = tuple(m.dim(end.vertex(r.rid, t)) for r in end.rays)
    dims1 = tuple(m.dim(end.vertex(r.rid, t + 1)) for r in end.rays)
    mats = tuple(m.mat(a).entries for a in end.band_arrows(t))
    return (dims, dims1, mats)


def end_profile(m: Rep, end, budget: Optional[int] = None) -> EndProfile:
    budget = DEFAULT_BUDGET if budget is None else budget
    q = m.quiver
    c0 = max(m.structural_depth(), 2) + 1
    t = c0
    snap = _band_snapshot(m, end, t)
    while True:
        nxt = _band_snapshot(m, end, t + 1)
        if snap == nxt:
            break
        t += 1
        snap = nxt
        if t > c0 + budget:
            raise BudgetError(
                f"end {end.eid}: band data did not stabilize within depth {t}")
    cutoff = t
    rays = []
    for r in end.rays:
        d = m.dim(end.vertex(r.rid, cutoff))
        a = _ray_transition(q, end, r.rid, cutoff)
        tm = m.mat(a) if a is not None else None
        if d == 0 and m.dim(end.vertex(r.rid, cutoff + 1)) == 0:
            status = "zero"
        elif tm is not None and tm.rows == tm.cols == d and is_invertible(tm):
            status = "iso"
        else:
            status = "other"
        rays.append(RayProfile(end.eid, r.rid, r.kind, cutoff, d, tm, status))
    crossings = []
    for (cid, _, _) in end.crossings:
        cm = m.mat(end.crossing_arrow(cid, cutoff))
        crossings.append(CrossingProfile(end.eid, cid, cutoff, cm, not cm.is_zero()))
    return EndProfile(end.eid, cutoff, tuple(rays), tuple(crossings),
                      (cutoff, cutoff + 1, cutoff + 2))


@dataclass
class RepClassCertificate:
    verdict: str
    witnesses: tuple
    profiles: tuple
    evidence: dict

    def is_in_rrep(self) -> bool:
        return self.verdict in ("fd", "fp", "fc", "rrep")


def support_exact(m: Rep, profiles) -> VertexSet:
    """Exact support: evaluated explicit part plus certified nonzero tails."""
    q = m.quiver
    hint = m.support()
    depth = max([p.cutoff for p in profiles], default=0)
    expl = {v for v in hint.members(depth) if m.dim(v) > 0}
    tails = []
    for p in profiles:
        for r in p.rays:
            if r.dim > 0:
                tails.append((r.eid, r.rid, r.cutoff + 1))
    return VertexSet.make(q, expl, tails)


def classify_membership(m: Rep, budget: Optional[int] = None) -> RepClassCertificate:
    q = m.quiver
    try:
        profiles = tuple(end_profile(m, e, budget) for e in q.ends())
    except BudgetError as e:
        return RepClassCertificate("unknown(budget)", (str(e),), (), {})

    supp = support_exact(m, profiles)
    witnesses = []

    bad = [r for p in profiles for r in p.rays if r.kind == "bad" and r.dim > 0]
    other = [r for p in profiles for r in p.rays if r.status == "other"]
    cross = [c for p in profiles for c in p.crossings if c.nonzero]

    if bad:
        sq = classify_subquiver(supp)
        witnesses.extend(sq.witnesses)
        for r in bad:
            witnesses.append(
                f"support runs along ray {r.eid}/{r.rid} with no projective or "
                f"injective direction (stable dim {r.dim} from depth {r.cutoff})")
        return RepClassCertificate("notInRrep", tuple(witnesses), profiles,
                                   {"support": supp.describe()})
    if other:
        for r in other:
            witnesses.append(
                f"stable transition along ray {r.eid}/{r.rid} is not invertible; "
                f"the tail splits into infinitely many summands")
        return RepClassCertificate("notInRrep", tuple(witnesses), profiles,
                                   {"support": supp.describe()})
    if cross:
        for c in cross:
            a = q._crossing_arrow(c.eid, c.cid, c.cutoff)
            base = a.label.replace(str(c.cutoff), "n")
            witnesses.append(
                f"nonzero gluing arrows {base} for all n >= {c.cutoff} "
                f"(family {c.eid}/{c.cid}, checked at depths {c.cutoff},{c.cutoff+1})")
        return RepClassCertificate("notInRrep", tuple(witnesses), profiles,
                                   {"support": supp.describe()})

    kinds = {r.kind for p in profiles for r in p.rays if r.dim > 0}
    if not kinds:
        verdict = "fd"
    elif kinds == {"P"}:
        verdict = "fp"
    elif kinds == {"I"}:
        verdict = "fc"
    else:
        verdict = "rrep"
    ev = {"support": supp.describe(),
          "checkedDepths": [list(p.checked_depths) for p in profiles],
          "rays": [[r.eid, r.rid, r.kind, r.dim, r.status] for p in profiles
                   for r in p.rays]}
    return RepClassCertificate(verdict, (), profiles, ev)


# ---------------------------------------------------------------------------
# structural decompositions of rrep objects


def _shrunk_tail_start(m: Rep, prof: RayProfile, floor: int) -> int:
    """Walk a stable ray down: smallest t >= floor with periodic band data."""
    q = m.quiver
    end = q.end(prof.eid)
    stable_dim = prof.dim
    stable_tr = prof.transition.entries if prof.transition is not None else None
    t = prof.cutoff
    while t > floor:
        s = t - 1
        if m.dim(end.vertex(prof.rid, s)) != stable_dim:
            break
        a = _ray_transition(q, end, prof.rid, s)
        tr = m.mat(a).entries if a is not None else None
        if tr != stable_tr:
            break
        t = s
    return t


def _nonzero_ray_profiles(profiles, kind):
    return [r for p in profiles for r in p.rays if r.kind == kind and r.dim > 0]


def _tails_set(q, starts) -> VertexSet:
    return VertexSet.make(q, (), [(eid, rid, t) for (eid, rid, t) in starts])


def _supporting_arrows_between(m: Rep, src_set: VertexSet, dst_set: VertexSet,
                               probe_depth: int):
    """Arrows x→y with x in src_set, y in dst_set and M(arrow) nonzero,
    scanned over the probe region; assumes periodicity beyond it."""
    q = m.quiver
    out = []
    for v in src_set.members(probe_depth):
        for a in q.out_arrows(v):
            if dst_set.contains(a.dst) and not m.mat(a).is_zero():
                out.append(a)
    return out


@dataclass
class PFIDecomposition:
    sigmaP: VertexSet
    sigmaI: VertexSet
    omegaCore: VertexSet
    projPart: Rep
    corePart: Rep
    injPart: Rep
    certificate: dict


def pfi_decompose(m: Rep, budget: Optional[int] = None) -> PFIDecomposition:
    cert = classify_membership(m, budget)
    if not cert.is_in_rrep():
        raise ValueError(f"pfi_decompose needs an rrep object, got {cert.verdict}")
    q = m.quiver
    supp = support_exact(m, cert.profiles)
    pstarts = {}
    istarts = {}
    for p in cert.profiles:
        for r in p.rays:
            if r.dim == 0:
                continue
            floor = 0
            for (eid, rid, t0) in supp.tails:
                if (eid, rid) == (r.eid, r.rid):
                    floor = t0
            t = _shrunk_tail_start(m, r, floor)
            if r.kind == "P":
                pstarts[(r.eid, r.rid)] = t
            else:
                istarts[(r.eid, r.rid)] = t

    def build():
        sp = _tails_set(q, [(e, rr, t) for (e, rr), t in sorted(pstarts.items())])
        si = _tails_set(q, [(e, rr, t) for (e, rr), t in sorted(istarts.items())])
        return sp, si

    base_probe = max([p.cutoff for p in cert.profiles], default=0) + 2
    sigmaP, sigmaI = build()
    # gluing arrows must not run from the injective part into the projective part
    for _ in range(base_probe + 2):
        probe = max([base_probe] + list(pstarts.values()) + list(istarts.values())) + 2
        viol = _supporting_arrows_between(m, sigmaI, sigmaP, probe)
        if not viol:
            break
        a = viol[0]
        li, lp = q.locate(a.src), q.locate(a.dst)
        istarts[(li[0], li[1])] = max(istarts[(li[0], li[1])], li[2] + 1)
        pstarts[(lp[0], lp[1])] = max(pstarts[(lp[0], lp[1])], lp[2] + 1)
        sigmaP, sigmaI = build()
    core = supp.difference(sigmaP.union(sigmaI))
    while core.is_finite and not core.explicit and (pstarts or istarts):
        # keep the core non-empty by retracting every tail one band
        for k in pstarts:
            pstarts[k] += 1
        for k in istarts:
            istarts[k] += 1
        sigmaP, sigmaI = build()
        core = supp.difference(sigmaP.union(sigmaI))
    return PFIDecomposition(
        sigmaP, sigmaI, core,
        restrict(m, sigmaP), restrict(m, core), restrict(m, sigmaI),
        {"probeDepth": probe, "support": supp.describe()})


def standard_ext_region(m: Rep, budget: Optional[int] = None):
    """(Omega, sub, quot) with sub = M_Omega fp and quot = M/M_Omega fc."""
    cert = classify_membership(m, budget)
    if not cert.is_in_rrep():
        raise ValueError(f"standard_ext needs an rrep object, got {cert.verdict}")
    q = m.quiver
    supp = support_exact(m, cert.profiles)
    istarts = []
    for p in cert.profiles:
        for r in p.rays:
            if r.dim == 0 or r.kind != "I":
                continue
            floor = 0
            for (eid, rid, t0) in supp.tails:
                if (eid, rid) == (r.eid, r.rid):
                    floor = t0
            istarts.append((r.eid, r.rid, _shrunk_tail_start(m, r, floor)))
    sigmaI = _tails_set(q, istarts)
    omega = supp.difference(sigmaI)
    return omega, restrict(m, omega), restrict(m, sigmaI)


def tail_split(m: Rep, budget: Optional[int] = None):
    """(Omega, projective tail, fd head) for a finitely presented object."""
    cert = classify_membership(m, budget)
    if cert.verdict not in ("fp", "fd"):
        raise ValueError(f"tail_split needs an fp object, got {cert.verdict}")
    q = m.quiver
    supp = support_exact(m, cert.profiles)
    starts = []
    for p in cert.profiles:
        for r in p.rays:
            if r.dim == 0:
                continue
            floor = 0
            for (eid, rid, t0) in supp.tails:
                if (eid, rid) == (r.eid, r.rid):
                    floor = t0
            starts.append([r.eid, r.rid, _shrunk_tail_start(m, r, floor)])
    omega = _tails_set(q, [tuple(s) for s in starts])
    head_region = supp.difference(omega)
    if not head_region.explicit and starts:
        # head must be nonzero: retract every tail one band
        for s in starts:
            s[2] += 1
        omega = _tails_set(q, [tuple(s) for s in starts])
        head_region = supp.difference(omega)
    return omega, restrict(m, omega), restrict(m, head_region)


def is_doubly_infinite(m: Rep, budget: Optional[int] = None) -> bool:
    cert = classify_membership(m, budget)
    if not cert.is_in_rrep():
        raise ValueError("not an rrep object")
    kinds = {r.kind for p in cert.profiles for r in p.rays if r.dim > 0}
    return "P" in kinds and "I" in kinds


# ---------------------------------------------------------------------------
# serialization helpers (shared with io)


def _mat_json(m: Mat) -> list:
    return [[str(x) for x in row] for row in m.entries]


def _region_dict(region: VertexSet) -> dict:
    q = region.quiver
    return {"explicit": [q.vertex_str(v) for v in sorted(region.explicit, key=vkey)],
            "tails": [[eid, rid, t0] for (eid, rid, t0) in region.tails]}


def _path_dict(q, p: Path) -> dict:
    return {"src": q.vertex_str(p.src), "arrows": [a.label for a in p.arrows]}


def _pm_dict(pm: PathMatrix) -> dict:
    q = pm.quiver
    return {"side": pm.side,
            "domain": [q.vertex_str(v) for v in pm.domain],
            "codomain": [q.vertex_str(v) for v in pm.codomain],
            "entries": [[[[str(c), _path_dict(q, p)] for (c, p) in combo]
                         for combo in row] for row in pm.entries]}
