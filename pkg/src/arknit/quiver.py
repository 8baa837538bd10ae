"""Quivers: finite user quivers and the infinite presets.

Infinite quivers exist only as presets (line, ray_in, ray_out, zigzag,
ladder).  Each preset exposes its "ends": periodic bands of vertices going to
infinity, with each ray in a band tagged by how a thin tail on it behaves
(P = projective direction, I = injective direction, bad = neither).  All
symbolic reasoning about infinite supports goes through this band structure.

Vertices are ints for integer-indexed presets, ("a", n)/("b", n) pairs for
the ladder, and arbitrary labels for finite quivers.  All enumerations sort
by vkey so results are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence


def vkey(v):
    """Total order on vertex identifiers across all supported shapes."""
    if isinstance(v, bool):
        raise TypeError("bool is not a vertex")
    if isinstance(v, int):
        return (0, "", v)
    if isinstance(v, str):
        return (1, v, 0)
    if isinstance(v, tuple) and len(v) == 2 and isinstance(v[0], str) and isinstance(v[1], int):
        return (2, v[0], v[1])
    raise TypeError(f"unsupported vertex identifier: {v!r}")


@dataclass(frozen=True, order=False)
class Arrow:
    src: object
    dst: object
    label: str

    def key(self):
        return (vkey(self.src), vkey(self.dst), self.label)

    def __lt__(self, other):
        return self.key() < other.key()


@dataclass(frozen=True)
class Path:
    """Directed path; arrows listed in traversal order.  Empty = trivial path."""

    src: object
    dst: object
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    def key(self):
        return tuple(a.key() for a in self.arrows)

    def then(self, other: "Path") -> "Path":
        if self.dst != other.src:
            raise ValueError("paths do not compose")
        return Path(self.src, other.dst, self.arrows + other.arrows)

    def __lt__(self, other):
        return self.key() < other.key()


def trivial_path(v) -> Path:
    return Path(v, v, ())


class QuiverBase:
    """Shared behaviour; concrete quivers implement the local arrow structure."""

    is_finite = False
    name = "?"

    # ---- local structure ----
    def contains(self, v) -> bool:
        raise NotImplementedError

    def out_arrows(self, v):
        raise NotImplementedError

    def in_arrows(self, v):
        raise NotImplementedError

    def reaches(self, x, y) -> bool:
        """True iff there is a (possibly trivial) path x ~> y."""
        raise NotImplementedError

    def opposite(self) -> "QuiverBase":
        return OppositeQuiver(self)

    # ---- ends (empty for finite quivers) ----
    def ends(self):
        return ()

    def end(self, eid):
        for e in self.ends():
            if e.eid == eid:
                return e
        raise KeyError(eid)

    def locate(self, v):
        """(eid, rid, depth) if v sits on an end ray, else None."""
        return None

    def _tail_str(self, eid, rid, t0) -> str:
        return f"{eid}/{rid} depth >= {t0}"

    # ---- closures ----
    def succ_closure(self, vs) -> "VertexSet":
        raise NotImplementedError

    def pred_closure(self, vs) -> "VertexSet":
        raise NotImplementedError

    # ---- paths ----
    def _pathlen_cap(self, x, y) -> int:
        return 10 * 16

    def paths_between(self, x, y, cap: Optional[int] = None):
        """All paths x ~> y, canonically ordered (trivial path first)."""
        if not (self.contains(x) and self.contains(y)):
            raise ValueError(f"vertex outside quiver: {x!r} or {y!r}")
        if cap is None:
            cap = self._pathlen_cap(x, y)
        out = []
        if not self.reaches(x, y):
            return out
        stack = [(x, ())]
        while stack:
            v, arrows = stack.pop()
            if len(arrows) > cap:
                raise ValueError("path search exceeded hop budget; "
                                 "interval-finiteness violated or cap too small")
            if v == y:
                out.append(Path(x, y, arrows))
            nxt = [a for a in self.out_arrows(v) if self.reaches(a.dst, y)]
            for a in sorted(nxt, reverse=True):
                stack.append((a.dst, arrows + (a,)))
        out.sort()
        return out

    def path_count_bound(self) -> Optional[int]:
        """Global bound on |paths(x, y)| over all pairs, None if unbounded."""
        raise NotImplementedError

    def has_left_infinite_path(self) -> bool:
        return any(r.kind == "I" for e in self.ends() for r in e.rays)

    def has_right_infinite_path(self) -> bool:
        return any(r.kind == "P" for e in self.ends() for r in e.rays)

    def ray_query(self):
        return (self.has_left_infinite_path(), self.has_right_infinite_path(),
                self.path_count_bound())

    # ---- formatting ----
    def vertex_str(self, v) -> str:
        return str(v)

    def parse_vertex(self, s: str):
        raise NotImplementedError

    def spec_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Ray:
    rid: str
    kind: str  # 'P' | 'I' | 'bad'


class End:
    """One periodic infinite direction of a preset quiver."""

    def __init__(self, quiver, eid, rays, crossings=()):
        self.quiver = quiver
        self.eid = eid
        self.rays = tuple(rays)
        self.crossings = tuple(crossings)  # (cid, src_rid, dst_rid)

    def ray(self, rid) -> Ray:
        for r in self.rays:
            if r.rid == rid:
                return r
        raise KeyError(rid)

    def vertex(self, rid, t):
        return self.quiver._end_vertex(self.eid, rid, t)

    def band(self, t):
        return tuple(self.vertex(r.rid, t) for r in self.rays)

    def band_arrows(self, t):
        """Arrows with both endpoints inside bands t and t+1."""
        verts = set(self.band(t)) | set(self.band(t + 1))
        arrows = []
        for v in sorted(verts, key=vkey):
            for a in self.quiver.out_arrows(v):
                if a.dst in verts:
                    arrows.append(a)
        return sorted(arrows)

    def crossing_arrow(self, cid, t) -> Arrow:
        return self.quiver._crossing_arrow(self.eid, cid, t)


def _arrows_sorted(arrows):
    return sorted(arrows)


# ---------------------------------------------------------------------------
# finite quivers


@dataclass(frozen=True)
class FiniteQuiver(QuiverBase):
    vertices: tuple
    arrows: tuple

    is_finite = True
    name = "finite"

    def __post_init__(self):
        seen = set()
        for a in self.arrows:
            if a.label in seen:
                raise ValueError(f"duplicate arrow label {a.label}")
            seen.add(a.label)
            if a.src not in self.vertices or a.dst not in self.vertices:
                raise ValueError(f"arrow {a.label} endpoint outside vertex set")
        # interval-finiteness requires acyclicity
        color = {}

        def visit(v):
            color[v] = 1
            for a in self.arrows:
                if a.src != v:
                    continue
                c = color.get(a.dst)
                if c == 1:
                    raise ValueError("quiver has an oriented cycle; "
                                     "only interval-finite quivers are supported")
                if c is None:
                    visit(a.dst)
            color[v] = 2

        for v in self.vertices:
            if v not in color:
                visit(v)

    @staticmethod
    def build(vertices, arrows) -> "FiniteQuiver":
        """arrows: iterable of (src, dst) or (src, dst, label)."""
        vs = tuple(sorted(vertices, key=vkey))
        out = []
        counts = {}
        for spec in arrows:
            if len(spec) == 2:
                s, d = spec
                k = counts.get((s, d), 0)
                counts[(s, d)] = k + 1
                lbl = f"{s}>{d}" + (f"#{k}" if k else "")
            else:
                s, d, lbl = spec
            out.append(Arrow(s, d, str(lbl)))
        return FiniteQuiver(vs, tuple(sorted(out)))

    def contains(self, v):
        return v in self.vertices

    def out_arrows(self, v):
        return [a for a in self.arrows if a.src == v]

    def in_arrows(self, v):
        return [a for a in self.arrows if a.dst == v]

    def reaches(self, x, y):
        seen = {x}
        stack = [x]
        while stack:
            v = stack.pop()
            if v == y:
                return True
            for a in self.out_arrows(v):
                if a.dst not in seen:
                    seen.add(a.dst)
                    stack.append(a.dst)
        return False

    def _pathlen_cap(self, x, y):
        return len(self.vertices) + 1

    def path_count_bound(self):
        best = 0
        for x in self.vertices:
            for y in self.vertices:
                try:
                    n = len(self.paths_between(x, y))
                except ValueError:
                    return None
                best = max(best, n)
        return best

    def succ_closure(self, vs):
        seen = set()
        stack = [v for v in vs]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(a.dst for a in self.out_arrows(v))
        return VertexSet.make(self, seen)

    def pred_closure(self, vs):
        seen = set()
        stack = [v for v in vs]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(a.src for a in self.in_arrows(v))
        return VertexSet.make(self, seen)

    def parse_vertex(self, s):
        for v in self.vertices:
            if self.vertex_str(v) == s:
                return v
        raise ValueError(f"unknown vertex {s!r}")

    def spec_dict(self):
        return {"vertices": [self.vertex_str(v) for v in self.vertices],
                "arrows": [[self.vertex_str(a.src), self.vertex_str(a.dst), a.label]
                           for a in self.arrows]}


def linear_quiver(n: int) -> FiniteQuiver:
    """Type A_n with linear orientation 1 -> 2 -> ... -> n."""
    return FiniteQuiver.build(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def kronecker_quiver() -> FiniteQuiver:
    return FiniteQuiver.build([1, 2], [(1, 2, "alpha"), (1, 2, "beta")])


# ---------------------------------------------------------------------------
# integer-indexed presets


class _IntPreset(QuiverBase):
    def contains(self, v):
        return isinstance(v, int) and not isinstance(v, bool) and self._in_range(v)

    def _in_range(self, v):
        return True

    def parse_vertex(self, s):
        v = int(s)
        if not self.contains(v):
            raise ValueError(f"vertex {v} outside preset {self.name}")
        return v

    def spec_dict(self):
        return {"preset": self.name}


@dataclass(frozen=True)
class LineQuiver(_IntPreset):
    """Vertices Z, arrows n+1 -> n."""

    name = "line"

    def out_arrows(self, v):
        return [Arrow(v, v - 1, f"{v}>{v-1}")]

    def in_arrows(self, v):
        return [Arrow(v + 1, v, f"{v+1}>{v}")]

    def reaches(self, x, y):
        return x >= y

    def _pathlen_cap(self, x, y):
        return abs(x - y) + 4

    def path_count_bound(self):
        return 1

    def ends(self):
        return (End(self, "neg", [Ray("v", "P")]),
                End(self, "pos", [Ray("v", "I")]))

    def _end_vertex(self, eid, rid, t):
        return -t if eid == "neg" else t + 1

    def locate(self, v):
        return ("neg", "v", -v) if v <= 0 else ("pos", "v", v - 1)

    def _tail_str(self, eid, rid, t0):
        return f"n <= {-t0}" if eid == "neg" else f"n >= {t0 + 1}"

    def succ_closure(self, vs):
        vs = list(vs)
        if not vs:
            return VertexSet.make(self, ())
        m = max(vs)
        expl = set(range(1, m + 1))
        return VertexSet.make(self, expl, [("neg", "v", max(0, -m))])

    def pred_closure(self, vs):
        vs = list(vs)
        if not vs:
            return VertexSet.make(self, ())
        m = min(vs)
        expl = set(range(m, 1))
        return VertexSet.make(self, expl, [("pos", "v", max(0, m - 1))])


@dataclass(frozen=True)
class RayOutQuiver(_IntPreset):
    """Vertices N, arrows n -> n+1."""

    name = "ray_out"

    def _in_range(self, v):
        return v >= 0

    def out_arrows(self, v):
        return [Arrow(v, v + 1, f"{v}>{v+1}")]

    def in_arrows(self, v):
        return [Arrow(v - 1, v, f"{v-1}>{v}")] if v >= 1 else []

    def reaches(self, x, y):
        return x <= y

    def _pathlen_cap(self, x, y):
        return abs(x - y) + 4

    def path_count_bound(self):
        return 1

    def ends(self):
        return (End(self, "inf", [Ray("v", "P")]),)

    def _end_vertex(self, eid, rid, t):
        return t

    def locate(self, v):
        return ("inf", "v", v)

    def _tail_str(self, eid, rid, t0):
        return f"n >= {t0}"

    def succ_closure(self, vs):
        vs = list(vs)
        if not vs:
            return VertexSet.make(self, ())
        return VertexSet.make(self, (), [("inf", "v", min(vs))])

    def pred_closure(self, vs):
        vs = list(vs)
        if not vs:
            return VertexSet.make(self, ())
        return VertexSet.make(self, set(range(0, max(vs) + 1)))


@dataclass(frozen=True)
class RayInQuiver(_IntPreset):
    """Vertices N, arrows n+1 -> n (the ... -> 2 -> 1 -> 0 preset)."""

    name = "ray_in"

    def _in_range(self, v):
        return v >= 0

    def out_arrows(self, v):
        return [Arrow(v, v - 1, f"{v}>{v-1}")] if v >= 1 else []

    def in_arrows(self, v):
        return [Arrow(v + 1, v, f"{v+1}>{v}")]

    def reaches(self, x, y):
        return x >= y

    def _pathlen_cap(self, x, y):
        return abs(x - y) + 4

    def path_count_bound(self):
        return 1

    def ends(self):
        return (End(self, "inf", [Ray("v", "I")]),)

    def _end_vertex(self, eid, rid, t):
        return t

    def locate(self, v):
        return ("inf", "v", v)

    def _tail_str(self, eid, rid, t0):
        return f"n >= {t0}"

    def succ_closure(self, vs):
        vs = list(vs)
        if not vs:
            return VertexSet.make(self, ())
        return VertexSet.make(self, set(range(0, max(vs) + 1)))

    def pred_closure(self, vs):
        vs = list(vs)
        if not vs:
            return VertexSet.make(self, ())
        return VertexSet.make(self, (), [("inf", "v", min(vs))])


@dataclass(frozen=True)
class ZigzagQuiver(_IntPreset):
    """Vertices N; odd vertices are sources: 1->0, 1->2, 3->2, 3->4, ..."""

    name = "zigzag"

    def _in_range(self, v):
        return v >= 0

    def out_arrows(self, v):
        if v % 2 == 1:
            return [Arrow(v, v - 1, f"{v}>{v-1}"), Arrow(v, v + 1, f"{v}>{v+1}")]
        return []

    def in_arrows(self, v):
        if v % 2 == 0:
            out = []
            if v >= 1:
                out.append(Arrow(v - 1, v, f"{v-1}>{v}"))
            out.append(Arrow(v + 1, v, f"{v+1}>{v}"))
            return out
        return []

    def reaches(self, x, y):
        return x == y or (x % 2 == 1 and abs(x - y) == 1)

    def _pathlen_cap(self, x, y):
        return 3

    def path_count_bound(self):
        return 1

    def ends(self):
        return (End(self, "inf", [Ray("even", "bad"), Ray("odd", "bad")]),)

    def _end_vertex(self, eid, rid, t):
        return 2 * t if rid == "even" else 2 * t + 1

    def locate(self, v):
        return ("inf", "even", v // 2) if v % 2 == 0 else ("inf", "odd", v // 2)

    def _tail_str(self, eid, rid, t0):
        if rid == "even":
            return f"even n >= {2 * t0}"
        return f"odd n >= {2 * t0 + 1}"

    def succ_closure(self, vs):
        expl = set()
        for v in vs:
            expl.add(v)
            if v % 2 == 1:
                expl.add(v - 1)
                expl.add(v + 1)
        return VertexSet.make(self, expl)

    def pred_closure(self, vs):
        expl = set()
        for v in vs:
            expl.add(v)
            if v % 2 == 0:
                if v >= 1:
                    expl.add(v - 1)
                expl.add(v + 1)
        return VertexSet.make(self, expl)


@dataclass(frozen=True)
class LadderQuiver(QuiverBase):
    """Vertices a_n, b_n (n in N); arrows a_{n+1}->a_n, b_n->b_{n+1}, a_n->b_n."""

    name = "ladder"

    def contains(self, v):
        return (isinstance(v, tuple) and len(v) == 2 and v[0] in ("a", "b")
                and isinstance(v[1], int) and not isinstance(v[1], bool) and v[1] >= 0)

    def out_arrows(self, v):
        tag, n = v
        if tag == "a":
            out = []
            if n >= 1:
                out.append(Arrow(v, ("a", n - 1), f"a{n}>a{n-1}"))
            out.append(Arrow(v, ("b", n), f"a{n}>b{n}"))
            return out
        return [Arrow(v, ("b", n + 1), f"b{n}>b{n+1}")]

    def in_arrows(self, v):
        tag, n = v
        if tag == "a":
            return [Arrow(("a", n + 1), v, f"a{n+1}>a{n}")]
        out = []
        if n >= 1:
            out.append(Arrow(("b", n - 1), v, f"b{n-1}>b{n}"))
        out.append(Arrow(("a", n), v, f"a{n}>b{n}"))
        return sorted(out)

    def reaches(self, x, y):
        (tx, m), (ty, k) = x, y
        if tx == "a" and ty == "a":
            return m >= k
        if tx == "a" and ty == "b":
            return True
        if tx == "b" and ty == "b":
            return m <= k
        return False

    def _pathlen_cap(self, x, y):
        return x[1] + y[1] + 6

    def path_count_bound(self):
        return None  # |paths(a_m, b_k)| = min(m, k) + 1, unbounded

    def ends(self):
        return (End(self, "inf", [Ray("a", "I"), Ray("b", "P")],
                    crossings=[("rung", "a", "b")]),)

    def _end_vertex(self, eid, rid, t):
        return (rid, t)

    def _crossing_arrow(self, eid, cid, t):
        return Arrow(("a", t), ("b", t), f"a{t}>b{t}")

    def locate(self, v):
        return ("inf", v[0], v[1])

    def _tail_str(self, eid, rid, t0):
        return f"{rid}_n, n >= {t0}"

    def vertex_str(self, v):
        return f"{v[0]}{v[1]}"

    def parse_vertex(self, s):
        if s and s[0] in ("a", "b") and s[1:].isdigit():
            return (s[0], int(s[1:]))
        raise ValueError(f"bad ladder vertex {s!r}")

    def succ_closure(self, vs):
        expl = set()
        tails = []
        for v in vs:
            tag, n = v
            if tag == "a":
                expl.update(("a", j) for j in range(0, n + 1))
                tails.append(("inf", "b", 0))
            else:
                tails.append(("inf", "b", n))
        return VertexSet.make(self, expl, tails)

    def pred_closure(self, vs):
        expl = set()
        tails = []
        for v in vs:
            tag, n = v
            if tag == "a":
                tails.append(("inf", "a", n))
            else:
                expl.update(("b", j) for j in range(0, n + 1))
                tails.append(("inf", "a", 0))
        return VertexSet.make(self, expl, tails)

    def spec_dict(self):
        return {"preset": self.name}


@dataclass(frozen=True)
class OppositeQuiver(QuiverBase):
    base: QuiverBase

    @property
    def name(self):
        return f"op({self.base.name})"

    @property
    def is_finite(self):
        return self.base.is_finite

    def contains(self, v):
        return self.base.contains(v)

    def out_arrows(self, v):
        return sorted(Arrow(a.dst, a.src, a.label) for a in self.base.in_arrows(v))

    def in_arrows(self, v):
        return sorted(Arrow(a.dst, a.src, a.label) for a in self.base.out_arrows(v))

    def reaches(self, x, y):
        return self.base.reaches(y, x)

    def opposite(self):
        return self.base

    def _pathlen_cap(self, x, y):
        return self.base._pathlen_cap(y, x)

    def path_count_bound(self):
        return self.base.path_count_bound()

    def ends(self):
        flip = {"P": "I", "I": "P", "bad": "bad"}
        out = []
        for e in self.base.ends():
            rays = [Ray(r.rid, flip[r.kind]) for r in e.rays]
            crossings = [(cid, dst, src) for (cid, src, dst) in e.crossings]
            out.append(End(self, e.eid, rays, crossings))
        return tuple(out)

    def _end_vertex(self, eid, rid, t):
        return self.base._end_vertex(eid, rid, t)

    def _crossing_arrow(self, eid, cid, t):
        a = self.base._crossing_arrow(eid, cid, t)
        return Arrow(a.dst, a.src, a.label)

    def locate(self, v):
        return self.base.locate(v)

    def _tail_str(self, eid, rid, t0):
        return self.base._tail_str(eid, rid, t0)

    def succ_closure(self, vs):
        s = self.base.pred_closure(vs)
        return VertexSet(self, s.explicit, s.tails)

    def pred_closure(self, vs):
        s = self.base.succ_closure(vs)
        return VertexSet(self, s.explicit, s.tails)

    def vertex_str(self, v):
        return self.base.vertex_str(v)

    def parse_vertex(self, s):
        return self.base.parse_vertex(s)

    def spec_dict(self):
        return {"opposite": self.base.spec_dict()}

    @property
    def vertices(self):
        return self.base.vertices

    @property
    def arrows(self):
        return tuple(sorted(Arrow(a.dst, a.src, a.label) for a in self.base.arrows))


PRESETS = {
    "line": LineQuiver,
    "ray_out": RayOutQuiver,
    "ray_in": RayInQuiver,
    "zigzag": ZigzagQuiver,
    "ladder": LadderQuiver,
}


# ---------------------------------------------------------------------------
# vertex sets with symbolic tails


@dataclass(frozen=True)
class VertexSet:
    """Finite explicit part plus ray tails (eid, rid, from_depth)."""

    quiver: QuiverBase
    explicit: frozenset
    tails: tuple

    @staticmethod
    def make(quiver, explicit=(), tails=()) -> "VertexSet":
        expl = set(explicit)
        best = {}
        for (eid, rid, t0) in tails:
            key = (eid, rid)
            best[key] = min(best.get(key, t0), t0)
        # absorb explicit vertices that extend a tail downward
        changed = True
        while changed:
            changed = False
            for (eid, rid), t0 in list(best.items()):
                end = quiver.end(eid)
                while t0 > 0 and end.vertex(rid, t0 - 1) in expl:
                    t0 -= 1
                    changed = True
                best[(eid, rid)] = t0
            # drop explicit vertices already covered by a tail
            for v in list(expl):
                loc = quiver.locate(v)
                if loc is not None:
                    eid, rid, t = loc
                    if (eid, rid) in best and t >= best[(eid, rid)]:
                        expl.discard(v)
        tails_n = tuple(sorted((eid, rid, t0) for (eid, rid), t0 in best.items()))
        return VertexSet(quiver, frozenset(expl), tails_n)

    def contains(self, v) -> bool:
        if v in self.explicit:
            return True
        loc = self.quiver.locate(v)
        if loc is None:
            return False
        eid, rid, t = loc
        return any(e == eid and r == rid and t >= t0 for (e, r, t0) in self.tails)

    @property
    def is_finite(self) -> bool:
        return not self.tails

    def members(self, depth_cap: int = 0):
        """Explicit part plus tail vertices up to depth_cap, sorted."""
        out = set(self.explicit)
        for (eid, rid, t0) in self.tails:
            end = self.quiver.end(eid)
            for t in range(t0, depth_cap + 1):
                out.add(end.vertex(rid, t))
        return sorted(out, key=vkey)

    def union(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.make(self.quiver, set(self.explicit) | set(other.explicit),
                              self.tails + other.tails)

    def intersect(self, other: "VertexSet") -> "VertexSet":
        expl = {v for v in self.explicit if other.contains(v)}
        expl |= {v for v in other.explicit if self.contains(v)}
        tails = []
        for (e1, r1, t1) in self.tails:
            for (e2, r2, t2) in other.tails:
                if (e1, r1) == (e2, r2):
                    tails.append((e1, r1, max(t1, t2)))
        return VertexSet.make(self.quiver, expl, tails)

    def difference(self, other: "VertexSet") -> "VertexSet":
        expl = {v for v in self.explicit if not other.contains(v)}
        tails = []
        for (eid, rid, t0) in self.tails:
            end = self.quiver.end(eid)
            cut = None
            for (e2, r2, t2) in other.tails:
                if (e2, r2) == (eid, rid):
                    cut = t2 if cut is None else min(cut, t2)
            # explicit members of `other` sitting on this tail punch holes
            holes = set()
            for v in other.explicit:
                loc = self.quiver.locate(v)
                if loc is not None and loc[0] == eid and loc[1] == rid and loc[2] >= t0:
                    if cut is None or loc[2] < cut:
                        holes.add(loc[2])
            if cut is not None:
                expl.update(end.vertex(rid, t) for t in range(t0, cut) if t not in holes)
            elif holes:
                top = max(holes)
                expl.update(end.vertex(rid, t) for t in range(t0, top + 1) if t not in holes)
                tails.append((eid, rid, top + 1))
            else:
                tails.append((eid, rid, t0))
        return VertexSet.make(self.quiver, expl, tails)

    def max_tail_depth(self) -> int:
        return max([t0 for (_, _, t0) in self.tails], default=0)

    def probe_depth(self) -> int:
        depths = [t0 for (_, _, t0) in self.tails]
        for v in self.explicit:
            loc = self.quiver.locate(v)
            if loc is not None:
                depths.append(loc[2])
        return max(depths, default=0)

    def describe(self) -> str:
        q = self.quiver
        parts = [q.vertex_str(v) for v in sorted(self.explicit, key=vkey)]
        parts += [q._tail_str(eid, rid, t0) for (eid, rid, t0) in self.tails]
        return "{" + ", ".join(parts) + "}"

    def is_closed(self, direction: str) -> bool:
        """direction 'successor' or 'predecessor'."""
        q = self.quiver
        probe = set(self.explicit)
        top = self.probe_depth() + 3
        for (eid, rid, t0) in self.tails:
            end = q.end(eid)
            probe.update(end.vertex(rid, t) for t in range(t0, top + 1))
        for v in probe:
            if not self.contains(v):
                continue
            nbrs = (q.out_arrows(v) if direction == "successor" else q.in_arrows(v))
            for a in nbrs:
                w = a.dst if direction == "successor" else a.src
                if not self.contains(w):
                    loc = q.locate(v)
                    if loc is not None and loc[2] >= top:
                        continue  # beyond probe; handled by periodic check below
                    return False
        return True


@dataclass(frozen=True)
class SubquiverClass:
    is_finite: bool
    top_finite: bool
    socle_finite: bool
    sources: tuple
    sinks: tuple
    witnesses: tuple


def closure(quiver: QuiverBase, vs: Iterable, direction: str) -> VertexSet:
    if direction == "successor":
        return quiver.succ_closure(vs)
    if direction == "predecessor":
        return quiver.pred_closure(vs)
    raise ValueError(f"direction must be successor/predecessor, got {direction!r}")


def _boundary_analysis(vset: VertexSet, mode: str):
    """Shared source/sink analysis.  mode='top' looks at sources, 'socle' at sinks."""
    q = vset.quiver
    T = vset.probe_depth() + 2
    probe = set(vset.explicit)
    for (eid, rid, t0) in vset.tails:
        end = q.end(eid)
        probe.update(end.vertex(rid, t) for t in range(t0, T + 1))
    probe = {v for v in probe if vset.contains(v)}

    def boundary_free(v):
        arrows = q.in_arrows(v) if mode == "top" else q.out_arrows(v)
        nb = [a.src if mode == "top" else a.dst for a in arrows]
        return all(not vset.contains(w) for w in nb)

    extremes = sorted((v for v in probe if boundary_free(v)), key=vkey)
    witnesses = []
    infinite = False
    for (eid, rid, t0) in vset.tails:
        end = q.end(eid)
        deep = end.vertex(rid, T + 1)
        if boundary_free(deep):
            infinite = True
            kind = "sources" if mode == "top" else "sinks"
            witnesses.append(f"infinitely many {kind}: {q._tail_str(eid, rid, t0)}")
    if infinite:
        return extremes, False, tuple(witnesses)

    # coverage: walk from the extreme vertices inside the set
    seen = set(extremes)
    stack = list(extremes)
    deepcap = T + 3
    while stack:
        v = stack.pop()
        arrows = q.out_arrows(v) if mode == "top" else q.in_arrows(v)
        for a in arrows:
            w = a.dst if mode == "top" else a.src
            if w in seen or not vset.contains(w):
                continue
            loc = q.locate(w)
            if loc is not None and loc[2] > deepcap:
                continue
            seen.add(w)
            stack.append(w)
    region = set(probe)
    for (eid, rid, t0) in vset.tails:
        end = q.end(eid)
        region.update(end.vertex(rid, t) for t in range(T + 1, deepcap + 1))
    region = {v for v in region if vset.contains(v)}
    uncovered = sorted((v for v in region if v not in seen), key=vkey)
    if uncovered:
        kind = "a source" if mode == "top" else "a sink"
        witnesses.append(
            f"vertex {q.vertex_str(uncovered[0])} is not reachable from {kind} of the subquiver")
        return extremes, False, tuple(witnesses)
    return extremes, True, tuple(witnesses)


def classify_subquiver(vset: VertexSet) -> SubquiverClass:
    sources, topf, w1 = _boundary_analysis(vset, "top")
    sinks, socf, w2 = _boundary_analysis(vset, "socle")
    return SubquiverClass(vset.is_finite, topf, socf, tuple(sources), tuple(sinks), w1 + w2)


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    quiver: QuiverBase
    vertices: tuple

    def contains(self, v):
        return v in self.vertices

    def arrows_within(self):
        vs = set(self.vertices)
        out = []
        for v in self.vertices:
            for a in self.quiver.out_arrows(v):
                if a.dst in vs:
                    out.append(a)
        return sorted(out)

    def diameter(self) -> int:
        return max(1, len(self.vertices))


def window(quiver: QuiverBase, seeds: Sequence, radius: int) -> Window:
    """Convex window: undirected ball of the given radius, closed under paths."""
    seeds = list(seeds)
    for s in seeds:
        if not quiver.contains(s):
            raise ValueError(f"seed {s!r} outside quiver")
    seen = set(seeds)
    frontier = list(seeds)
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for a in quiver.out_arrows(v):
                if a.dst not in seen:
                    seen.add(a.dst)
                    nxt.append(a.dst)
            for a in quiver.in_arrows(v):
                if a.src not in seen:
                    seen.add(a.src)
                    nxt.append(a.src)
        frontier = nxt
    # convexity: include every vertex on a path between window members
    changed = True
    while changed:
        changed = False
        verts = sorted(seen, key=vkey)
        for x in verts:
            for y in verts:
                if x == y or not quiver.reaches(x, y):
                    continue
                for p in quiver.paths_between(x, y):
                    for a in p.arrows:
                        if a.dst not in seen:
                            seen.add(a.dst)
                            changed = True
    return Window(quiver, tuple(sorted(seen, key=vkey)))
