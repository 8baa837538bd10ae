"""
Quiver presets, ends and rays
=============================

Every quiver here is strongly locally finite: finitely many arrows touch
each vertex and any two vertices admit only finitely many paths.  Infinite
presets expose their infinite directions as "ends" made of rays, and each
ray is graded projective-like (P), injective-like (I), or bad (neither,
as on the zigzag) depending on which canonical objects live along it.
"""

from arknit import parse_quiver, ar_category_kind

# A finite quiver is just vertices and arrows.
a3 = parse_quiver({"preset": "linear", "n": 3})
print("A3 vertices:", list(a3.vertices))
print("A3 arrows:  ", [(a.src, a.dst, a.label) for v in a3.vertices
                       for a in a3.out_arrows(v)])

# The infinite presets: a two-sided line, two one-sided rays, a zigzag of
# sources and sinks, and a ladder whose rungs cross between two rays.
for name in ("line", "ray_in", "ray_out", "zigzag", "ladder"):
    q = parse_quiver({"preset": name})
    ends = {e.eid: [(r.rid, r.kind) for r in e.rays] for e in q.ends()}
    print(f"{name:8s} kind={ar_category_kind(q):8s} ends={ends}")

# ar_category_kind says on which side almost split sequences exist
# globally: "both" for finite and zigzag shapes, "left"/"right" for the
# one-sided rays, "neither" when both infinite directions are present.

# Vertices of infinite presets are plain integers (or (ray, index) pairs on
# the ladder); arrows carry stable string labels used in JSON files.
line = parse_quiver({"preset": "line"})
a = next(iter(line.out_arrows(1)))
print("line arrow out of 1:", (a.src, a.dst, a.label))
