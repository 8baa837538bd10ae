"""
Knitting translation-quiver components
======================================

Starting from a seed object, knitting alternates mesh completion and
translate steps to grow the component of the seed inside the translation
quiver.  Components are then classified by shape: preprojective,
preinjective, the doubly infinite strip, one-sided strips, or wings around
a doubly infinite payload.
"""

from arknit import (
    classify_component,
    dim_vector,
    knit,
    parse_quiver,
    projective_at,
    simple_at,
)
from arknit.io import component_dot

kron = parse_quiver({"preset": "kronecker"})
comp = knit(projective_at(kron, 2), 5)
print("Kronecker component from P_2, depth 5:")
for n in sorted(comp.nodes, key=lambda n: n.hops):
    mark = " P" if n.is_projective else ""
    print(f"  node {n.key}: dims {dim_vector(n.rep, (1, 2))}{mark}"
          f" [{n.status}]")
print("arrow multiplicities:", sorted(set(comp.arrows.values())),
      "tau links:", len(comp.tau_links))
print("tag:", classify_component(comp).tag)

# The same component renders to deterministic DOT: doubled arrows appear
# as parallel edges, translates as dashed back edges.
print()
print(component_dot(comp))

# An inward ray knits into the expected wedge of intervals; a simple seed
# in the middle of the line grows the doubly infinite strip.
ray = parse_quiver({"preset": "ray_in"})
print("ray component tag:",
      classify_component(knit(projective_at(ray, 0), 6)).tag)
line = parse_quiver({"preset": "line"})
print("line component tag:",
      classify_component(knit(simple_at(line, 0), 4)).tag)
