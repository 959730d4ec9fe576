"""Walk through the tree <-> matching correspondence on a small weighted map.

Run: python3 demos/bijection_tour.py
"""

from temperley import (build_overlay, count_arborescences, enumerate_arborescences, enumerate_matchings,
                       matching_to_tree, matching_weight_sum, restrict, tree_to_matching)
from temperley.fixtures import k4
from temperley.render import render_ascii

m = k4()
root, face = 0, m.outer_face
h = restrict(build_overlay(m), root, face)

print(f"K4 with mixed weights: {len(m.vertices)} vertices, {len(m.edges)} edges, {len(m.faces)} faces")
print(f"weighted trees into v*={root}:         {count_arborescences(m, root)}")
print(f"weighted matchings of H(v*={root}, f*={face}): {matching_weight_sum(h)}")

trees, _ = enumerate_arborescences(m, root)
matchings, _ = enumerate_matchings(h)
print(f"{len(trees)} trees, {len(matchings)} matchings")

t = max(trees, key=lambda t: t.weight(m))
mt = tree_to_matching(t, h)
print("\nheaviest tree, weight", t.weight(m))
print(t.to_text())
print("its matching:")
print(mt.to_text())
assert matching_to_tree(mt, h) == t
print("mapping the matching back gives the same tree")

print("\nevery link of every matching, checked both ways:",
      all(tree_to_matching(matching_to_tree(x, h), h) == x for x in matchings))

print("\ngrid picture of a 3x3 tree:")
from temperley.fixtures import grid  # noqa: E402
from temperley.sampler import wilson_sample  # noqa: E402

g = grid(3, 3)
tree, _ = wilson_sample(g, 0, rng_seed=11)
print(render_ascii(g, tree=tree))
