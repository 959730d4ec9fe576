"""Heights of a matching and the winding of tree paths they encode.

Run: python3 demos/heights_and_winding.py
"""

from temperley import build_overlay, compute_heights, restrict, tree_to_matching, winding_heights, winding_turns
from temperley.fixtures import grid
from temperley.render import render_ascii
from temperley.sampler import wilson_sample

m = grid(4, 4)
h = restrict(build_overlay(m), 0, m.outer_face)
tree, _ = wilson_sample(m, 0, rng_seed=5)
field = compute_heights(tree_to_matching(tree, h), h)

print(render_ascii(m, tree=tree))
print("heights in quarter turns, first few diagonals:")
for line in field.lines()[:8]:
    print("  " + line)

out = tree.as_dict()


def ancestors(v):
    while v != 0:
        v = m.target(out[v])
        yield v


print("\nfrom -> to   turns  height difference")
for frm in (15, 12, 10, 7):
    for to in list(ancestors(frm))[:-1]:
        a = winding_turns(tree, m, frm, to)
        b = winding_heights(tree, m, frm, to, None, field)
        print(f"{frm:>4} -> {to:<4} {str(a):>5}  {str(b):>5}")
        assert a == b
