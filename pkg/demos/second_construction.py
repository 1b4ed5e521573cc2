"""The 2-group on DD(W(2^n, 2)) and the fixed-point-free involution it contains.

The order and edge-transitivity come out as expected, but the element
w = z z^tau x^(2^(n-1)) moves every vertex, so the group is not free of
semiregular elements.
"""
from etsemi.constructions import build_lemma42, verify_lemma42

for n in (2, 3, 4):
    inst = build_lemma42(n)
    rep = verify_lemma42(inst)
    w = inst.z * inst.z.conjugate(inst.tau) * inst.x ** (2 ** (n - 1))
    print(f"n={n}: |G|={rep.data['order']}, edge-transitive={rep.checks['edge-transitive']}, "
          f"fixed-point-free involutions={rep.data['fixed_point_free_involutions']}, "
          f"w has order {w.order()} and {len(w.fixed_points())} fixed points")
    print("   failing checks:", ", ".join(rep.failures()))

inst = build_lemma42(2)
w = inst.z * inst.z.conjugate(inst.tau) * inst.x ** 2
names = {v: f"{{{inst.base_labels[a]},{inst.base_labels[b]}}}" for (a, b), v in inst.labeling.edge_vertices.items()}
names.update({v: f"({inst.base_labels[a]},{i})" for (a, i), v in inst.labeling.pair_vertices.items()})
print("\nw on the vertices of DD(W(4,2)), n=2:")
for cyc in w.cycles():
    print("  ", " <-> ".join(names[v] for v in cyc))
