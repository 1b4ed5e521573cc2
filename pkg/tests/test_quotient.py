import pytest

from etsemi.errors import HypothesisError, NormalityError
from etsemi.families import builtin_graph, subdivided_double, wreath
from etsemi.graph import cycle_graph, is_connected
from etsemi.perm import GeneratedGroup, Permutation
from etsemi.quotient import action_kernel, check_normal, lift_semiregular, quotient_by, quotient_valency_check
from etsemi.semireg import induced_on_double
from etsemi.symmetry import automorphism_group
from oracles import to_nx

import networkx as nx


def dihedral(n):
    return GeneratedGroup(n, [Permutation([(i + 1) % n for i in range(n)]),
                              Permutation([(-i) % n for i in range(n)])])


def wreath_subgroup(n):
    """Z_2 wr D_2n acting on W(n, 2): swaps of one twin pair, rotation and reflection of the cycle."""
    g, lab = wreath(n)
    size = 2 * n
    swap0 = Permutation.from_cycles(size, (lab.vertex_of[(0, 0)], lab.vertex_of[(0, 1)]))
    rot = Permutation([lab.vertex_of[((v // 2 + 1) % n, v % 2)] for v in range(size)])
    ref = Permutation([lab.vertex_of[((-(v // 2)) % n, v % 2)] for v in range(size)])
    return g, lab, GeneratedGroup(size, [swap0, rot, ref])


def all_twin_swaps(lab, size):
    img = list(range(size))
    for a, b in lab.twin_pairs():
        img[a], img[b] = b, a
    return Permutation(img)


class TestQuotient:
    def test_trivial_normal(self):
        g = builtin_graph("petersen")
        aut = automorphism_group(g)
        qr = quotient_by(g, aut, GeneratedGroup.trivial(g.n))
        assert qr.quotient.edges() == g.edges()
        assert qr.kernel.order() == 1 and qr.induced.order() == 120

    def test_w4_twin_collapse(self):
        g, lab, amb = wreath_subgroup(4)
        assert amb.order() == 128
        normal = GeneratedGroup(8, [all_twin_swaps(lab, 8)])
        qr = quotient_by(g, amb, normal)
        assert nx.is_isomorphic(to_nx(qr.quotient), nx.cycle_graph(4))
        assert sorted(map(sorted, qr.blocks)) == sorted(sorted(p) for p in lab.twin_pairs())
        for v in range(8):
            rec = quotient_valency_check(qr, g, v)
            assert rec.quotient_valency == 2 and rec.kernel_local_orbit_count % 2 == 0

    def test_twin_swap_product_not_normal_in_full_aut(self):
        g, lab = wreath(4)
        with pytest.raises(NormalityError):
            quotient_by(g, automorphism_group(g), GeneratedGroup(8, [all_twin_swaps(lab, 8)]))

    def test_c6_antipodal(self):
        d12 = dihedral(6)
        rot3 = Permutation([(i + 3) % 6 for i in range(6)])
        qr = quotient_by(cycle_graph(6), d12, GeneratedGroup(6, [rot3]))
        assert qr.quotient.n == 3 and qr.quotient.edge_count == 3
        assert quotient_valency_check(qr, cycle_graph(6), 0).quotient_valency == 2

    def test_trivial_normal_valency(self):
        g = builtin_graph("K3,3")
        qr = quotient_by(g, automorphism_group(g), GeneratedGroup.trivial(6))
        rec = quotient_valency_check(qr, g, 0)
        assert rec.quotient_valency == 3 and rec.kernel_local_orbit_count == 3

    def test_not_contained(self):
        rot = GeneratedGroup(6, [Permutation([(i + 1) % 6 for i in range(6)])])
        with pytest.raises(NormalityError):
            check_normal(rot, dihedral(6))

    def test_connected_quotient(self):
        g, lab, amb = wreath_subgroup(6)
        qr = quotient_by(g, amb, GeneratedGroup(12, [all_twin_swaps(lab, 12)]))
        assert is_connected(qr.quotient)

    def test_kernel_fixes_blocks(self):
        g, lab, amb = wreath_subgroup(5)
        blocks = [list(p) for p in lab.twin_pairs()]
        k = action_kernel(amb, blocks)
        assert k.order() == 32
        for h in k.iter_elements():
            assert all({h(x) for x in b} == set(b) for b in blocks)


class TestCoprimeLift:
    def test_w6_order3(self):
        g, lab = wreath(6)
        aut = automorphism_group(g)
        twins = GeneratedGroup(12, [Permutation.from_cycles(12, p) for p in lab.twin_pairs()])
        qr = quotient_by(g, aut, twins)
        assert qr.kernel.order() == 64
        # rotation by two steps on the quotient hexagon, in kernel-orbit indices
        blocks = qr.kernel.orbits()
        pos = {lab.label(b[0])[0]: k for k, b in enumerate(blocks)}
        induced = Permutation([pos[(lab.label(b[0])[0] + 2) % 6] for b in blocks])
        lift = lift_semiregular(aut, qr.kernel, induced, 3)
        assert lift.element.order() == 3
        assert lift.element in aut and not lift.element.fixed_points()
        assert lift.route in ("power", "coset-scan")

    def test_dd_w3_endgame_shape(self):
        # DD(W(3,2)) with Z_2 wr Aut(W(3,2)); the kernel on the twin pairs is a 2-group
        base = wreath(3)[0]
        sigma, lab = subdivided_double(base)
        base_aut = automorphism_group(base)
        gens = [induced_on_double(lab, s, sigma.n) for s in base_aut.generators]
        x = lab.pair_vertices[(0, 0)]
        y = lab.pair_vertices[(0, 1)]
        gens.append(Permutation.from_cycles(sigma.n, (x, y)))
        amb = GeneratedGroup(sigma.n, gens)
        assert amb.order() == 3072
        pairs = GeneratedGroup(sigma.n, [Permutation.from_cycles(sigma.n, (lab.pair_vertices[(v, 0)],
                                                                          lab.pair_vertices[(v, 1)]))
                                         for v in range(base.n)])
        qr = quotient_by(sigma, amb, pairs)
        k_order = qr.kernel.order()
        assert k_order & (k_order - 1) == 0
        blocks = qr.kernel.orbits()
        block_of = {v: i for i, b in enumerate(blocks) for v in b}
        rot = Permutation([2 * ((v // 2 + 1) % 3) + v % 2 for v in range(6)])
        h = induced_on_double(lab, rot, sigma.n)
        induced = Permutation([block_of[h(b[0])] for b in blocks])
        lift = lift_semiregular(amb, qr.kernel, induced, 3)
        assert lift.element.order() == 3 and not lift.element.fixed_points()

    def test_trivial_kernel(self):
        d12 = dihedral(6)
        kernel = GeneratedGroup.trivial(6)
        rot2 = Permutation([(i + 2) % 6 for i in range(6)])
        lift = lift_semiregular(d12, kernel, rot2, 3)
        assert lift.element == rot2 and lift.route == "power"

    def test_coprimality(self):
        g, lab, amb = wreath_subgroup(4)
        kernel = GeneratedGroup(8, [all_twin_swaps(lab, 8)])
        with pytest.raises(HypothesisError):
            lift_semiregular(amb, kernel, Permutation([1, 0, 3, 2]), 2)
