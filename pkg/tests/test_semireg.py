import json

import pytest

from etsemi.constructions import build_lemma41
from etsemi.corpus import data_path
from etsemi.errors import HypothesisError
from etsemi.families import builtin_graph, complete_bipartite, subdivided_double, wreath
from etsemi.graph import bipartition, complete_graph, cycle_graph
from etsemi.perm import GeneratedGroup, Permutation, is_semiregular
from etsemi.semireg import (Outcome, UnworthyKind, classify_unworthy, corollary_part_preserving,
                            find_semiregular, part_preserving_certificate, power_order_dichotomy,
                            semiregular_outcome, solvable_order_p_semiregular_check, theorem_3valent,
                            theorem_4valent, verify_ve_semiregular)
from etsemi.symmetry import automorphism_group, is_edge_transitive, random_edge_transitive_subgroups


def agl15():
    return GeneratedGroup(5, [Permutation([(x + 1) % 5 for x in range(5)]),
                              Permutation([(2 * x) % 5 for x in range(5)])])


def sparse_dd_k44():
    return GeneratedGroup.from_json(json.loads(data_path("dd_k44_no_semiregular.json").read_text()))


class TestFind:
    def test_k34_none(self):
        g = complete_bipartite(3, 4)
        res = find_semiregular(automorphism_group(g), [range(7)])
        assert res.status == "none" and res.exhaustive and res.scanned == 144

    def test_k34_census(self):
        aut = automorphism_group(complete_bipartite(3, 4))
        census = sum(1 for h in aut.iter_elements() if h.order() in (2, 3))
        assert find_semiregular(aut).prime_order_count == census

    def test_k33(self):
        res = find_semiregular(automorphism_group(complete_bipartite(3, 3)))
        assert res.certificate is not None and res.certificate.validate()

    def test_k33_order3_exists(self):
        res = find_semiregular(automorphism_group(complete_bipartite(3, 3)), primes=[3])
        assert res.certificate.cycle_length == 3 and len(res.certificate.element.cycles()) == 2

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_wreath_parts(self, n):
        g = wreath(n)[0]
        bp = bipartition(g)
        res = find_semiregular(automorphism_group(g), [bp.part_a, bp.part_b])
        cert = res.certificate
        assert cert is not None and cert.element.preserves(bp.part_a) and cert.element.preserves(bp.part_b)

    def test_deterministic(self):
        aut = automorphism_group(builtin_graph("petersen"))
        a = find_semiregular(aut).certificate.element
        b = find_semiregular(aut).certificate.element
        assert a == b

    def test_cap_sampling_inconclusive_not_none(self):
        grp = build_lemma41(3).group
        res = find_semiregular(grp, cap=10, samples=200, seed=1)
        assert res.status == "inconclusive" and not res.exhaustive


class TestTheorem3:
    def test_k4(self):
        g = complete_graph(4)
        assert theorem_3valent(g, automorphism_group(g)).validate()

    def test_petersen_order5(self):
        g = builtin_graph("petersen")
        cert = theorem_3valent(g, automorphism_group(g))
        assert cert.cycle_length in (2, 5)
        c5 = find_semiregular(automorphism_group(g), primes=[5]).certificate
        assert c5.cycle_length == 5 and len(c5.element.cycles()) == 2

    def test_heawood_subgroups(self):
        g = builtin_graph("heawood")
        aut = automorphism_group(g)
        for h in random_edge_transitive_subgroups(g, aut, 5, seed=3):
            assert theorem_3valent(g, h).validate()

    def test_hypotheses(self):
        with pytest.raises(HypothesisError):
            theorem_3valent(complete_graph(5), automorphism_group(complete_graph(5)))


class TestTheorem4:
    def test_k5(self):
        out = theorem_4valent(complete_graph(5), automorphism_group(complete_graph(5)))
        assert out.kind is Outcome.SEMIREGULAR

    def test_w8_first_group(self):
        inst = build_lemma41(3)
        out = theorem_4valent(inst.graph, inst.group)
        assert out.kind is Outcome.WREATH and out.wreath_n == 8
        assert out.group_scan.status == "none"
        assert out.aut_certificate is not None and out.aut_certificate.validate()

    def test_dd_k44_sparse_group(self):
        g = builtin_graph("DD:K4,4")
        grp = sparse_dd_k44()
        assert grp.order() == 2304 and is_edge_transitive(g, grp)
        out = theorem_4valent(g, grp)
        assert out.kind is Outcome.DOUBLE
        assert out.base.n == 8 and out.base.valency() == 4
        assert out.aut_certificate.validate()

    def test_k34_refuted_outside_hypotheses(self):
        g = complete_bipartite(3, 4)
        out = semiregular_outcome(g, automorphism_group(g), aut_level=False)
        assert out.kind is Outcome.REFUTED
        with pytest.raises(HypothesisError):
            theorem_4valent(g, automorphism_group(g))


class TestCorollary:
    def test_k33(self):
        cert = corollary_part_preserving(complete_bipartite(3, 3))
        assert cert.cycle_length == 3

    def test_w8_twin_swap(self):
        cert, route = part_preserving_certificate(wreath(8)[0])
        assert route == "twin-swap" and cert.cycle_length == 2

    def test_dd_k44_induced(self):
        g = builtin_graph("DD:K4,4")
        cert, route = part_preserving_certificate(g)
        bp = bipartition(g)
        assert route == "induced-from-base"
        assert cert.element.preserves(bp.part_a) and cert.validate()

    def test_not_bipartite(self):
        with pytest.raises(HypothesisError):
            corollary_part_preserving(builtin_graph("petersen"))


class TestDichotomy:
    def test_k33(self):
        g = complete_bipartite(3, 3)
        assert power_order_dichotomy(g, automorphism_group(g), 0, 3).kind == "semiregular"

    def test_k44(self):
        g = complete_bipartite(4, 4)
        assert power_order_dichotomy(g, automorphism_group(g), 0, 2).kind == "semiregular"

    def test_w8_first_group_twins(self):
        inst = build_lemma41(3)
        d = power_order_dichotomy(inst.graph, inst.group, 0, 2)
        assert d.kind == "twins" and len(d.twins) == 2
        a, b = d.twins
        assert inst.graph.neighbor_set(a) == inst.graph.neighbor_set(b)

    def test_bad_power(self):
        with pytest.raises(HypothesisError):
            power_order_dichotomy(builtin_graph("petersen"), automorphism_group(builtin_graph("petersen")), 0, 2)


class TestUnworthy:
    def test_examples(self):
        assert classify_unworthy(wreath(7)[0]).n == 7
        res = classify_unworthy(subdivided_double(complete_graph(5))[0])
        assert res.kind is UnworthyKind.SUBDIVIDED_DOUBLE and res.base.n == 5
        assert classify_unworthy(builtin_graph("petersen")).kind is UnworthyKind.WORTHY

    def test_other(self):
        assert classify_unworthy(complete_bipartite(3, 4)).kind is UnworthyKind.OTHER


class TestVertexEdge:
    @pytest.mark.parametrize("name", ["C4", "W4", "K4,4", "Q4"])
    def test_examples(self, name):
        lam = builtin_graph(name)
        aut = automorphism_group(lam)
        h = verify_ve_semiregular(lam, aut, 2)
        assert is_semiregular(h) is not None
        index = lam.edge_index()
        e_img = Permutation([index[tuple(sorted((h(u), h(v))))] for u, v in lam.edges()])
        assert is_semiregular(e_img) is not None

    def test_hypothesis(self):
        with pytest.raises(HypothesisError):
            verify_ve_semiregular(complete_graph(5), automorphism_group(complete_graph(5)), 5)


class TestSolvable:
    def test_k5_sym_not_solvable(self):
        with pytest.raises(HypothesisError):
            solvable_order_p_semiregular_check(complete_graph(5), automorphism_group(complete_graph(5)), 5)

    def test_k5_frobenius(self):
        cert = solvable_order_p_semiregular_check(complete_graph(5), agl15(), 5)
        assert cert.cycle_length == 5

    def test_w6_p3(self):
        g = wreath(6)[0]
        cert = solvable_order_p_semiregular_check(g, automorphism_group(g), 3)
        assert cert.cycle_length == 3

    def test_w5_p5(self):
        g = wreath(5)[0]
        cert = solvable_order_p_semiregular_check(g, automorphism_group(g), 5)
        assert cert.cycle_length == 5

    def test_not_arc_transitive(self):
        rot = GeneratedGroup(4, [Permutation.from_cycles(4, (0, 1, 2, 3))])
        with pytest.raises(HypothesisError):
            solvable_order_p_semiregular_check(cycle_graph(4), rot, 3)
