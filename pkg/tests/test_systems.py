"""Catalog systems, the product construction, the gadget, the demo asset."""

import itertools
import random

import pytest

from maxenum import (DomainError, Graph, SetSystemError, bcclique_system,
                     brute_force_maximal, clique_system, classify_system,
                     independent_set_system, is_solution, map_back,
                     mccis_oracle, product_graph, required_variant,
                     sat_gadget)
from maxenum.setsystem import SizeGuardError, mask_of
from maxenum.systems import demo_bicolored_graph

from conftest import DEMO_S1, DEMO_S2, DEMO_SOLUTIONS


class TestBasicOracles:
    def test_triangle_is_a_clique(self):
        tri = Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
        assert is_solution(clique_system(tri), (1, 2, 3))

    def test_path_endpoints_are_not(self):
        path = Graph.from_edges(3, [(1, 2), (2, 3)])
        assert not is_solution(clique_system(path), (1, 3))

    def test_clique_maximal_sets_match_reference_enumeration(self):
        rng = random.Random(4)
        g = Graph.random(10, 0.5, rng)
        inst = clique_system(g)
        # reference: filter all subsets directly on the adjacency relation
        nodes = range(1, 11)
        cliques = [frozenset(c) for k in range(1, 11)
                   for c in itertools.combinations(nodes, k)
                   if all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))]
        maximal = {tuple(sorted(c)) for c in cliques
                   if not any(c < d for d in cliques)}
        assert brute_force_maximal(inst) == maximal

    def test_independent_sets_are_complement_cliques(self):
        rng = random.Random(8)
        g = Graph.random(10, 0.5, rng)
        comp = Graph.from_edges(10, [
            (u, v) for u in range(1, 11) for v in range(u + 1, 11)
            if not g.has_edge(u, v)])
        assert brute_force_maximal(independent_set_system(g)) == \
            brute_force_maximal(clique_system(comp))

    def test_empty_and_complete_graph_independent_sets(self):
        empty = Graph.from_edges(4, [])
        assert is_solution(independent_set_system(empty), (1, 2, 3, 4))
        full = Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
        assert not is_solution(independent_set_system(full), (1, 2))


class TestBccliqueOracle:
    def test_demo_member_and_maximal(self, demo_system):
        assert is_solution(demo_system, DEMO_S1)
        assert brute_force_maximal(demo_system) == DEMO_SOLUTIONS

    def test_black_disconnection_rejected(self, demo_system):
        # 3 is adjacent to both 1 and 2, but only over white edges
        assert not is_solution(demo_system, (1, 2, 3))

    def test_singletons_always_members(self, demo_system):
        for v in range(1, 9):
            assert is_solution(demo_system, (v,))

    def test_connected_subsets_of_members_are_members(self, small_matrix):
        for entry in small_matrix["bc-clique"][:8]:
            inst = entry.inst
            black = inst.connectivity
            for sol in entry.expected:
                m = mask_of(sol)
                sub = (m - 1) & m
                while True:
                    from maxenum.setsystem import _connected_in
                    if _connected_in(black, sub):
                        assert inst.is_member(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & m


class TestRequiredVariant:
    def test_demo_required_membership(self, demo_graph):
        inst = required_variant(bcclique_system(demo_graph), (4,))
        assert is_solution(inst, DEMO_S2)
        assert not is_solution(inst, (1, 2))

    def test_required_everything_equals_base(self, demo_graph):
        base = bcclique_system(demo_graph)
        inst = required_variant(base, range(1, 9))
        for m in range(1 << 8):
            assert inst.is_member(m) == base.is_member(m)

    def test_good_singletons_restricted(self, demo_graph):
        from maxenum import good_singletons
        inst = required_variant(bcclique_system(demo_graph), (4, 7))
        assert good_singletons(inst) == (4, 7)


class TestProductGraph:
    def test_two_single_edges(self):
        k2 = Graph.from_edges(2, [(1, 2)])
        pg = product_graph(k2, k2)
        assert pg.n == 4
        assert sorted(pg.black_edges()) == [(1, 4), (2, 3)]
        assert list(pg.white_edges()) == []

    def test_single_nodes(self):
        k1 = Graph.from_edges(1, [])
        pg = product_graph(k1, k1)
        assert pg.n == 1
        assert list(pg.black_edges()) == [] and list(pg.white_edges()) == []

    def test_shared_coordinates_never_adjacent(self):
        rng = random.Random(6)
        a, b = Graph.random(3, 0.5, rng), Graph.random(4, 0.5, rng)
        pg = product_graph(a, b)
        for u in range(1, 4):
            for x in range(1, 5):
                for y in range(x + 1, 5):
                    p = (u - 1) * 4 + x
                    q = (u - 1) * 4 + y
                    assert not (pg.both[p] >> (q - 1)) & 1

    def test_map_back_round_trip(self):
        a = Graph.from_edges(2, [(1, 2)])
        b = Graph.from_edges(3, [(1, 2)])
        assert map_back((1,), a, b) == ((1, 1),)
        assert map_back((2 * 3,), a, b) == ((2, 3),)

    def test_map_back_rejects_non_injective_decode(self):
        a = Graph.from_edges(2, [(1, 2)])
        b = Graph.from_edges(2, [(1, 2)])
        # labels 1 and 2 are (1,1) and (1,2): same first coordinate
        with pytest.raises(SetSystemError):
            map_back((1, 2), a, b)


class TestMccisOracle:
    def test_triangle_automorphisms(self):
        tri = Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
        maps = mccis_oracle(tri, tri)
        assert len(maps) == 6
        assert all(len(m) == 3 for m in maps)

    def test_single_pair(self):
        k1 = Graph.from_edges(1, [])
        assert mccis_oracle(k1, k1) == frozenset({frozenset({(1, 1)})})

    def test_induced_constraint_blocks_path_into_triangle(self):
        p3 = Graph.from_edges(3, [(1, 2), (2, 3)])
        tri = Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
        maps = mccis_oracle(p3, tri)
        assert maps and all(len(m) == 2 for m in maps)

    def test_guard(self):
        g = Graph.from_edges(7, [])
        with pytest.raises(SizeGuardError):
            mccis_oracle(g, g)

    def test_product_correspondence_is_a_bijection(self):
        rng = random.Random(12)
        for _ in range(10):
            a = Graph.random(rng.randint(1, 4), 0.5, rng)
            b = Graph.random(rng.randint(1, 4), 0.5, rng)
            inst = bcclique_system(product_graph(a, b))
            sols = brute_force_maximal(inst, guard=16)
            maps = {frozenset(map_back(s, a, b)) for s in sols}
            assert len(maps) == len(sols)
            assert maps == mccis_oracle(a, b)


class TestSatGadget:
    def test_single_positive_clause_layout(self):
        g, labels = sat_gadget(1, [[1]])
        assert g.n == 4
        assert labels == {1: "C1", 2: "T1", 3: "F1", 4: "Y1"}
        assert sorted(g.black_edges()) == [(1, 2), (2, 4), (3, 4)]
        assert sorted(g.white_edges()) == [(1, 3), (1, 4)]
        # the complementary literal pair stays disconnected
        assert not (g.both[2] >> 2) & 1

    def test_clause_labels_precede_everything(self):
        g, labels = sat_gadget(2, [[1, -2], [2]])
        clause_nodes = [n for n, name in labels.items() if name.startswith("C")]
        other = [n for n, name in labels.items() if not name.startswith("C")]
        assert max(clause_nodes) < min(other)

    def test_satisfiable_formulas_cover_all_clause_nodes(self):
        cases = [
            (1, [[1]], True),
            (1, [[1], [-1]], False),
            (2, [[1, 2], [-1, -2]], True),
            (2, [[1], [-1], [2]], False),
            (3, [[1, 2, 3], [-1, -2], [3]], True),
        ]
        for num_vars, clauses, satisfiable in cases:
            g, labels = sat_gadget(num_vars, clauses)
            inst = bcclique_system(g).cached(limit=14)
            sols = brute_force_maximal(inst)
            y1 = next(n for n, name in labels.items() if name == "Y1")
            cset = set(range(1, len(clauses) + 1))
            reachable = any(y1 in s and cset <= set(s) for s in sols)
            assert reachable == satisfiable, (num_vars, clauses)

    def test_bad_literal_rejected(self):
        with pytest.raises(DomainError):
            sat_gadget(1, [[2]])


class TestDemoAsset:
    def test_frozen_edge_lists_round_trip(self):
        g = demo_bicolored_graph()
        assert g.n == 8
        assert len(list(g.black_edges())) == 8
        assert len(list(g.white_edges())) == 9

    def test_catalog_classifications(self, demo_graph):
        rng = random.Random(44)
        checks = [
            (clique_system(Graph.random(7, 0.5, rng)), dict(hereditary=True)),
            (independent_set_system(Graph.random(7, 0.5, rng)), dict(hereditary=True)),
            (bcclique_system(demo_graph), dict(hereditary=False, commutable=True)),
        ]
        for inst, want in checks:
            cls = classify_system(inst.cached())
            assert cls.strongly_accessible
            for key, value in want.items():
                assert getattr(cls, key) == value, inst.name
