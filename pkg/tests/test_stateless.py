"""Stack-free traversal: resumption helpers and whole-run equivalence."""

import random

from maxenum import (Strategy, bcclique_system, clique_system,
                     enumerate_basic, enumerate_refined, stateless_traverse)
from maxenum.refined import resolve_solver
from maxenum.setsystem import elements_of, mask_of
from maxenum.stateless import is_root, next_child, next_node, next_r
from maxenum.systems import BiColoredGraph, Graph

from conftest import DEMO_S1, DEMO_S2, DEMO_S3, DEMO_SOLUTIONS

LAY = Strategy.LAYERED_MIN


class TestResumptionHelpers:
    def test_next_node_walks_the_ground_set(self, demo_system):
        assert next_node(demo_system, None) == 1
        assert next_node(demo_system, 3) == 4
        assert next_node(demo_system, 8) is None

    def test_next_r_replays_the_stream(self, demo_system):
        solver = resolve_solver(demo_system)
        p = mask_of(DEMO_S1)
        seq = []
        cur = None
        while True:
            cur = next_r(demo_system, solver, p, 8, cur)
            if cur is None:
                break
            seq.append(cur)
        assert seq == solver(demo_system, p, 8)

    def test_next_child_demo_sequence(self, demo_system):
        solver = resolve_solver(demo_system)
        p = mask_of(DEMO_S1)
        r = solver(demo_system, p, 8)[0]
        first = next_child(demo_system, p, 8, r, None)
        assert elements_of(first) == DEMO_S3
        assert next_child(demo_system, p, 8, r, first) is None

    def test_is_root_on_demo_solutions(self, demo_system):
        assert is_root(demo_system, mask_of(DEMO_S1))
        assert not is_root(demo_system, mask_of(DEMO_S2))

    def test_single_solution_system_is_rooted(self):
        inst = clique_system(Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)]))
        assert is_root(inst, mask_of((1, 2, 3)))


class TestStatelessTraverse:
    def test_demo_output_matches_refined_exactly(self, demo_system):
        ref, sl = [], []
        enumerate_refined(demo_system, sink=lambda s, d: ref.append((s, d)))
        stateless_traverse(demo_system, sink=lambda s, d: sl.append((s, d)))
        assert ref == sl
        assert {s for s, _ in sl} == DEMO_SOLUTIONS

    def test_single_root_no_children(self):
        inst = clique_system(Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)]))
        got = []
        report = stateless_traverse(inst, sink=lambda s, d: got.append(s))
        assert got == [(1, 2, 3)]
        assert report.solution_count == 1

    def test_backtrack_fidelity_paranoid_mode(self, small_matrix):
        for entry in small_matrix["bc-clique"][:10]:
            got = []
            stateless_traverse(entry.inst, sink=lambda s, d: got.append(s),
                               paranoid=True)
            assert set(got) == entry.expected

    def test_three_way_equivalence_on_random_instances(self):
        rng = random.Random(101)
        for _ in range(25):
            n = rng.randint(3, 10)
            g = BiColoredGraph.random(n, 0.3, 0.35, rng)
            inst = bcclique_system(g).cached()
            basic, refined, sl = [], [], []
            enumerate_basic(inst, LAY, sink=lambda s, d: basic.append(s))
            enumerate_refined(inst, sink=lambda s, d: refined.append(s))
            stateless_traverse(inst, sink=lambda s, d: sl.append(s))
            assert set(basic) == set(refined) == set(sl)
            assert len(sl) == len(set(sl))
            assert refined == sl, "refined and stateless must emit identically"

    def test_memory_peak_is_solution_bounded(self, small_matrix):
        for entry in small_matrix["bc-clique"][:12]:
            report = stateless_traverse(entry.inst)
            if report.solution_count == 0:
                continue
            assert report.peak_aux_elements is not None
            assert report.peak_aux_elements <= 10 * report.max_solution_size

    def test_report_carries_peak_only_here(self, demo_system):
        assert enumerate_refined(demo_system).peak_aux_elements is None
        assert stateless_traverse(demo_system).peak_aux_elements is not None

    def test_traced_states_stay_within_three_solutions(self, small_matrix):
        for entry in small_matrix["bc-clique"][:8]:
            states = []
            report = stateless_traverse(entry.inst, trace=states.append)
            q = max(report.max_solution_size, 1)
            for st in states:
                held = sum(m.bit_count() for m in
                           (st.current, st.last_child, st.restricted) if m)
                assert held <= 3 * (q + 1)
