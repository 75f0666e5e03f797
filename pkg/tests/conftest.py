"""Shared fixtures: the frozen demo graph and seeded random instance matrices."""

from __future__ import annotations

import random
from dataclasses import dataclass

import pytest

from maxenum import (BiColoredGraph, Graph, SetSystem, bcclique_system,
                     brute_force_maximal, clique_system, demo_bicolored_graph,
                     independent_set_system, required_variant)

# frozen expectations for the demo graph, re-derived in tests_systems
DEMO_S1 = (1, 2, 3, 5, 6)
DEMO_S2 = (3, 4, 5)
DEMO_S3 = (2, 5, 7, 8)
DEMO_SOLUTIONS = {DEMO_S1, DEMO_S2, DEMO_S3}

SYSTEM_KINDS = ("clique", "independent-set", "bc-clique", "required-bc-clique")

# instance sizes cycle through this pattern; all stay within the |U| <= 12
# guard of the exhaustive oracle
_SIZE_PATTERN = (4, 5, 6, 7, 8, 8, 9, 9, 10, 10, 11, 12)
_DENSITIES = (0.2, 0.35, 0.5, 0.65)


@dataclass
class MatrixEntry:
    label: str
    inst: SetSystem
    expected: frozenset


def _make_instance(kind: str, n: int, p: float, rng: random.Random) -> SetSystem:
    if kind == "clique":
        return clique_system(Graph.random(n, p, rng))
    if kind == "independent-set":
        return independent_set_system(Graph.random(n, p, rng))
    if kind == "bc-clique":
        return bcclique_system(BiColoredGraph.random(n, p * 0.7, 0.35, rng))
    if kind == "required-bc-clique":
        base = bcclique_system(BiColoredGraph.random(n, p * 0.7, 0.35, rng))
        required = rng.sample(range(1, n + 1), max(1, n // 3))
        return required_variant(base, required)
    raise ValueError(kind)


def build_matrix(kind: str, count: int, seed: int = 20240117) -> list[MatrixEntry]:
    rng = random.Random(f"{seed}:{kind}")
    out = []
    for i in range(count):
        n = _SIZE_PATTERN[i % len(_SIZE_PATTERN)]
        p = _DENSITIES[i % len(_DENSITIES)]
        inst = _make_instance(kind, n, p, rng).cached()
        out.append(MatrixEntry(
            label=f"{kind}-{i}(n={n},p={p})",
            inst=inst,
            expected=frozenset(brute_force_maximal(inst)),
        ))
    return out


@pytest.fixture(scope="session")
def demo_graph() -> BiColoredGraph:
    return demo_bicolored_graph()


@pytest.fixture(scope="session")
def demo_system(demo_graph) -> SetSystem:
    return bcclique_system(demo_graph)


@pytest.fixture(scope="session")
def small_matrix() -> dict[str, list[MatrixEntry]]:
    """40 instances per system kind; unit-test sized."""
    return {kind: build_matrix(kind, 40, seed=7) for kind in SYSTEM_KINDS}


@pytest.fixture(scope="session")
def full_matrix() -> dict[str, list[MatrixEntry]]:
    """200 instances per system kind; the acceptance-grade matrix."""
    return {kind: build_matrix(kind, 200) for kind in SYSTEM_KINDS}
