"""Concrete set systems and graph constructions.

Cliques and independent sets (hereditary), bi-colored cliques (cliques
under the union of black and white edges that are connected in the
black subgraph alone), and required variants of any of them.  The
module also builds the pairwise-compatibility product of two graphs,
whose maximal bi-colored cliques correspond one-to-one to the maximal
common connected induced subgraph isomorphisms of the inputs, plus a
brute-force isomorphism enumerator used purely to validate that
pipeline, and a CNF gadget whose bi-colored cliques encode satisfying
assignments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .restricted import restr_bcclique
from .setsystem import (DomainError, Element, Mask, PreconditionError,
                        SetSystem, SetSystemError, SizeGuardError, bit,
                        elements_of, iter_elements, mask_of)


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

def _masks_from_edges(n: int, edges: Iterable[tuple[int, int]],
                      kind: str) -> list[Mask]:
    adj = [0] * (n + 1)
    seen = set()
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise DomainError(f"{kind} edge ({u}, {v}) outside 1..{n}")
        if u == v:
            raise DomainError(f"{kind} self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DomainError(f"duplicate {kind} edge ({u}, {v})")
        seen.add(key)
        adj[u] |= bit(v)
        adj[v] |= bit(u)
    return adj


@dataclass(frozen=True)
class Graph:
    """Undirected graph on nodes 1..n, adjacency stored as bitmasks."""
    n: int
    adj: tuple[Mask, ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(n, tuple(_masks_from_edges(n, edges, "graph")))

    @staticmethod
    def random(n: int, p: float, rng: random.Random) -> "Graph":
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                 if rng.random() < p]
        return Graph.from_edges(n, edges)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(1, self.n + 1):
            for v in iter_elements(self.adj[u]):
                if v > u:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & bit(v))


@dataclass(frozen=True)
class BiColoredGraph:
    """Graph whose edges are black or white; the two sets are disjoint."""
    n: int
    black: tuple[Mask, ...]
    white: tuple[Mask, ...]
    both: tuple[Mask, ...]

    @staticmethod
    def build(n: int, black_edges: Iterable[tuple[int, int]],
              white_edges: Iterable[tuple[int, int]]) -> "BiColoredGraph":
        black = _masks_from_edges(n, black_edges, "black")
        white = _masks_from_edges(n, white_edges, "white")
        for v in range(1, n + 1):
            overlap = black[v] & white[v]
            if overlap:
                other = elements_of(overlap)[0]
                raise DomainError(f"edge ({v}, {other}) is both black and white")
        both = [b | w for b, w in zip(black, white)]
        return BiColoredGraph(n, tuple(black), tuple(white), tuple(both))

    @staticmethod
    def random(n: int, p_black: float, p_white: float,
               rng: random.Random) -> "BiColoredGraph":
        blacks, whites = [], []
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                r = rng.random()
                if r < p_black:
                    blacks.append((u, v))
                elif r < p_black + p_white:
                    whites.append((u, v))
        return BiColoredGraph.build(n, blacks, whites)

    def black_edges(self) -> Iterator[tuple[int, int]]:
        for u in range(1, self.n + 1):
            for v in iter_elements(self.black[u]):
                if v > u:
                    yield (u, v)

    def white_edges(self) -> Iterator[tuple[int, int]]:
        for u in range(1, self.n + 1):
            for v in iter_elements(self.white[u]):
                if v > u:
                    yield (u, v)


# ---------------------------------------------------------------------------
# membership oracles
# ---------------------------------------------------------------------------

def _is_clique(adj: Sequence[Mask], mask: Mask) -> bool:
    m = mask
    while m:
        low = m & -m
        if (mask ^ low) & ~adj[low.bit_length()]:
            return False
        m ^= low
    return True


def _black_connected(black: Sequence[Mask], mask: Mask) -> bool:
    if mask == 0:
        return True
    start = mask & -mask
    reach = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= black[low.bit_length()] & mask
            f ^= low
        frontier = nxt & ~reach
        reach |= frontier
    return reach == mask


def bcclique_oracle_masks(both: Sequence[Mask], black: Sequence[Mask],
                          mask: Mask) -> bool:
    """Clique under black|white edges, connected among black edges alone."""
    return _is_clique(both, mask) and _black_connected(black, mask)


def clique_system(g: Graph) -> SetSystem:
    """Cliques of g.  Hereditary, hence commutable."""
    adj = g.adj

    def extend(x: Mask, e: Element) -> bool:
        return (x & ~adj[e]) == 0

    return SetSystem(g.n, lambda m: _is_clique(adj, m), name="clique",
                     extend=extend, commutable=True)


def independent_set_system(g: Graph) -> SetSystem:
    """Independent sets of g.  Hereditary, hence commutable."""
    adj = g.adj

    def oracle(m: Mask) -> bool:
        mm = m
        while mm:
            low = mm & -mm
            if adj[low.bit_length()] & m:
                return False
            mm ^= low
        return True

    return SetSystem(g.n, oracle, name="independent-set",
                     extend=lambda x, e: (adj[e] & x) == 0, commutable=True)


def bcclique_system(g: BiColoredGraph) -> SetSystem:
    """Bi-colored cliques of g.  Connected hereditary, hence commutable.

    The incremental extension test is O(1): the new element must be
    adjacent to everything present and, unless the set is empty, must
    touch it with a black edge to preserve black connectivity.
    """
    both, black = g.both, g.black

    def extend(x: Mask, e: Element) -> bool:
        if x & ~both[e]:
            return False
        return x == 0 or bool(black[e] & x)

    sys = SetSystem(g.n, lambda m: bcclique_oracle_masks(both, black, m),
                    name="bc-clique", extend=extend, commutable=True,
                    connectivity=black,
                    restricted_solver=lambda _s, p, w: restr_bcclique(g, p, w))
    return sys


def required_variant(base: SetSystem, required: Iterable[Element]) -> SetSystem:
    """Members of the base system that are empty or meet the required set.

    Strips the base's specialised restricted solver (its notion of
    maximality no longer applies) but keeps the connectivity reference,
    so the classifier can exhibit the loss of connected heredity.
    """
    req = mask_of(required)
    base.check_range(req)

    def oracle(m: Mask) -> bool:
        return base.is_member(m) and (m == 0 or bool(m & req))

    def extend(x: Mask, e: Element) -> bool:
        if x == 0 and not (bit(e) & req):
            return False
        return base.extend_ok(x, e)

    return SetSystem(base.n, oracle, name=f"required-{base.name}",
                     extend=extend, commutable=base.commutable,
                     connectivity=base.connectivity)


# ---------------------------------------------------------------------------
# pairwise-compatibility product of two graphs
# ---------------------------------------------------------------------------

def pair_label(u: int, x: int, nb: int) -> int:
    """Row-major label of the node pair (u, x), 1-based."""
    return (u - 1) * nb + x


def label_pair(label: int, nb: int) -> tuple[int, int]:
    return ((label - 1) // nb + 1, (label - 1) % nb + 1)


def product_graph(a: Graph, b: Graph) -> BiColoredGraph:
    """Bi-colored graph on V(a) x V(b) encoding compatible assignments.

    Pairs sharing a coordinate get no edge (an isomorphism is
    injective).  Otherwise the edge is black when both coordinate pairs
    are edges, white when both are non-edges, and absent when they
    disagree.
    """
    if a.n == 0 or b.n == 0:
        raise PreconditionError("product of empty graphs is not defined")
    nb = b.n
    blacks, whites = [], []
    for u in range(1, a.n + 1):
        for x in range(1, b.n + 1):
            for v in range(u, a.n + 1):
                for y in range(1, b.n + 1):
                    if v == u and y <= x:
                        continue
                    if v == u or y == x:
                        continue
                    ea = a.has_edge(u, v)
                    eb = b.has_edge(x, y)
                    p, q = pair_label(u, x, nb), pair_label(v, y, nb)
                    if ea and eb:
                        blacks.append((p, q))
                    elif not ea and not eb:
                        whites.append((p, q))
    return BiColoredGraph.build(a.n * b.n, blacks, whites)


def map_back(product_solution: Iterable[Element], a: Graph, b: Graph
             ) -> tuple[tuple[int, int], ...]:
    """Decode product-graph labels into vertex pairs, checking injectivity."""
    pairs = tuple(sorted(label_pair(e, b.n) for e in product_solution))
    us = [p[0] for p in pairs]
    xs = [p[1] for p in pairs]
    if len(set(us)) != len(us) or len(set(xs)) != len(xs):
        raise SetSystemError(
            f"product solution decodes to a non-injective map {pairs}; "
            "this indicates a product construction bug")
    return pairs


def mccis_oracle(a: Graph, b: Graph, guard: int = 36) -> frozenset:
    """Brute-force maximal common connected induced subgraph isomorphisms.

    Enumerates every injective vertex map with connected domain that
    preserves edges and non-edges, then keeps the maps no single pair
    can extend.  Exists purely as the ground truth for the product
    pipeline; exponential by design.
    """
    if a.n * b.n > guard:
        raise SizeGuardError(f"{a.n} x {b.n} nodes exceed the oracle guard {guard}")

    def compatible(pairs: tuple, u: int, x: int) -> bool:
        for (v, y) in pairs:
            if u == v or x == y:
                return False
            if a.has_edge(u, v) != b.has_edge(x, y):
                return False
        return True

    valid: set[frozenset] = set()

    def grow(pairs: tuple) -> None:
        key = frozenset(pairs)
        if key in valid:
            return
        valid.add(key)
        for u in range(1, a.n + 1):
            for x in range(1, b.n + 1):
                if compatible(pairs, u, x) and (
                        not pairs or any(a.has_edge(u, v) for v, _ in pairs)):
                    grow(pairs + ((u, x),))

    for u in range(1, a.n + 1):
        for x in range(1, b.n + 1):
            grow(((u, x),))

    def extendable(key: frozenset) -> bool:
        pairs = tuple(key)
        for u in range(1, a.n + 1):
            for x in range(1, b.n + 1):
                if compatible(pairs, u, x) and any(a.has_edge(u, v) for v, _ in pairs):
                    return True
        return False

    return frozenset(k for k in valid if k and not extendable(k))


# ---------------------------------------------------------------------------
# CNF gadget
# ---------------------------------------------------------------------------

def sat_gadget(num_vars: int, clauses: Sequence[Sequence[int]]
               ) -> tuple[BiColoredGraph, dict[int, str]]:
    """Bi-colored graph whose cliques around the first chain node encode
    satisfying assignments of the CNF.

    Nodes: one per clause (smallest labels), then a true-node and a
    false-node per variable, then one chain node per variable.  Chain
    node i is black-tied to its own literal nodes and, past the first,
    to the previous variable's literal nodes; a clause node is
    black-tied to every literal node occurring in it.  Every remaining
    pair is white except each (true, false) couple, which gets no edge.
    The formula is satisfiable exactly when some maximal clique through
    the first chain node covers all clause nodes.
    """
    if num_vars < 1 or not clauses:
        raise PreconditionError("the gadget needs at least one variable and one clause")
    k, n = len(clauses), num_vars
    c_node = lambda i: i                       # clauses 1..k
    t_node = lambda j: k + j                   # true nodes k+1..k+n
    f_node = lambda j: k + n + j               # false nodes
    y_node = lambda j: k + 2 * n + j           # chain nodes
    total = k + 3 * n

    labels = {}
    for i in range(1, k + 1):
        labels[c_node(i)] = f"C{i}"
    for j in range(1, n + 1):
        labels[t_node(j)] = f"T{j}"
        labels[f_node(j)] = f"F{j}"
        labels[y_node(j)] = f"Y{j}"

    blacks = set()
    for j in range(1, n + 1):
        blacks.add((y_node(j), t_node(j)))
        blacks.add((y_node(j), f_node(j)))
        if j > 1:
            blacks.add((y_node(j), t_node(j - 1)))
            blacks.add((y_node(j), f_node(j - 1)))
    for i, clause in enumerate(clauses, start=1):
        for lit in clause:
            var = abs(lit)
            if not (1 <= var <= n):
                raise DomainError(f"literal {lit} references a variable outside 1..{n}")
            blacks.add((c_node(i), t_node(var) if lit > 0 else f_node(var)))

    def norm(u, v):
        return (min(u, v), max(u, v))

    blacks = {norm(u, v) for u, v in blacks}
    forbidden = {norm(t_node(j), f_node(j)) for j in range(1, n + 1)}
    whites = [(u, v) for u in range(1, total + 1) for v in range(u + 1, total + 1)
              if (u, v) not in blacks and (u, v) not in forbidden]
    return BiColoredGraph.build(total, sorted(blacks), whites), labels


# ---------------------------------------------------------------------------
# the frozen 8-node demo fixture
# ---------------------------------------------------------------------------

#: Hand-verified asset used across the test-suite: its three maximal
#: bi-colored cliques, canonical orders, layers and parent links are all
#: frozen in tests.  Do not edit without re-deriving those expectations.
DEMO_BLACK = ((1, 2), (2, 5), (2, 6), (2, 8), (3, 5), (4, 5), (5, 8), (7, 8))
DEMO_WHITE = ((1, 3), (1, 5), (1, 6), (2, 3), (2, 7), (3, 4), (3, 6), (5, 6), (5, 7))
DEMO_MAXIMAL = (frozenset({1, 2, 3, 5, 6}), frozenset({3, 4, 5}),
                frozenset({2, 5, 7, 8}))


def demo_bicolored_graph() -> BiColoredGraph:
    """The 8-node bi-colored graph every worked example is checked on."""
    return BiColoredGraph.build(8, DEMO_BLACK, DEMO_WHITE)
