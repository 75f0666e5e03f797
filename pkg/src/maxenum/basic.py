"""Subset-driven reverse-search enumeration for strongly accessible systems.

Children of a maximal solution P carrying pivot w are found by brute
force: every subset X of P \\ {w} with X + {w} in F is completed over
the full ground set, and the candidate is kept exactly when its
(parent, pivot, core) triple equals (P, w, X).  The triple filter makes
each child appear exactly once, so the traversal needs no visited-set.

Output is interleaved with the descent: a solution is emitted on first
visit at odd depths and after its subtree at even depths, which keeps
the gap between consecutive outputs proportional to one node's work
rather than to a root-to-leaf path.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .canonical import Strategy, _complete_mask, parent_mask, solution_attrs
from .report import CountingSystem, EnumerationReport, Recorder, Sink
from .setsystem import (Element, Mask, SetSystem, bit,
                        subset_masks_ascending)


def find_roots(sys: SetSystem, strategy: Strategy) -> Iterator[Mask]:
    """Stream the roots of the reverse-search forest, each exactly once.

    For each good singleton z in ascending order, complete {z} over the
    ground set; the result is a root discovered from its own source
    precisely when its source is z, which is also the only z that can
    produce it.
    """
    full = sys.full_mask
    for z in range(1, sys.n + 1):
        if not (bit(z) & sys.good_mask):
            continue
        s_mask, _, _ = _complete_mask(sys, bit(z), full, strategy)
        if sys.source_of(s_mask) == z:
            # source(S) == z already implies complete({source(S)}) == S
            assert solution_attrs(sys, s_mask, strategy).is_root
            yield s_mask


def children_basic(sys: SetSystem, p_mask: Mask, w: Element,
                   strategy: Strategy) -> Iterator[Mask]:
    """Children of P whose pivot is w, via subsets of P \\ {w}.

    Subsets are scanned in ascending binary-counter order over the
    sorted elements, making the stream deterministic.
    """
    full = sys.full_mask
    wb = bit(w)
    for x_mask in subset_masks_ascending(p_mask & ~wb):
        cand = x_mask | wb
        if not sys.is_member(cand):
            continue
        s_mask, _, _ = _complete_mask(sys, cand, full, strategy)
        sol = solution_attrs(sys, s_mask, strategy)
        if sol.is_root or sol.pivot != w or sol.core_mask != x_mask:
            continue
        if parent_mask(sys, sol) == p_mask:
            yield s_mask


def _drive(sys: SetSystem, roots: Iterator[Mask], children_of, rec: Recorder) -> None:
    """Depth-first traversal with alternating-depth output.

    Uses an explicit stack of lazy child iterators so deep forests do
    not hit the interpreter recursion limit; the visit order matches
    the recursive formulation exactly.
    """
    for root in roots:
        rec.emit(root, 1)
        stack: list[tuple[Mask, Iterator[Mask], int]] = [(root, children_of(root), 1)]
        while stack:
            node, it, depth = stack[-1]
            child = next(it, None)
            if child is None:
                if depth % 2 == 0:
                    rec.emit(node, depth)
                stack.pop()
                continue
            if (depth + 1) % 2 == 1:
                rec.emit(child, depth + 1)
            stack.append((child, children_of(child), depth + 1))


def enumerate_basic(inst: SetSystem, strategy: Strategy = Strategy.MIN_ELEMENT,
                    sink: Optional[Sink] = None) -> EnumerationReport:
    """Enumerate every maximal solution exactly once; returns the report.

    Works on any strongly accessible system.  The layered strategy is
    also accepted, but its order guarantee is established only for
    commutable systems; the min-element default is the safe choice.
    """
    sys = CountingSystem(inst)
    report = EnumerationReport(algorithm="basic", system=inst.name)
    rec = Recorder(report, sink)

    def children_of(p_mask: Mask) -> Iterator[Mask]:
        for w in range(1, sys.n + 1):
            yield from children_basic(sys, p_mask, w, strategy)

    try:
        _drive(sys, find_roots(sys, strategy), children_of, rec)
    finally:
        rec.close()
        report.oracle_calls = sys.calls
    return report
