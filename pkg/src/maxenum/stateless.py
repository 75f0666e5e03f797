"""Stack-free traversal that rebuilds parent state when backtracking.

The refined traversal's position inside a node is fully described by
four values: the current solution P, the pivot candidate w, the current
restricted solution R, and the last visited child S.  Descending resets
the last three to "before first"; backtracking recomputes, from the
child alone, the exact loop position its parent was at when the child
was produced (parent, pivot, associated restricted solution), then
resumes the scan at sources greater than the child's.  No recursion
stack exists, so the auxiliary memory stays proportional to the largest
solution rather than to the forest depth.

An allocation meter turns that claim into a measured number: the state
variables above form the meter's baseline, every solution-sized
temporary the helpers hold is charged on top, and the report carries
the peak.  Restricted-solver internals are deliberately outside the
meter; they are the solver's own space term, not the traversal's.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .basic import find_roots
from .canonical import (CanonicalSolution, Strategy, _complete_mask,
                        parent_mask, restricted_mask, solution_attrs)
from .refined import require_commutable, resolve_solver
from .report import (CountingSystem, EnumerationReport, Recorder, Sink,
                     counted_solver)
from .setsystem import (Element, Mask, SetSystem, SetSystemError, bit,
                        iter_elements)

_LAYERED = Strategy.LAYERED_MIN


class AuxMeter:
    """Counts live element slots owned by the traversal.

    ``set_base`` re-declares the slots held by the persistent state
    variables; ``add``/``drop`` bracket transient allocations inside
    helpers.  ``peak`` is the high-water mark of their sum.
    """

    __slots__ = ("base", "extra", "peak")

    def __init__(self) -> None:
        self.base = 0
        self.extra = 0
        self.peak = 0

    def set_base(self, n: int) -> None:
        self.base = n
        if self.base + self.extra > self.peak:
            self.peak = self.base + self.extra

    def add(self, n: int) -> None:
        self.extra += n
        if self.base + self.extra > self.peak:
            self.peak = self.base + self.extra

    def drop(self, n: int) -> None:
        self.extra -= n


def _held(*masks: Optional[Mask]) -> int:
    return sum(m.bit_count() for m in masks if m)


@dataclass(frozen=True)
class TraversalState:
    """Resumable position: everything the traversal remembers.

    ``current`` is the node being expanded, ``pivot`` and ``restricted``
    locate the child scan, and ``last_child`` bounds the resume point by
    its source.  The three set-valued fields together hold at most
    three solution sizes worth of elements.
    """
    current: Mask
    last_child: Optional[Mask]
    pivot: Optional[Element]
    restricted: Optional[Mask]


def next_node(sys: SetSystem, w: Optional[Element]) -> Optional[Element]:
    """Successor of w in label order; 1 from None, None past the end."""
    nxt = 1 if w is None else w + 1
    return nxt if nxt <= sys.n else None


def next_r(sys: SetSystem, solver, p_mask: Mask, w: Element,
           r_mask: Optional[Mask]) -> Optional[Mask]:
    """Restricted solution following ``r_mask``, by restarting the stream.

    The solver is deterministic, so the restart reproduces the original
    order; None asks for the first solution.
    """
    stream = solver(sys, p_mask, w)
    if r_mask is None:
        return stream[0] if stream else None
    for i, m in enumerate(stream):
        if m == r_mask:
            return stream[i + 1] if i + 1 < len(stream) else None
    raise SetSystemError("restricted stream changed between restarts")


def next_child(sys: SetSystem, p_mask: Mask, w: Element, r_mask: Mask,
               s_prev: Optional[Mask], meter: Optional[AuxMeter] = None
               ) -> Optional[Mask]:
    """Next child of P under (w, R) after the one sourced at s_prev.

    Candidate sources are the good singletons of R above the previous
    child's source; each is expanded exactly as in the refined engine
    and verified through the identifying quadruple.
    """
    lower = sys.source_of(s_prev) if s_prev else 0
    wb = bit(w)
    for x in iter_elements(r_mask & sys.good_mask):
        if x <= lower or x == w:
            continue
        core_m, _, fired = _complete_mask(sys, bit(x), r_mask, _LAYERED,
                                          stop=w, meter=meter)
        if not fired:
            continue
        if meter is not None:
            meter.add(core_m.bit_count())
        try:
            cand_mask, _, _ = _complete_mask(sys, core_m | wb, sys.full_mask,
                                             _LAYERED, meter=meter)
        finally:
            if meter is not None:
                meter.drop(core_m.bit_count())
        if meter is not None:
            meter.add(cand_mask.bit_count())
        try:
            sol = solution_attrs(sys, cand_mask, _LAYERED, meter=meter)
            if sol.source != x or sol.pivot != w or sol.is_root:
                continue
            pm = parent_mask(sys, sol, meter=meter)
            if pm != p_mask or restricted_mask(sys, sol, pm, meter=meter) != r_mask:
                continue
            return cand_mask
        finally:
            if meter is not None:
                meter.drop(cand_mask.bit_count())
    return None


def is_root(sys: SetSystem, x_mask: Mask,
            strategy: Strategy = _LAYERED) -> bool:
    """A solution is a root exactly when its pivot equals its source."""
    sol = solution_attrs(sys, x_mask, strategy)
    return sol.pivot == sol.source


def _backtrack_tuple(sys: SetSystem, x_mask: Mask, meter: AuxMeter
                     ) -> tuple[CanonicalSolution, Optional[Mask], Optional[Mask]]:
    """(attributes, parent, associated restricted solution) of a node."""
    sol = solution_attrs(sys, x_mask, _LAYERED, meter=meter)
    if sol.is_root:
        return sol, None, None
    pm = parent_mask(sys, sol, meter=meter)
    rm = restricted_mask(sys, sol, pm, meter=meter)
    return sol, pm, rm


def _scan(sys, solver, p_mask: Mask, w: Optional[Element],
          r_mask: Optional[Mask], s_mask: Optional[Mask], meter: AuxMeter):
    """Find the next child of P resuming from (w, R, S).

    Returns (child, w, R); (None, None, None) when P is exhausted.  The
    meter baseline is kept in sync as R and S advance.
    """
    if w is None:
        w = next_node(sys, None)
        r_mask, s_mask = None, None
    while w is not None:
        if p_mask & bit(w):
            w = next_node(sys, w)
            r_mask, s_mask = None, None
            continue
        if r_mask is None:
            r_mask = next_r(sys, solver, p_mask, w, None)
            s_mask = None
            if r_mask is None:
                w = next_node(sys, w)
                continue
            meter.set_base(_held(p_mask, r_mask))
        child = next_child(sys, p_mask, w, r_mask, s_mask, meter)
        if child is not None:
            return child, w, r_mask
        r_mask = next_r(sys, solver, p_mask, w, r_mask)
        s_mask = None
        meter.set_base(_held(p_mask, r_mask))
        if r_mask is None:
            w = next_node(sys, w)
    return None, None, None


def stateless_traverse(inst: SetSystem, restricted_solver=None,
                       sink: Optional[Sink] = None,
                       paranoid: bool = False,
                       trace=None) -> EnumerationReport:
    """Enumerate like the refined engine but without a recursion stack.

    ``paranoid`` keeps a shadow stack of the (pivot, R) pairs under
    which each node was entered and checks that every backtrack
    recomputes exactly that pair; it exists for the test-suite and
    obviously defeats the memory bound while enabled.  ``trace``, when
    given, receives a ``TraversalState`` snapshot after every descent
    and every backtrack.
    """
    require_commutable(inst, "stateless")
    solver = resolve_solver(inst, restricted_solver)
    sys = CountingSystem(inst)
    report = EnumerationReport(algorithm="stateless", system=inst.name)
    solver = counted_solver(solver, report)
    rec = Recorder(report, sink)
    meter = AuxMeter()

    try:
        for root in find_roots(sys, _LAYERED):
            _spawn(sys, solver, root, rec, meter, paranoid, trace)
    finally:
        rec.close()
        report.oracle_calls = sys.calls
        report.peak_aux_elements = meter.peak
    return report


def _spawn(sys, solver, root: Mask, rec: Recorder, meter: AuxMeter,
           paranoid: bool, trace=None) -> None:
    p_mask: Mask = root
    s_mask: Optional[Mask] = None
    w: Optional[Element] = None
    r_mask: Optional[Mask] = None
    depth = 1
    shadow: list[tuple[Element, Mask]] = []

    meter.set_base(_held(p_mask))
    rec.emit(p_mask, depth)
    while True:
        child, w, r_mask = _scan(sys, solver, p_mask, w, r_mask, s_mask, meter)
        if child is not None:
            depth += 1
            if depth % 2 == 1:
                rec.emit(child, depth)
            if paranoid:
                shadow.append((w, r_mask))
            p_mask, s_mask, w, r_mask = child, None, None, None
            meter.set_base(_held(p_mask))
            if trace is not None:
                trace(TraversalState(p_mask, s_mask, w, r_mask))
            continue

        # node exhausted: emit at even depths, then climb or stop
        if depth % 2 == 0:
            rec.emit(p_mask, depth)
        sol, pm, rm = _backtrack_tuple(sys, p_mask, meter)
        if pm is None:
            meter.set_base(0)
            return
        if paranoid:
            want_w, want_r = shadow.pop()
            if (sol.pivot, rm) != (want_w, want_r):
                raise SetSystemError(
                    "backtrack reconstructed a different generation point")
        p_mask, s_mask, w, r_mask = pm, p_mask, sol.pivot, rm
        depth -= 1
        meter.set_base(_held(p_mask, s_mask, r_mask))
        if trace is not None:
            trace(TraversalState(p_mask, s_mask, w, r_mask))
