"""Restricted-problem driven enumeration for commutable set systems.

Instead of scanning every subset of the parent, children carrying pivot
w are generated from the solutions of the reduced problem on P + {w}:
for each reduced solution R and each good singleton s of R, run the
truncated completion of {s} inside R (halting just before w), append w,
and complete over the full ground set.  A candidate is kept exactly
when the quadruple (parent, pivot, associated restricted solution,
source) matches (P, w, R, s), which de-duplicates the stream.

The layered choose rule is mandatory here: its stability property (a
chosen element stays chosen after growing the set, provided it is still
addable) is what makes the truncated completion land exactly on the
child's core.  That property fails for the plain min-element rule, and
the whole scheme is only sound when the system is commutable, so this
engine refuses instances that do not declare the commutable property.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .basic import _drive, find_roots
from .canonical import (Strategy, _complete_mask, parent_mask,
                        restricted_mask, solution_attrs)
from .report import (CountingSystem, EnumerationReport, Recorder, Sink,
                     counted_solver)
from .restricted import restr_generic
from .setsystem import (Element, Mask, PreconditionError, SetSystem, bit,
                        iter_elements)

_LAYERED = Strategy.LAYERED_MIN


def resolve_solver(inst: SetSystem, restricted_solver=None):
    """Pick the instance's specialised solver when none is supplied."""
    if restricted_solver is not None:
        return restricted_solver
    if inst.restricted_solver is not None:
        return inst.restricted_solver
    return restr_generic


def children_refined(sys: SetSystem, p_mask: Mask, w: Element,
                     restricted_solver, meter=None) -> Iterator[Mask]:
    """Children of P with pivot w, one completion attempt per (R, s) pair."""
    if p_mask & bit(w):
        return
    for r_mask in restricted_solver(sys, p_mask, w):
        if r_mask == p_mask:
            continue
        for s in iter_elements(r_mask & sys.good_mask):
            if s == w:
                continue
            core_m, _, fired = _complete_mask(sys, bit(s), r_mask, _LAYERED,
                                              stop=w, meter=meter)
            if not fired:
                # w never became the choice, so no child arises from (R, s)
                continue
            cand_mask, _, _ = _complete_mask(sys, core_m | bit(w),
                                             sys.full_mask, _LAYERED,
                                             meter=meter)
            sol = solution_attrs(sys, cand_mask, _LAYERED, meter=meter)
            if sol.source != s or sol.pivot != w or sol.is_root:
                continue
            pm = parent_mask(sys, sol, meter=meter)
            if pm != p_mask:
                continue
            if restricted_mask(sys, sol, pm, meter=meter) != r_mask:
                continue
            yield cand_mask


def require_commutable(inst: SetSystem, algorithm: str) -> None:
    if not inst.commutable:
        raise PreconditionError(
            f"the {algorithm} engine needs a commutable system; "
            f"{inst.name!r} does not declare the commutable property "
            "(use the basic engine instead)")


def enumerate_refined(inst: SetSystem, restricted_solver=None,
                      sink: Optional[Sink] = None) -> EnumerationReport:
    """Enumerate all maximal solutions using restricted-problem children."""
    require_commutable(inst, "refined")
    solver = resolve_solver(inst, restricted_solver)
    sys = CountingSystem(inst)
    report = EnumerationReport(algorithm="refined", system=inst.name)
    solver = counted_solver(solver, report)
    rec = Recorder(report, sink)

    def children_of(p_mask: Mask) -> Iterator[Mask]:
        for w in range(1, sys.n + 1):
            yield from children_refined(sys, p_mask, w, solver)

    try:
        _drive(sys, find_roots(sys, _LAYERED), children_of, rec)
    finally:
        rec.close()
        report.oracle_calls = sys.calls
    return report
