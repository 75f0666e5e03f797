"""Greedy closures, canonical element orders, and the parent structure.

``complete`` grows a partial solution by repeatedly adding the element
picked by a ``choose`` rule until no further element can be added.  Two
rules are provided:

* ``MIN_ELEMENT`` picks the smallest addable label.
* ``LAYERED_MIN`` ranks every addable element by the pair (layer, label) and
  picks the lexicographic minimum, where the layer of an element is its
  breadth rank relative to the current set from its source (see
  ``layer_of``).  This rule is the one that makes restricted-problem
  driven child generation sound on commutable systems.

Running ``complete`` from the source of a maximal solution S inside S
yields a permutation of S, its canonical order.  Scanning that order
once identifies the pivot (the earliest position whose prefix already
completes back to S over the full ground set), the core (the prefix
just before the pivot), and hence the parent solution, which together
define the reverse-search forest traversed by the enumeration engines.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

from .setsystem import (Element, Mask, NoCandidateError, PreconditionError,
                        SetSystem, bit, elements_of, iter_elements, mask_of)

_UNREACHED = 1 << 30  # effective infinity for layer values


class Strategy(enum.Enum):
    MIN_ELEMENT = "min-element"
    LAYERED_MIN = "layered-min"


# ---------------------------------------------------------------------------
# layers
# ---------------------------------------------------------------------------

def _level_prefixes(sys: SetSystem, x: Mask, t: Element) -> list[Mask]:
    """Cumulative breadth levels B_0 <= B_1 <= ... of ``x`` from ``t``.

    B_0 = {t}; B_i adds every element of x addable to B_{i-1}.  The list
    stops at the first fixpoint.  Only O(|x|) words are held.
    """
    levels = [bit(t)]
    cur = levels[0]
    while True:
        grow = 0
        rest = x & ~cur
        while rest:
            low = rest & -rest
            if sys.extend_ok(cur, low.bit_length()):
                grow |= low
            rest ^= low
        if not grow:
            return levels
        cur |= grow
        levels.append(cur)


def _candidate_layer(sys: SetSystem, levels: list[Mask], y: Element) -> int:
    """min i such that B_{i-1} + {y} is in F, or a large sentinel."""
    for i, b in enumerate(levels):
        if sys.extend_ok(b, y):
            return i + 1
    return _UNREACHED


@dataclass(frozen=True)
class LayerAssignment:
    """Layers of the elements of x and of its extension set, from ``start``."""
    start: Element
    layers: dict[Element, int]


def layer_of(sys: SetSystem, x: Iterable[Element], t: Element) -> LayerAssignment:
    """Layer every element of x and of x^+ relative to x from t.

    ``t`` must be a good singleton inside x, and x must be in F.  The
    start itself gets layer 0; every other element y gets the first
    index i such that y can be added to the (i-1)-th breadth level.
    """
    xm = mask_of(x)
    sys.check_range(xm)
    if not sys.is_member(xm):
        raise PreconditionError("layers are defined for members of F only")
    if not (bit(t) & xm & sys.good_mask):
        raise PreconditionError(f"start {t} is not a good singleton of the set")
    levels = _level_prefixes(sys, xm, t)
    out: dict[Element, int] = {t: 0}
    for v in iter_elements(xm ^ bit(t)):
        out[v] = _candidate_layer(sys, levels, v)
    for v in iter_elements(sys.extension_mask(xm, sys.full_mask)):
        out[v] = _candidate_layer(sys, levels, v)
    return LayerAssignment(start=t, layers=out)


# ---------------------------------------------------------------------------
# choose / complete
# ---------------------------------------------------------------------------

def _choose_mask(sys: SetSystem, x: Mask, a: Mask, strategy: Strategy,
                 start: Optional[Element]) -> Optional[Element]:
    """Best addable element of a \\ x under the strategy, or None."""
    if strategy is Strategy.MIN_ELEMENT:
        cand = a & ~x
        while cand:
            low = cand & -cand
            e = low.bit_length()
            if sys.extend_ok(x, e):
                return e
            cand ^= low
        return None
    # layered: stream candidates, keeping only levels of the current set
    t = start if start is not None else sys.source_of(x)
    levels = _level_prefixes(sys, x, t)
    best: Optional[tuple[int, Element]] = None
    cand = a & ~x
    while cand:
        low = cand & -cand
        e = low.bit_length()
        if sys.extend_ok(x, e):
            key = (_candidate_layer(sys, levels, e), e)
            if best is None or key < best:
                best = key
        cand ^= low
    return None if best is None else best[1]


def choose(sys: SetSystem, x: Iterable[Element], a: Iterable[Element],
           strategy: Strategy, start: Optional[Element] = None) -> Element:
    """Next element ``complete`` would add to x from candidate pool a."""
    xm, am = mask_of(x), mask_of(a)
    sys.check_range(xm)
    sys.check_range(am)
    if not sys.is_member(xm):
        raise PreconditionError("choose requires a member of F")
    if strategy is Strategy.LAYERED_MIN:
        st = start if start is not None else sys.source_of(xm)
        if not (bit(st) & xm & sys.good_mask):
            raise PreconditionError(f"start {st} must be a good singleton of the set")
        picked = _choose_mask(sys, xm, am, strategy, st)
    else:
        picked = _choose_mask(sys, xm, am, strategy, None)
    if picked is None:
        raise NoCandidateError("no element can be added")
    return picked


def _complete_mask(sys: SetSystem, x: Mask, a: Mask, strategy: Strategy,
                   stop: Optional[Element] = None,
                   meter=None) -> tuple[Mask, list[Element], bool]:
    """Run the greedy closure; returns (result, additions, truncated).

    ``stop`` enables the truncated variant: the run halts, without
    adding, the first time ``choose`` would return ``stop``.  For the
    layered strategy the reference point is the source of the growing
    set, re-derived whenever a smaller good singleton joins.
    """
    cur = x
    adds: list[Element] = []
    src: Optional[Element] = None
    if strategy is Strategy.LAYERED_MIN:
        if cur == 0:
            raise PreconditionError("layered completion needs a nonempty start set")
        src = sys.source_of(cur)
    if meter is not None:
        meter.add(cur.bit_count())
    try:
        while True:
            picked = _choose_mask(sys, cur, a, strategy, src)
            if picked is None:
                return cur, adds, False
            if stop is not None and picked == stop:
                return cur, adds, True
            cur |= bit(picked)
            adds.append(picked)
            if meter is not None:
                meter.add(1)
            if src is not None and picked < src and (bit(picked) & sys.good_mask):
                src = picked
    finally:
        if meter is not None:
            meter.drop(cur.bit_count())


def complete(sys: SetSystem, x: Iterable[Element], a: Iterable[Element],
             strategy: Strategy) -> tuple[tuple[Element, ...], tuple[Element, ...]]:
    """Greedy closure of x within candidate pool a.

    Returns the closed set and the sequence of additions that built it.
    """
    xm, am = mask_of(x), mask_of(a)
    sys.check_range(xm | am)
    if not sys.is_member(xm):
        raise PreconditionError("complete requires a member of F")
    final, adds, _ = _complete_mask(sys, xm, am, strategy)
    return elements_of(final), tuple(adds)


def complete_truncated(sys: SetSystem, x: Iterable[Element], a: Iterable[Element],
                       w: Element, strategy: Strategy
                       ) -> tuple[tuple[Element, ...], tuple[Element, ...]]:
    """Like ``complete`` but halts just before ``w`` would be added."""
    xm, am = mask_of(x), mask_of(a)
    sys.check_range(xm | am | bit(w))
    if not sys.is_member(xm):
        raise PreconditionError("complete requires a member of F")
    final, adds, _ = _complete_mask(sys, xm, am, strategy, stop=w)
    return elements_of(final), tuple(adds)


# ---------------------------------------------------------------------------
# canonical orders and the parent structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalSolution:
    """A maximal solution together with its canonical order and attributes.

    ``order`` is the addition sequence of ``complete({source}, S)``; its
    first element is the source and every prefix is itself in F.
    ``pivot`` is the earliest element of the order whose prefix already
    completes to S over the full ground set; ``core`` is the prefix just
    before it (empty exactly when the solution is a root).
    """
    elements: tuple[Element, ...]
    order: tuple[Element, ...]
    layers: Optional[tuple[int, ...]]
    source: Element
    pivot: Element
    core: tuple[Element, ...]
    is_root: bool
    strategy: Strategy
    mask: Mask
    core_mask: Mask


def _is_maximal(sys: SetSystem, m: Mask) -> bool:
    return sys.is_member(m) and sys.extension_mask(m, sys.full_mask) == 0


def solution_attrs(sys: SetSystem, s_mask: Mask, strategy: Strategy,
                   meter=None) -> CanonicalSolution:
    """Canonical order plus pivot/core/root attributes, in one pass.

    The pivot is found by replaying the order against full-universe
    choices: the last position j where ``choose(S[j])`` deviates from
    the canonical successor marks the core; everything after it follows
    the canonical path, so the prefix one longer already completes to S.
    """
    src = sys.source_of(s_mask)
    _, adds, _ = _complete_mask(sys, bit(src), s_mask, strategy, meter=meter)
    order = (src,) + tuple(adds)
    n_ord = len(order)
    if meter is not None:
        meter.add(n_ord)
    try:
        layers: Optional[tuple[int, ...]] = None
        if strategy is Strategy.LAYERED_MIN:
            levels = _level_prefixes(sys, s_mask, src)
            layers = tuple(0 if v == src else _candidate_layer(sys, levels, v)
                           for v in order)

        last_bad = 0
        prefix = bit(src)
        full = sys.full_mask
        for j in range(1, n_ord):
            # prefixes share the solution's source, so it is the fixed start
            picked = _choose_mask(sys, prefix, full, strategy,
                                  src if strategy is Strategy.LAYERED_MIN else None)
            if picked != order[j]:
                last_bad = j
            prefix |= bit(order[j])

        pivot = order[last_bad]
        core_mask = mask_of(order[:last_bad])
        return CanonicalSolution(
            elements=elements_of(s_mask),
            order=order,
            layers=layers,
            source=src,
            pivot=pivot,
            core=order[:last_bad],
            is_root=(last_bad == 0),
            strategy=strategy,
            mask=s_mask,
            core_mask=core_mask,
        )
    finally:
        if meter is not None:
            meter.drop(n_ord)


def canonical_order(sys: SetSystem, s: Iterable[Element],
                    strategy: Strategy) -> CanonicalSolution:
    """Public wrapper around ``solution_attrs`` with maximality check."""
    m = mask_of(s)
    sys.check_range(m)
    if not _is_maximal(sys, m):
        raise PreconditionError("canonical orders are defined for maximal solutions")
    return solution_attrs(sys, m, strategy)


def parent_mask(sys: SetSystem, sol: CanonicalSolution, meter=None) -> Optional[Mask]:
    """Completion of the core over the full ground set; None for roots."""
    if sol.is_root:
        return None
    final, _, _ = _complete_mask(sys, sol.core_mask, sys.full_mask,
                                 sol.strategy, meter=meter)
    return final


def parent(sys: SetSystem, s: Iterable[Element],
           strategy: Strategy) -> Optional[tuple[Element, ...]]:
    sol = canonical_order(sys, s, strategy)
    pm = parent_mask(sys, sol)
    return None if pm is None else elements_of(pm)


def restricted_mask(sys: SetSystem, sol: CanonicalSolution, p_mask: Mask,
                    meter=None) -> Mask:
    """The restricted-problem solution deterministically tied to ``sol``.

    It is the completion of core + pivot inside parent + pivot: maximal
    within that reduced universe and guaranteed to contain the pivot.
    """
    start = sol.core_mask | bit(sol.pivot)
    final, _, _ = _complete_mask(sys, start, p_mask | bit(sol.pivot),
                                 sol.strategy, meter=meter)
    return final


def restricted_solution_for(sys: SetSystem, s: Iterable[Element],
                            strategy: Strategy = Strategy.LAYERED_MIN
                            ) -> tuple[Element, ...]:
    """Public form of ``restricted_mask``; rejects roots."""
    sol = canonical_order(sys, s, strategy)
    if sol.is_root:
        raise PreconditionError("roots have no associated restricted solution")
    pm = parent_mask(sys, sol)
    assert pm is not None
    return elements_of(restricted_mask(sys, sol, pm))


def _order_key(sol: CanonicalSolution):
    if sol.strategy is Strategy.MIN_ELEMENT:
        return sol.order
    assert sol.layers is not None
    return tuple(zip(sol.layers, sol.order))


def compare(sys: SetSystem, a: CanonicalSolution, b: CanonicalSolution) -> int:
    """Total order on maximal solutions: -1, 0 or 1.

    Under MIN_ELEMENT the canonical orders are compared as plain
    sequences; under LAYERED_MIN they are compared as sequences of
    (layer, element) pairs.  Both make every parent precede its child.
    """
    if a.strategy is not b.strategy:
        raise PreconditionError("cannot compare solutions from different strategies")
    ka, kb = _order_key(a), _order_key(b)
    if ka == kb:
        return 0
    return -1 if ka < kb else 1
