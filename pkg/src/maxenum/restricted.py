"""Restricted problem solvers: maximal solutions inside P + {w}, except P.

The refined engine turns child generation into repeated calls of this
reduced enumeration problem.  The generic solver works on any system by
brute force over the (at most q+1 element) reduced universe; the
bi-colored clique solver exploits structure to answer in linear time,
and is cross-validated against the generic one in the test-suite rather
than trusted on faith.

Both solvers return a list: deterministic, ordered, and therefore
restartable from any previously returned solution, which the stateless
engine relies on.
"""

from __future__ import annotations

from .setsystem import (Element, Mask, PreconditionError, SetSystem,
                        SizeGuardError, bit, elements_of,
                        subset_masks_ascending)


def _check_restricted_args(sys: SetSystem, p_mask: Mask, w: Element) -> None:
    sys.check_range(p_mask | bit(w))
    if p_mask & bit(w):
        raise PreconditionError(f"element {w} already belongs to the solution")
    if not sys.is_member(p_mask) or sys.extension_mask(p_mask, sys.full_mask):
        raise PreconditionError("restricted problems are posed for maximal solutions")


def restr_generic(sys: SetSystem, p_mask: Mask, w: Element,
                  guard: int = 22) -> list[Mask]:
    """All maximal members of F within P + {w}, excluding P, by brute force.

    Maximality inside the reduced universe is tested by single-element
    extension, which is exact for strongly accessible systems (the
    standing assumption of this framework).  Results are sorted by their
    element sequence, the package-wide deterministic order.
    """
    _check_restricted_args(sys, p_mask, w)
    universe = p_mask | bit(w)
    if universe.bit_count() > guard:
        raise SizeGuardError(
            f"generic restricted solver is exponential; |P|+1 = "
            f"{universe.bit_count()} exceeds guard={guard}")
    out = []
    for m in subset_masks_ascending(universe):
        if m == p_mask or m == 0 or not sys.is_member(m):
            continue
        if sys.extension_mask(m, universe) == 0:
            out.append(m)
    out.sort(key=elements_of)
    return out


def _black_component(black, mask: Mask, start_bit: Mask) -> Mask:
    reach = start_bit
    frontier = start_bit
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= black[low.bit_length()] & mask
            f ^= low
        frontier = nxt & ~reach
        reach |= frontier
    return reach


def restr_bcclique(graph, p_mask: Mask, w: Element) -> list[Mask]:
    """Restricted solver specialised to bi-colored cliques.

    Any maximal solution of the reduced problem other than P must
    contain w (one avoiding w would sit inside P and extend towards P),
    and every solution containing w lives inside N(w) ∩ P plus w, which
    is a clique; its black component around w is therefore the single
    candidate.  The stream holds at most one element.
    """
    from .systems import bcclique_oracle_masks  # local import to avoid a cycle

    both, black = graph.both, graph.black
    if not bcclique_oracle_masks(both, black, p_mask):
        raise PreconditionError("P is not a bi-colored clique")
    wb = bit(w)
    if p_mask & wb:
        raise PreconditionError(f"element {w} already belongs to the solution")
    neigh = p_mask & both[w]
    cand = _black_component(black, neigh | wb, wb)
    return [cand] if cand != p_mask else []
