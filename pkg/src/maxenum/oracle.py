"""Brute-force ground truth for tiny instances.

Everything here enumerates all 2^n subsets, so it is gated behind size
guards and is never a production path.  Maximality is checked against
actual supersets in F, not single-element extensions, so these results
stay valid even for systems that are not strongly accessible; that is
what makes them a trustworthy oracle for the enumeration engines.
"""

from __future__ import annotations

from typing import Iterable

from .setsystem import (Element, Mask, PreconditionError, SetSystem,
                        SetSystemError, SizeGuardError, elements_of, mask_of)


def _maximal_mask_set(inst: SetSystem, guard: int) -> set[Mask]:
    n = inst.n
    if n > guard:
        raise SizeGuardError(f"brute force over 2^{n} subsets exceeds guard={guard}")
    size = 1 << n
    member = bytearray(size)
    for m in range(size):
        member[m] = 1 if inst.is_member(m) else 0
    # has_sup[m]: some strict or equal superset of m is a member; masks are
    # visited descending so every m | b is resolved before m
    has_sup = bytearray(size)
    out: set[Mask] = set()
    full = inst.full_mask
    for m in range(size - 1, -1, -1):
        strict = False
        rest = full & ~m
        while rest:
            low = rest & -rest
            if has_sup[m | low]:
                strict = True
                break
            rest ^= low
        has_sup[m] = 1 if (member[m] or strict) else 0
        if member[m] and not strict and m:
            out.add(m)
    return out


def brute_force_maximal(inst: SetSystem, guard: int = 16) -> set[tuple[Element, ...]]:
    """All nonempty maximal members of F, as sorted element tuples.

    The empty set is never reported: when F = {{}} the result is simply
    empty, which matches what the enumeration engines emit, so the two
    sides compare on the same universe.
    """
    return {elements_of(m) for m in _maximal_mask_set(inst, guard)}


def lexmin_complete(inst: SetSystem, x: Iterable[Element],
                    guard: int = 16) -> tuple[Element, ...]:
    """Lexicographically smallest maximal superset of x, by brute force.

    Minimum is taken over sorted element sequences.  Finding this set
    efficiently is intractable in general (for bi-colored cliques it
    decides satisfiability), which is exactly why the enumeration
    engines are built around greedy completions instead; this function
    exists so tests can exercise that hardness story on tiny inputs.
    """
    xm = mask_of(x)
    inst.check_range(xm)
    if not inst.is_member(xm):
        raise PreconditionError("lexmin completion requires a member of F")
    best: tuple[Element, ...] | None = None
    for m in _maximal_mask_set(inst, guard):
        if m & xm == xm:
            t = elements_of(m)
            if best is None or t < best:
                best = t
    if best is None:
        if xm == 0:
            return ()
        raise SetSystemError(
            "no maximal superset found; the system violates strong accessibility")
    return best
