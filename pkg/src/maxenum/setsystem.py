"""Set systems over a dense, 1-based ground set.

A set system is a ground set U = {1, .., n} together with a family F of
"good" subsets, given algorithmically through a membership oracle.  The
oracle must be pure (same input, same answer) and must accept the empty
set.  Element sets are represented internally as bitmasks, bit ``i - 1``
standing for element ``i``; the thin public wrappers at the bottom of
this module accept and return plain sorted tuples of ints instead.

Beyond membership, the module provides the derived primitives every
enumeration algorithm in this package is built on: extension sets
(elements whose addition preserves membership), good singletons (the
elements that are solutions on their own), the source of a solution
(its smallest good singleton), and an exhaustive classifier that checks
structural properties of small systems (hereditary, strongly
accessible, commutable, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

Element = int
Mask = int


class SetSystemError(Exception):
    """Base class for errors raised by this package."""


class DomainError(SetSystemError):
    """An element lies outside the ground set 1..n."""


class PreconditionError(SetSystemError):
    """An argument violates a documented precondition (e.g. not in F)."""


class NoCandidateError(SetSystemError):
    """A choice was requested but no candidate element exists."""


class SizeGuardError(SetSystemError):
    """An exhaustive routine was asked to run above its size guard."""


# ---------------------------------------------------------------------------
# bitmask helpers
# ---------------------------------------------------------------------------

def bit(e: Element) -> Mask:
    return 1 << (e - 1)


def mask_of(elements: Iterable[Element]) -> Mask:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: Mask) -> tuple[Element, ...]:
    """Decode a bitmask into the sorted tuple of its elements."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def iter_elements(mask: Mask) -> Iterator[Element]:
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def lowest_element(mask: Mask) -> Element:
    if not mask:
        raise NoCandidateError("empty set has no smallest element")
    return (mask & -mask).bit_length()


def popcount(mask: Mask) -> int:
    return mask.bit_count()


def subset_masks_ascending(mask: Mask) -> Iterator[Mask]:
    """All submasks of ``mask``, in ascending binary-counter order.

    Bit i of the counter selects the i-th smallest element, so the order
    is deterministic and restartable from any counter value.
    """
    elems = elements_of(mask)
    k = len(elems)
    bits = [1 << (e - 1) for e in elems]
    for r in range(1 << k):
        sub = 0
        rr = r
        i = 0
        while rr:
            if rr & 1:
                sub |= bits[i]
            rr >>= 1
            i += 1
        yield sub


class SetSystem:
    """A ground set 1..n plus a membership oracle over bitmasks.

    The oracle is the single abstraction point.  Systems may optionally
    provide ``extend``, an incremental test ``extend(x, e)`` equivalent
    to ``oracle(x | bit(e))`` under the assumption that ``x`` is already
    a member; catalog systems use this to answer extension queries in
    O(1) instead of re-checking from scratch.

    Instances are immutable after construction and safe for concurrent
    read-only use; every operation is a pure function of its inputs.
    """

    __slots__ = ("n", "full_mask", "name", "commutable", "connectivity",
                 "q_bound", "restricted_solver", "_oracle", "_extend",
                 "_good_mask")

    def __init__(self, n: int, oracle: Callable[[Mask], bool], *,
                 name: str = "system",
                 extend: Optional[Callable[[Mask, Element], bool]] = None,
                 commutable: bool = False,
                 connectivity: Optional[Sequence[Mask]] = None,
                 q_bound: Optional[int] = None,
                 restricted_solver=None) -> None:
        if n < 0:
            raise DomainError(f"ground set size must be non-negative, got {n}")
        if not oracle(0):
            raise PreconditionError("membership oracle must accept the empty set")
        self.n = n
        self.full_mask = (1 << n) - 1
        self.name = name
        self.commutable = commutable
        # adjacency masks of a reference graph, for the connected-hereditary
        # classification check; None when the system declares no reference
        self.connectivity = tuple(connectivity) if connectivity is not None else None
        self.q_bound = q_bound
        self.restricted_solver = restricted_solver
        self._oracle = oracle
        self._extend = extend
        self._good_mask: Optional[Mask] = None

    # -- membership -------------------------------------------------------

    def is_member(self, mask: Mask) -> bool:
        return self._oracle(mask)

    def extend_ok(self, mask: Mask, e: Element) -> bool:
        """Whether ``mask | {e}`` is a member, assuming ``mask`` is one."""
        if self._extend is not None:
            return self._extend(mask, e)
        return self._oracle(mask | (1 << (e - 1)))

    def extension_mask(self, x: Mask, within: Mask) -> Mask:
        """X^+ restricted to ``within``: addable elements of within \\ x."""
        out = 0
        cand = within & ~x
        while cand:
            low = cand & -cand
            if self.extend_ok(x, low.bit_length()):
                out |= low
            cand ^= low
        return out

    # -- derived primitives -------------------------------------------------

    @property
    def good_mask(self) -> Mask:
        """Mask of good singletons: elements e with {e} in F."""
        if self._good_mask is None:
            z = 0
            for e in range(1, self.n + 1):
                if self._oracle(1 << (e - 1)):
                    z |= 1 << (e - 1)
            self._good_mask = z
        return self._good_mask

    def source_of(self, mask: Mask) -> Element:
        """Smallest good singleton inside ``mask``."""
        inter = mask & self.good_mask
        if not inter:
            raise PreconditionError("set contains no good singleton")
        return (inter & -inter).bit_length()

    def check_range(self, mask: Mask) -> None:
        if mask & ~self.full_mask:
            bad = elements_of(mask & ~self.full_mask)
            raise DomainError(f"elements {bad} outside ground set 1..{self.n}")

    # -- performance helper --------------------------------------------------

    def cached(self, limit: int = 13) -> "SetSystem":
        """A clone whose oracle is a precomputed 2^n truth table.

        Intended for small instances that will take many oracle queries
        (verification harnesses, test matrices).  Returns self unchanged
        when n exceeds ``limit``.
        """
        if self.n > limit:
            return self
        table = bytearray(1 << self.n)
        oracle = self._oracle
        for m in range(1 << self.n):
            table[m] = 1 if oracle(m) else 0
        clone = SetSystem(
            self.n,
            lambda m: bool(table[m]),
            name=self.name,
            extend=lambda x, e: bool(table[x | (1 << (e - 1))]),
            commutable=self.commutable,
            connectivity=self.connectivity,
            q_bound=self.q_bound,
            restricted_solver=self.restricted_solver,
        )
        clone._good_mask = self._good_mask
        return clone


# ---------------------------------------------------------------------------
# public tuple-based operations
# ---------------------------------------------------------------------------

def is_solution(system: SetSystem, x: Iterable[Element]) -> bool:
    """Ask the membership oracle about an element set."""
    m = mask_of(x)
    system.check_range(m)
    return system.is_member(m)


def extension_set(system: SetSystem, x: Iterable[Element],
                  a: Optional[Iterable[Element]] = None) -> tuple[Element, ...]:
    """Elements of ``a`` \\ ``x`` whose addition keeps ``x`` in F, sorted.

    ``a`` defaults to the whole ground set.  Requires ``x`` in F.
    """
    xm = mask_of(x)
    system.check_range(xm)
    if not system.is_member(xm):
        raise PreconditionError("extension sets are defined for members of F only")
    am = system.full_mask if a is None else mask_of(a)
    system.check_range(am)
    return elements_of(system.extension_mask(xm, am))


def good_singletons(system: SetSystem) -> tuple[Element, ...]:
    return elements_of(system.good_mask)


def source(system: SetSystem, x: Iterable[Element]) -> Element:
    """Smallest good singleton of a nonempty member of F."""
    m = mask_of(x)
    system.check_range(m)
    if not m:
        raise PreconditionError("the empty set has no source")
    return system.source_of(m)


# ---------------------------------------------------------------------------
# exhaustive classification (test utility, not a production path)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SystemClassification:
    accessible: bool
    strongly_accessible: bool
    hereditary: bool
    connected_hereditary_witness: bool
    commutable: bool
    counterexamples: dict = field(default_factory=dict)


def _connected_in(adj: Sequence[Mask], mask: Mask) -> bool:
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
            nxt |= adj[low.bit_length()] & mask
            f ^= low
        frontier = nxt & ~reach
        reach |= frontier
    return reach == mask


def classify_system(system: SetSystem, guard: int = 20) -> SystemClassification:
    """Check defining implications of the classic set-system classes.

    Every check enumerates witnesses exhaustively over subsets of the
    ground set, so it is gated on ``n <= guard``.  The first failing
    witness of each check is reported in ``counterexamples``.
    """
    n = system.n
    if n > guard:
        raise SizeGuardError(f"classification is exhaustive; n={n} exceeds guard={guard}")

    size = 1 << n
    member = bytearray(size)
    for m in range(size):
        member[m] = 1 if system.is_member(m) else 0

    counter: dict[str, str] = {}

    # per-member mask of single-element extensions
    ext = {}
    for m in range(size):
        if not member[m]:
            continue
        em = 0
        for e in range(1, n + 1):
            b = 1 << (e - 1)
            if not (m & b) and member[m | b]:
                em |= b
        ext[m] = em

    accessible = True
    for m in ext:
        if m == 0:
            continue
        ok = False
        mm = m
        while mm:
            low = mm & -mm
            if member[m ^ low]:
                ok = True
                break
            mm ^= low
        if not ok:
            accessible = False
            counter["accessible"] = f"{elements_of(m)} has no removable element"
            break

    hereditary = True
    for m in ext:
        mm = m
        while mm and hereditary:
            low = mm & -mm
            if not member[m ^ low]:
                hereditary = False
                counter["hereditary"] = (
                    f"{elements_of(m ^ low)} is not in F although {elements_of(m)} is")
            mm ^= low
        if not hereditary:
            break

    strongly = True
    for y in ext:
        if y == 0 or not strongly:
            continue
        sub = (y - 1) & y
        while True:
            if member[sub] and not (ext[sub] & y):
                strongly = False
                counter["strongly_accessible"] = (
                    f"{elements_of(sub)} inside {elements_of(y)} has no extension")
                break
            if sub == 0:
                break
            sub = (sub - 1) & y

    # has_sup[m]: some superset of m (possibly m itself) is a member.
    # Masks are visited in descending order so every m | b is already done.
    has_sup = bytearray(size)
    for m in range(size - 1, -1, -1):
        if member[m]:
            has_sup[m] = 1
            continue
        rest = system.full_mask & ~m
        while rest:
            low = rest & -rest
            if has_sup[m | low]:
                has_sup[m] = 1
                break
            rest ^= low

    commutable = True
    for m in ext:
        if m == 0 or not commutable:
            continue
        cands = elements_of(ext[m])
        for i, a in enumerate(cands):
            for b_el in cands[i + 1:]:
                pair = m | bit(a) | bit(b_el)
                if has_sup[pair] and not member[pair]:
                    commutable = False
                    counter["commutable"] = (
                        f"{elements_of(m)} + {a} and + {b_el} are in F, "
                        f"a common superset exists, but + both is not")
                    break
            if not commutable:
                break

    witness = False
    if system.connectivity is not None:
        adj = system.connectivity
        witness = True
        for y in ext:
            if not witness:
                break
            sub = (y - 1) & y
            while True:
                if not member[sub] and _connected_in(adj, sub):
                    witness = False
                    counter["connected_hereditary_witness"] = (
                        f"connected subset {elements_of(sub)} of member "
                        f"{elements_of(y)} is not in F")
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & y

    return SystemClassification(
        accessible=accessible,
        strongly_accessible=strongly,
        hereditary=hereditary,
        connected_hereditary_witness=witness,
        commutable=commutable,
        counterexamples=counter,
    )
