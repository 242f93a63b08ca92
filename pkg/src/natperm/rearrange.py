"""Permutations of the naturals built from subsets by adjacent swaps.

A subset, listed in increasing order, acts on the identity sequence: for
each element a in turn, swap the entries at positions a and a+1. Entry i
is only ever touched by the swaps at positions i-1 and i, and elements
are applied in increasing order, so every entry stabilizes and the
pointwise limit is a well defined map.

The limit has a closed form over the maximal blocks of consecutive
elements. A block [m, n] contributes the cycle m -> m+1 -> ... -> n+1 -> m
and indices outside every block stay fixed. Concretely:

    x a member                   maps to x + 1
    x not a member, x-1 a member maps to the start of the block ending at x-1
    otherwise                    fixed

Two independent routes to the same values live side by side here. The
swap-by-swap construction (oneline_from_swaps, oneline_prefix) is the
oracle; Rearrangement.apply and .preimage are the closed form everything
else uses. Tests hold them against each other.

Inverse evaluation scans upward for the end of a block, which only fails
to terminate when the block is infinite. A declared tail certifies that
outcome (NoPreimage); otherwise the scan gives up after its fuel budget
(FuelExhausted) without claiming anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DEFAULT_FUEL,
    BoundTooSmall,
    FuelExhausted,
    NoDifference,
    NoPreimage,
    RepeatedEntry,
)
from .sets import NatSet


def oneline_from_swaps(positions: Sequence[int], length: int) -> List[int]:
    """Apply adjacent swaps at the listed positions to the identity array.

    Positions may come in any order but must be distinct, and every swap
    must fit: position + 2 <= length. The result is exact for the listed
    sequence, with no claim about unlisted later swaps.
    """
    arr = list(range(length))
    seen = set()
    for a in positions:
        if a < 0:
            raise BoundTooSmall(f"swap position {a} is not a natural number")
        if a in seen:
            raise RepeatedEntry(f"swap position {a} listed twice")
        seen.add(a)
        if a + 2 > length:
            raise BoundTooSmall(
                f"swap at {a} needs an array of length at least {a + 2}, got {length}"
            )
        arr[a], arr[a + 1] = arr[a + 1], arr[a]
    return arr


@dataclass(frozen=True)
class OnelinePrefix:
    """A certified prefix of the limit in one-line notation.

    Every index up to stable_through carries its final value: the swaps
    that could still touch it have all been applied.
    """

    values: Tuple[int, ...]
    stable_through: int


def oneline_prefix(base: NatSet, length: int) -> OnelinePrefix:
    """First `length` values of the limit, by brute force.

    Internally the array is one entry longer than requested and the swaps
    for every member below `length` are applied. Entry i is touched only
    by the swaps at i-1 and i, so each returned index is already stable
    and the prefix equals the limit everywhere it reports.
    """
    if length < 1:
        raise ValueError("prefix length must be at least 1")
    members = [a for a in range(length) if a in base]
    arr = oneline_from_swaps(members, length + 1)
    return OnelinePrefix(tuple(arr[:length]), length - 1)


def _block_start(base: NatSet, x: int) -> int:
    # walk down to the first member of the block containing member x
    m = x
    while m >= 1 and (m - 1) in base:
        m -= 1
    return m


class Rearrangement:
    """The permutation induced by a subset, evaluated in closed form."""

    def __init__(self, base: NatSet, fuel: int = DEFAULT_FUEL):
        if fuel < 1:
            raise ValueError("fuel must be positive")
        self.base = base
        self.fuel = fuel

    def __repr__(self):
        return f"Rearrangement({self.base.spec})"

    def apply(self, x: int) -> int:
        """Forward evaluation. Total; never needs fuel."""
        if x < 0:
            raise ValueError("arguments live in the naturals")
        if x in self.base:
            return x + 1
        if x >= 1 and (x - 1) in self.base:
            return _block_start(self.base, x - 1)
        return x

    __call__ = apply

    def preimage(self, y: int) -> int:
        """Inverse evaluation by scanning for the end of a block.

        Raises NoPreimage when a declared tail proves the block infinite,
        and FuelExhausted when the scan runs out of budget undecided.
        """
        if y < 0:
            raise ValueError("arguments live in the naturals")
        base = self.base
        if y >= 1 and (y - 1) in base:
            return y - 1
        if y in base:
            # y starts its block; its preimage is one past the block end
            end = y
            for _ in range(self.fuel):
                if base.true_from is not None and end + 1 >= base.true_from:
                    raise NoPreimage(y)
                if (end + 1) in base:
                    end += 1
                else:
                    return end + 1
            raise FuelExhausted(y, self.fuel)
        return y

    def as_permutation(self):
        """Wrap as a lazy group element.

        A declared tail makes the map provably not onto, so no inverse
        oracle is attached in that case.
        """
        from .group import Permutation

        inverse = None if self.base.true_from is not None else self.preimage
        return Permutation(
            self.apply,
            inverse,
            provenance=("rearrangement", self.base.spec),
            describe=f"rearrange:{self.base.spec}",
        )


@dataclass(frozen=True)
class Run:
    """A maximal block of consecutive members found inside a scan window.

    end is None when the block touches the window edge, in which case its
    true extent is unresolved (it continues at least to the edge).
    """

    start: int
    end: Optional[int] = None

    @property
    def resolved(self) -> bool:
        return self.end is not None

    def __str__(self):
        return f"[{self.start},{self.end}]" if self.resolved else f"[{self.start},...?"


def runs(base: NatSet, bound: int) -> List[Run]:
    """Maximal consecutive blocks of the members at or below bound."""
    if bound < 0:
        raise ValueError("bound must be a natural number")
    found: List[Run] = []
    start = None
    for n in range(bound + 1):
        if n in base:
            if start is None:
                start = n
        elif start is not None:
            found.append(Run(start, n - 1))
            start = None
    if start is not None:
        found.append(Run(start, None))  # touches the scan bound
    return found


@dataclass(frozen=True)
class ConsecutiveCycle:
    """The cycle first -> first+1 -> ... -> last -> first, identity elsewhere."""

    first: int
    last: int

    def apply(self, x: int) -> int:
        if self.first <= x < self.last:
            return x + 1
        if x == self.last:
            return self.first
        return x

    def __str__(self):
        return "(" + " ".join(str(k) for k in range(self.first, self.last + 1)) + ")"


@dataclass(frozen=True)
class CycleDecomposition:
    """Disconnected increasing consecutive cycles, one per resolved block.

    A trailing block that touched the scan bound is reported separately
    instead of being turned into a cycle of unknown extent.
    """

    cycles: List[ConsecutiveCycle]
    unresolved: Optional[Run]
    bound: int

    def apply(self, x: int) -> int:
        for cycle in self.cycles:
            if cycle.first <= x <= cycle.last:
                return cycle.apply(x)
        return x

    def certain_through(self) -> int:
        """Largest index at which apply is known to agree with the limit."""
        if self.unresolved is not None:
            return self.unresolved.start - 1
        return self.bound

    def __str__(self):
        body = "".join(str(c) for c in self.cycles) or "identity"
        if self.unresolved is not None:
            body += f" unresolved:[{self.unresolved.start}..]"
        return body


def cycle_decomposition(base: NatSet, bound: int) -> CycleDecomposition:
    """Cycle form of the limit over a scan window.

    Each resolved block [m, n] becomes the cycle on m..n+1. Applying the
    cycles reproduces forward evaluation up to the start of any
    unresolved trailing block.
    """
    blocks = runs(base, bound)
    unresolved = None
    cycles = []
    for block in blocks:
        if block.resolved:
            cycles.append(ConsecutiveCycle(block.start, block.end + 1))
        else:
            unresolved = block
    return CycleDecomposition(cycles, unresolved, bound)


def eventually_commutative_index(base: NatSet, bound: int) -> Optional[int]:
    """Index past the last adjacency among the ordered members, if certifiable.

    Members are listed in increasing order within the window. If none of
    them are adjacent the answer is 0. Otherwise the answer is two past
    the position of the final adjacent pair, the first index whose tail
    is free of adjacency. When that pair touches the scan bound the
    adjacency may continue beyond the window, so no index is certified
    and the answer is None. The verdict is relative to the bound either
    way.
    """
    elems = [n for n in range(bound + 1) if n in base]
    adjacent = [i for i in range(len(elems) - 1) if elems[i + 1] - elems[i] == 1]
    if not adjacent:
        return 0
    last = adjacent[-1]
    if elems[last + 1] >= bound:
        return None
    return last + 2


@dataclass(frozen=True)
class InjectivityWitness:
    """A point moved up by one set's rearrangement and not by the other's.

    index is the position of the first disagreement between the ordered
    member listings. point belongs to the set whose listing is smaller
    there; that rearrangement sends it up by one while the other cannot.
    """

    index: int
    point: int
    moved_image: int
    stayed_image: int
    point_owner: str  # "first" or "second"


def injectivity_witness(
    first: NatSet, second: NatSet, bound: int
) -> InjectivityWitness:
    """Separate two distinct sets by a point their rearrangements disagree on.

    The ordered member listings inside the window are compared position
    by position. At the first mismatch, the smaller element is a member
    of exactly one set and sits strictly between the other's neighbors,
    so one map sends it to point+1 while the other sends it no higher
    than point.
    """
    listing_a = [n for n in range(bound + 1) if n in first]
    listing_b = [n for n in range(bound + 1) if n in second]
    index = None
    for i in range(max(len(listing_a), len(listing_b))):
        a = listing_a[i] if i < len(listing_a) else None
        b = listing_b[i] if i < len(listing_b) else None
        if a != b:
            index = i
            break
    if index is None:
        raise NoDifference(f"sets agree inside [0, {bound}]")
    a = listing_a[index] if index < len(listing_a) else None
    b = listing_b[index] if index < len(listing_b) else None
    # a missing element lies beyond the window, hence beyond the other's
    if a is not None and (b is None or a < b):
        owner, point, inside, outside = "first", a, first, second
    else:
        owner, point, inside, outside = "second", b, second, first
    moved = Rearrangement(inside).apply(point)
    stayed = Rearrangement(outside).apply(point)
    return InjectivityWitness(index, point, moved, stayed, owner)
