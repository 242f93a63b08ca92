"""Lazy group elements over the naturals, with a finitary subclass.

A Permutation is a forward oracle, an optional inverse oracle, and a
provenance tree recording how the element was built. Inverses are always
derived structurally from the provenance, never by searching for
preimages. Structural equality of provenance is the only way two
distinct objects are recognized as the same element without scanning.

FinitaryPermutation stores an explicit finite bijection and is closed
under composition and inversion, which keeps long chains of adjacent
transpositions cheap: composing two explicit maps yields an explicit
map, so a chain never deepens the call structure.

Composition follows the usual convention: compose(g, f) applies f first.
A sequence of swaps applied to the identity array therefore composes
with the earliest swap as the leftmost factor,

    swaps s1, s2, ..., st  ==  adjacent(s1) o adjacent(s2) o ... o adjacent(st)

because swapping entries k and k+1 of the array of a map equals
composing that map with adjacent(k) on the right.
"""

from __future__ import annotations

import json
from typing import Callable, Dict, Iterable, Optional, Sequence, Set, Tuple

from .errors import BadOrder, DuplicateEntries, LengthMismatch, NoInverse


class Permutation:
    """A bijection of the naturals given by oracles plus provenance."""

    def __init__(
        self,
        forward: Callable[[int], int],
        inverse: Optional[Callable[[int], int]] = None,
        provenance: Tuple = ("opaque",),
        describe: str = "opaque",
    ):
        self._forward = forward
        self._inverse = inverse
        self.provenance = provenance
        self._describe = describe

    def __repr__(self):
        return f"Permutation({self._describe})"

    def describe(self) -> str:
        return self._describe

    def apply(self, n: int) -> int:
        if n < 0:
            raise ValueError("arguments live in the naturals")
        return self._forward(n)

    __call__ = apply

    @property
    def has_inverse(self) -> bool:
        return self._inverse is not None

    def preimage(self, n: int) -> int:
        if self._inverse is None:
            raise NoInverse(f"{self._describe} carries no inverse oracle")
        if n < 0:
            raise ValueError("arguments live in the naturals")
        return self._inverse(n)

    def inverse(self) -> "Permutation":
        """Structural inverse. Double inversion unwraps to the original."""
        if self._inverse is None:
            raise NoInverse(f"{self._describe} carries no inverse oracle")
        if self.provenance[0] == "identity":
            return self
        if self.provenance[0] == "inverse":
            return self.provenance[1]
        return Permutation(
            self._inverse,
            self._forward,
            provenance=("inverse", self),
            describe=f"inverse({self._describe})",
        )

    def same_structure(self, other: "Permutation") -> bool:
        """Provenance-level equality. Conservative: False means unknown."""
        return _same_provenance(self.provenance, other.provenance)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)


def _same_provenance(a: Tuple, b: Tuple) -> bool:
    if a[0] != b[0] or len(a) != len(b):
        return False
    for left, right in zip(a[1:], b[1:]):
        if isinstance(left, Permutation) and isinstance(right, Permutation):
            if not _same_provenance(left.provenance, right.provenance):
                return False
        elif left != right:
            return False
    return True


class FinitaryPermutation(Permutation):
    """An explicit bijection on a finite domain, identity elsewhere.

    Fixed points are pruned on construction, so the stored mapping is
    exactly the support. The mapping must permute its own domain.
    """

    def __init__(
        self,
        mapping: Dict[int, int],
        provenance: Optional[Tuple] = None,
        describe: Optional[str] = None,
    ):
        moved = {k: v for k, v in mapping.items() if k != v}
        if any(k < 0 or v < 0 for k, v in moved.items()):
            raise ValueError("finitary maps live inside the naturals")
        if set(moved) != set(moved.values()):
            raise ValueError("mapping must be a bijection of its domain")
        self.mapping = dict(sorted(moved.items()))
        self._backward = {v: k for k, v in self.mapping.items()}
        items = tuple(self.mapping.items())
        if provenance is None:
            provenance = ("finitary", items)
        if describe is None:
            describe = "finitary:" + ",".join(f"{k}>{v}" for k, v in items)
        super().__init__(
            lambda n: self.mapping.get(n, n),
            lambda n: self._backward.get(n, n),
            provenance=provenance,
            describe=describe,
        )

    def __eq__(self, other):
        if isinstance(other, FinitaryPermutation):
            return self.mapping == other.mapping
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.mapping.items()))

    def inverse(self) -> "FinitaryPermutation":
        return FinitaryPermutation(self._backward)

    def support(self) -> Set[int]:
        return set(self.mapping)

    def to_json(self) -> str:
        """Serialize as {"map": {...}}. Keys are decimal strings."""
        return json.dumps(
            {"map": {str(k): v for k, v in self.mapping.items()}}, sort_keys=True
        )

    @classmethod
    def from_json(cls, text: str) -> "FinitaryPermutation":
        data = json.loads(text)
        return cls({int(k): int(v) for k, v in data["map"].items()})

    def as_transpositions(self) -> list:
        """Decompose into two-point swaps, rightmost applied first."""
        swaps = []
        seen = set()
        for start in self.mapping:
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.mapping[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.mapping[nxt]
            # (c0 c1 ... cr) = (c0 c1)(c1 c2)...(c_{r-1} c_r)
            for a, b in zip(cycle, cycle[1:]):
                swaps.append((min(a, b), max(a, b)))
        return swaps


def identity() -> Permutation:
    return Permutation(
        lambda n: n, lambda n: n, provenance=("identity",), describe="identity"
    )


def adjacent_transposition(k: int) -> FinitaryPermutation:
    """The swap of k and k+1."""
    if k < 0:
        raise ValueError("position must be a natural number")
    return FinitaryPermutation(
        {k: k + 1, k + 1: k},
        provenance=("adjacent", k),
        describe=f"adjacent:{k}",
    )


def compose(g: Permutation, f: Permutation) -> Permutation:
    """g after f. Two explicit maps compose into an explicit map."""
    if isinstance(g, FinitaryPermutation) and isinstance(f, FinitaryPermutation):
        domain = set(g.mapping) | set(f.mapping)
        return FinitaryPermutation({x: g.apply(f.apply(x)) for x in domain})
    inverse = None
    if g.has_inverse and f.has_inverse:
        inverse = lambda n: f.preimage(g.preimage(n))
    return Permutation(
        lambda n: g.apply(f.apply(n)),
        inverse,
        provenance=("compose", g, f),
        describe=f"compose({g.describe()},{f.describe()})",
    )


def compose_adjacent(positions: Iterable[int]) -> FinitaryPermutation:
    """Compose adjacent transpositions in application order.

    The first listed swap acts first, matching the entry-swap process on
    one-line arrays, so the result equals the array produced by applying
    the same swaps in the same order.
    """
    acc = FinitaryPermutation({})
    for k in positions:
        acc = compose(acc, adjacent_transposition(k))
    return acc


def transposition(i: int, j: int) -> FinitaryPermutation:
    """The swap of i and j, built from adjacent swaps and then verified.

    The chain walks j-1 down to i and back up to j-1. Composing it gives
    exactly the two-point swap; construction fails loudly if it ever did
    not.
    """
    if not 0 <= i < j:
        raise BadOrder(f"need 0 <= i < j, got i={i}, j={j}")
    chain = list(range(j - 1, i - 1, -1)) + list(range(i + 1, j))
    built = compose_adjacent(chain)
    if built.mapping != {i: j, j: i}:
        raise AssertionError("adjacent-swap chain failed to produce the swap")
    return FinitaryPermutation(
        built.mapping, describe=f"transpose:{i},{j}"
    )


def support(perm: Permutation, bound: int) -> Set[int]:
    """Moved points. Exact and total for finitary maps, windowed otherwise."""
    if isinstance(perm, FinitaryPermutation):
        return perm.support()
    return {n for n in range(bound + 1) if perm.apply(n) != n}


def equal_on_prefix(left: Permutation, right: Permutation, n: int) -> bool:
    """Pointwise agreement at every index up to and including n."""
    return all(left.apply(k) == right.apply(k) for k in range(n + 1))


def _close_partial(pairs: Dict[int, int]) -> Dict[int, int]:
    """Extend a partial injection to a bijection of a finite superset.

    Unmatched domain points are matched to unmatched range points in
    ascending order, the least intrusive completion.
    """
    values = list(pairs.values())
    if len(set(values)) != len(values):
        raise ValueError("partial map is not injective")
    ground = set(pairs) | set(values)
    free_sources = sorted(ground - set(pairs))
    free_targets = sorted(ground - set(values))
    closed = dict(pairs)
    closed.update(zip(free_sources, free_targets))
    return closed


def finitary_approximation(tau: Permutation, n: int) -> FinitaryPermutation:
    """A finitary element agreeing with tau on [0, n] in both directions.

    The graph of tau is collected on [0, n] together with the preimages
    of [0, n], then closed to a finite bijection. The result matches tau
    and its inverse on the whole window, which pins the distance between
    them below 2^-(n+1).
    """
    if not tau.has_inverse:
        raise NoInverse("finitary approximation needs an inverse oracle")
    if n < 0:
        raise ValueError("window end must be a natural number")
    domain = set(range(n + 1)) | {tau.preimage(k) for k in range(n + 1)}
    pairs = {x: tau.apply(x) for x in domain}
    return FinitaryPermutation(_close_partial(pairs))


def transitive_witness(
    sources: Sequence[int], targets: Sequence[int]
) -> FinitaryPermutation:
    """A finitary element carrying each source to its target.

    Witnesses that the finitary elements act transitively on tuples of
    distinct points.
    """
    if len(sources) != len(targets):
        raise LengthMismatch(
            f"{len(sources)} sources against {len(targets)} targets"
        )
    if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
        raise DuplicateEntries("witness tuples must not repeat elements")
    if any(x < 0 for x in sources) or any(x < 0 for x in targets):
        raise ValueError("witness points live in the naturals")
    return FinitaryPermutation(_close_partial(dict(zip(sources, targets))))
