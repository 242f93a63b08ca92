"""A metric on permutations of the naturals, computed to finite depth.

The distance between two permutations is driven by the first point where
they disagree: forward radius 2^-j when j is the least disagreement of
the maps themselves, and the full distance takes the worse of the
forward radius and the same quantity for the inverses. Agreement can
only ever be checked on a finite window, so a scan that never finds a
disagreement yields an upper bound, not a value. MetricValue keeps the
two outcomes distinct instead of collapsing the bound into a number.

Structural provenance equality is the one escape hatch: two elements
built the same way are equal, giving an exact distance of zero with no
scan at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NoInverse
from .group import Permutation


@dataclass(frozen=True)
class MetricValue:
    """Either an exact dyadic distance or a certified upper bound.

    exact=True: the distance is 2^-exponent, where exponent=None encodes
    zero. exact=False: the distance is at most 2^-exponent and the scan
    depth was exponent.
    """

    exact: bool
    exponent: Optional[int]

    @classmethod
    def zero(cls) -> "MetricValue":
        return cls(True, None)

    @classmethod
    def exact_power(cls, j: int) -> "MetricValue":
        return cls(True, j)

    @classmethod
    def agreement_bound(cls, depth: int) -> "MetricValue":
        return cls(False, depth)

    def cap(self) -> Fraction:
        """The distance itself when exact, otherwise the certified cap."""
        if self.exponent is None:
            return Fraction(0)
        return Fraction(1, 2**self.exponent)

    def text(self) -> str:
        if self.exact:
            if self.exponent is None:
                return "0 (exact)"
            if self.exponent == 0:
                return "1 (exact)"
            return f"1/{2 ** self.exponent} (exact)"
        return f"<= 2^-{self.exponent} (agreement bound)"

    def json_obj(self) -> dict:
        if self.exact:
            if self.exponent is None:
                return {"kind": "exact", "value": "0"}
            return {"kind": "exact", "value": f"2^-{self.exponent}"}
        return {"kind": "bound", "value": f"<=2^-{self.exponent}"}


def forward_distance(
    sigma: Permutation, tau: Permutation, max_depth: int
) -> MetricValue:
    """First-disagreement radius of the forward maps on [0, max_depth)."""
    if max_depth <= 0:
        raise ValueError("scan depth must be positive")
    if sigma.same_structure(tau):
        return MetricValue.zero()
    for j in range(max_depth):
        if sigma.apply(j) != tau.apply(j):
            return MetricValue.exact_power(j)
    return MetricValue.agreement_bound(max_depth)


def _combine(forward: MetricValue, backward: MetricValue) -> MetricValue:
    """Max of two metric values, bounds kept honest.

    An exact value at least as large as a bound's cap dominates it. Two
    bounds only certify agreement to the shallower depth. An exact value
    below a bound's cap cannot be resolved, so the bound wins.
    """
    if forward.exact and backward.exact:
        a = forward.cap()
        b = backward.cap()
        return forward if a >= b else backward
    if forward.exact:
        if forward.cap() >= backward.cap():
            return forward
        return backward
    if backward.exact:
        if backward.cap() >= forward.cap():
            return backward
        return forward
    return MetricValue.agreement_bound(min(forward.exponent, backward.exponent))


def distance(sigma: Permutation, tau: Permutation, max_depth: int) -> MetricValue:
    """Two-sided distance: worse of forward and inverse disagreement radii.

    Both arguments must carry inverse oracles; the inverse scan is a
    genuine second scan, not a mirror of the first.
    """
    if not sigma.has_inverse or not tau.has_inverse:
        raise NoInverse("the two-sided distance needs both inverses")
    if sigma.same_structure(tau):
        return MetricValue.zero()
    forward = forward_distance(sigma, tau, max_depth)
    backward = MetricValue.zero()
    for j in range(max_depth):
        if sigma.preimage(j) != tau.preimage(j):
            backward = MetricValue.exact_power(j)
            break
    else:
        backward = MetricValue.agreement_bound(max_depth)
    return _combine(forward, backward)
