"""Exact arithmetic on binary expansions of points in [0, 1).

Digit i carries weight 2^-(i+1), so a sequence is read left to right as
0.d0 d1 d2 and index 0 is the most significant fractional bit. Addition
mod 1 is computed digitwise: the carry into position i is decided by the
first position j > i where the digit sum of the two addends is not 1. A
sum that stays 1 forever never settles the carry, and no finite scan can
rule that out, so carries are resolved under an explicit lookahead
budget and a stalled scan is an error rather than a guess.

The golden rotation number (sqrt(5) - 1)/2 is produced by exact integer
square root, never floating point: floor of floor composes, so every
prefix agrees bit for bit with every longer one.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .errors import AllOnes, TooFewDigits, Unresolved
from .sets import NatSet

_GOLDEN_GUARD = 64
_golden_lock = threading.Lock()
_golden_cache: List[int] = []


def golden_beta(n: int) -> List[int]:
    """First n binary digits of (sqrt(5) - 1)/2 by integer square root.

    With p = n + guard fractional bits, floor(sqrt(5) * 2^p) - 2^p is
    floor of beta * 2^(p+1); shifting the guard back off leaves exactly
    floor(beta * 2^n), so prefixes of different lengths never disagree.
    """
    if n < 0:
        raise ValueError("digit count must be a natural number")
    if n == 0:
        return []
    p = n + _GOLDEN_GUARD
    x = math.isqrt(5 << (2 * p)) - (1 << p)
    top = x >> (_GOLDEN_GUARD + 1)
    return [(top >> (n - 1 - i)) & 1 for i in range(n)]


def _golden_digit(i: int) -> int:
    with _golden_lock:
        if i >= len(_golden_cache):
            grown = golden_beta(max(64, 2 * (i + 1)))
            del _golden_cache[:]
            _golden_cache.extend(grown)
        return _golden_cache[i]


class BinarySeq:
    """A point of [0, 1) as a total digit oracle plus a kind tag."""

    def __init__(self, digit: Callable[[int], int], kind: str, spec: str):
        self._digit = digit
        self.kind = kind
        self.spec = spec

    def __repr__(self):
        return f"BinarySeq({self.spec})"

    def digit(self, i: int) -> int:
        if i < 0:
            raise ValueError("digit index must be a natural number")
        return self._digit(i)

    def prefix(self, n: int) -> List[int]:
        return [self.digit(i) for i in range(n)]

    def prefix_string(self, n: int) -> str:
        return "".join(str(b) for b in self.prefix(n))

    @classmethod
    def zero(cls) -> "BinarySeq":
        return cls(lambda i: 0, "constant-prefix", "zero")

    @classmethod
    def from_bits(cls, bits) -> "BinarySeq":
        """Finite prefix, zero from there on. Accepts a '01' string."""
        if isinstance(bits, str):
            if any(c not in "01" for c in bits):
                raise ValueError("digit strings contain only '0' and '1'")
            stored = tuple(int(c) for c in bits)
        else:
            stored = tuple(int(b) for b in bits)
            if any(b not in (0, 1) for b in stored):
                raise ValueError("digits are 0 or 1")
        text = "".join(str(b) for b in stored)
        return cls(
            lambda i: stored[i] if i < len(stored) else 0,
            "constant-prefix",
            f"bits:{text}",
        )

    @classmethod
    def from_fraction(cls, numerator: int, denominator: int) -> "BinarySeq":
        """The expansion of a rational in [0, 1) by long division.

        Digits are produced in growing batches and memoized; a dyadic
        rational gets its terminating expansion, never the tail of ones.
        """
        if denominator <= 0 or not 0 <= numerator < denominator:
            raise ValueError("need 0 <= numerator < denominator")
        lock = threading.Lock()
        digits: List[int] = []
        state = [numerator]

        def ensure(n: int):
            while len(digits) < n:
                x = state[0] * 2
                digits.append(x // denominator)
                state[0] = x % denominator

        def digit(i: int) -> int:
            with lock:
                if i >= len(digits):
                    ensure(max(i + 1, 2 * len(digits), 16))
                return digits[i]

        return cls(digit, "rational", f"rational:{numerator}/{denominator}")

    @classmethod
    def golden(cls) -> "BinarySeq":
        return cls(_golden_digit, "golden", "golden")

    @classmethod
    def prng(cls, seed: int) -> "BinarySeq":
        """A fair pseudorandom digit stream, pinned to the set generator.

        Digit i is the membership bit of the density-1/2 pseudorandom
        set with the same seed, so set and sequence views agree.
        """
        base = NatSet.prng(seed, 0.5)
        return cls(
            lambda i: 1 if base.contains(i) else 0, "prng", f"prng:{seed}"
        )

    @classmethod
    def from_set(cls, base: NatSet) -> "BinarySeq":
        """The characteristic sequence of a set, bit k = 1 iff k in set."""
        return cls(
            lambda i: 1 if base.contains(i) else 0, "set", f"set:{base.spec}"
        )

    @classmethod
    def sum_of(cls, a: "BinarySeq", b: "BinarySeq", fuel: int) -> "BinarySeq":
        """The digitwise sum mod 1 as a lazy sequence.

        Each digit is resolved independently under the stored lookahead
        budget and memoized; a resolved digit never changes on re-query.
        Querying a digit whose carry cannot be settled raises
        Unresolved.
        """
        lock = threading.Lock()
        memo = {}

        def digit(i: int) -> int:
            with lock:
                if i in memo:
                    return memo[i]
            carry = None
            for j in range(i + 1, i + fuel + 1):
                s = a.digit(j) + b.digit(j)
                if s != 1:
                    carry = 1 if s == 2 else 0
                    break
            if carry is None:
                raise Unresolved(i)
            value = a.digit(i) ^ b.digit(i) ^ carry
            with lock:
                memo[i] = value
            return value

        return cls(digit, "derived-sum", f"sum({a.spec},{b.spec})")

    def value_of_prefix(self, n: int) -> Fraction:
        """The truncation Sum_{i<n} digit(i) 2^-(i+1) as an exact rational."""
        total = 0
        for i in range(n):
            total = (total << 1) | self.digit(i)
        return Fraction(total, 1 << n)


def normalize_tail(digits: Sequence[int]) -> List[int]:
    """Rewrite a trailing run of ones as the equal terminating expansion.

    A list ending in ones stands for the repeating tail, the same point
    as bumping the digit before the run and zeroing the rest: 0111 is
    1000. Lists not ending in 1 come back unchanged. A list of only
    ones stands for 1.0, which has no expansion in [0, 1).
    """
    out = list(digits)
    run = 0
    while run < len(out) and out[len(out) - 1 - run] == 1:
        run += 1
    if run == 0:
        return out
    if run == len(out):
        raise AllOnes("all ones denotes 1.0, which lies outside [0, 1)")
    start = len(out) - run
    return out[: start - 1] + [1] + [0] * run


@dataclass(frozen=True)
class CarryVerdict:
    """Resolved carries c_0..c_{n-1} plus how far the scan had to look."""

    bits: List[int]
    resolved: bool
    lookahead_used: int


def carry_bits(a: BinarySeq, b: BinarySeq, n: int, fuel: int) -> CarryVerdict:
    """Carries into positions 0..n-1 of a + b, under bounded lookahead.

    The carry into i is 1 exactly when the first position past i where
    the digit sum is not 1 is a position where it is 2. One forward scan
    past n-1 settles the topmost carry; the rest fill backward, since a
    digit sum of 1 at i+1 hands position i the verdict of i+1. Each
    position is allowed to look at most fuel places ahead; a carry still
    open after that raises Unresolved at the smallest undecided index.
    """
    if n < 0:
        raise ValueError("digit count must be a natural number")
    if fuel < 0:
        raise ValueError("fuel must be a natural number")
    if n == 0:
        return CarryVerdict([], True, 0)
    sums = [a.digit(j) + b.digit(j) for j in range(1, n)]

    def sum_at(j: int) -> int:
        if 1 <= j < n:
            return sums[j - 1]
        return a.digit(j) + b.digit(j)

    # Breaker for the top position, scanned at most fuel places past n-1.
    breaker: Optional[int] = None
    for j in range(n, n - 1 + fuel + 1):
        if sum_at(j) != 1:
            breaker = j
            break
    carries: List[Optional[int]] = [None] * n
    stalled: Optional[int] = None
    lookahead = 0
    for i in range(n - 1, -1, -1):
        # A digit sum other than 1 right after i decides i on its own;
        # a sum of 1 hands i the breaker found for i + 1.
        if i + 1 < n and sum_at(i + 1) != 1:
            breaker = i + 1
        if breaker is None or breaker - i > fuel:
            stalled = i
            continue
        lookahead = max(lookahead, breaker - i)
        carries[i] = 1 if sum_at(breaker) == 2 else 0
    if stalled is not None:
        raise Unresolved(stalled)
    return CarryVerdict([c for c in carries], True, lookahead)


def add_mod1(a: BinarySeq, b: BinarySeq, n: int, fuel: int) -> List[int]:
    """First n digits of (a + b) mod 1.

    Digit i is a_i xor b_i xor c_i; the carry out of position 0 is the
    integer part and is discarded. Unresolved carries propagate.
    """
    verdict = carry_bits(a, b, n, fuel)
    return [a.digit(i) ^ b.digit(i) ^ verdict.bits[i] for i in range(n)]


def orbit(
    p0: BinarySeq,
    beta: BinarySeq,
    count: int,
    digits: int,
    fuel: int,
) -> List[List[int]]:
    """The first count points of the rotation orbit of p0 under beta.

    Returns [p_0, p_1, ..., p_{count-1}] with p_k = p_{k-1} + beta mod 1,
    each truncated to the requested digits. Every step consumes
    precision, so the iteration runs at digits + 8 * count internal
    width and truncates at the end. A stalled carry surfaces as
    Unresolved carrying the iteration index that failed.
    """
    if count < 1:
        raise ValueError("an orbit lists at least its starting point")
    if digits < 0:
        raise ValueError("digit count must be a natural number")
    width = digits + 8 * count
    points = [p0.prefix(width)]
    current = p0
    for k in range(1, count):
        try:
            step = add_mod1(current, beta, width, fuel)
        except Unresolved as exc:
            raise Unresolved(
                k, f"orbit stalled at iteration {k}: a carry never settled"
            ) from exc
        points.append(step)
        current = BinarySeq.from_bits(step)
    return [p[:digits] for p in points]


def equidistribution_stat(points: Sequence[Sequence[int]], bins: int) -> Fraction:
    """Worst bin-count deviation from the uniform share, as a rational.

    Point prefixes are truncated values; the bin of value v is
    floor(v * bins), computed exactly on integers. Every point must
    carry enough digits to separate the bins.
    """
    if bins < 1:
        raise ValueError("need at least one bin")
    if not points:
        raise ValueError("need at least one point")
    need = max(1, (bins - 1).bit_length())
    counts = [0] * bins
    for point in points:
        if len(point) < need:
            raise TooFewDigits(
                f"{len(point)} digits cannot separate {bins} bins"
            )
        value = 0
        for bit in point:
            value = (value << 1) | bit
        counts[(value * bins) >> len(point)] += 1
    total = len(points)
    share = Fraction(1, bins)
    return max(abs(Fraction(c, total) - share) for c in counts)
