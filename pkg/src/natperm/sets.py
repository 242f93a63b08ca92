"""Subsets of the naturals with total membership oracles.

A NatSet bundles a pure membership function with kind metadata. The
metadata carries two optional certificates:

  false_beyond = B   membership(n) is false for every n > B
  true_from    = N   membership(n) is true for every n >= N

Only these certificates are ever used to prove facts about infinite
behavior (for instance that a rearrangement misses a point). Everything
else is answered by querying the oracle at finitely many indices.

Derived sets memoize per queried index behind a lock, so a set object
may be shared between threads. Membership is observationally pure:
queries at the same index always agree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import ParseError

_U64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(state: int) -> int:
    # SplitMix64 finalizer, constants pinned for reproducibility.
    z = (state + _GAMMA) & _U64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _U64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _U64
    return z ^ (z >> 31)


class NatSet:
    """A subset of the naturals described by a total membership oracle."""

    def __init__(
        self,
        member: Callable[[int], bool],
        kind: str,
        spec: str,
        false_beyond: Optional[int] = None,
        true_from: Optional[int] = None,
        memoize: bool = False,
    ):
        self._member = member
        self.kind = kind
        self.spec = spec
        self.false_beyond = false_beyond
        self.true_from = true_from
        self._memo = {} if memoize else None
        self._lock = threading.Lock() if memoize else None

    def __repr__(self):
        return f"NatSet({self.spec})"

    def contains(self, n: int) -> bool:
        """Total membership query. Indices below zero are never members."""
        if n < 0:
            return False
        if self._memo is None:
            return bool(self._member(n))
        with self._lock:
            hit = self._memo.get(n)
            if hit is None:
                hit = self._memo[n] = bool(self._member(n))
            return hit

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def char_prefix(self, n: int) -> str:
        """Characteristic string of length n: bit i is 1 iff i is a member."""
        if n < 0:
            raise ValueError("prefix length must be a natural number")
        return "".join("1" if i in self else "0" for i in range(n))

    def density(self, n: int) -> Fraction:
        """Exact fraction of members among the first n indices."""
        if n < 1:
            raise ValueError("density needs a prefix of length at least 1")
        return Fraction(sum(1 for i in range(n) if i in self), n)

    # ---- constructors ----

    @classmethod
    def evens(cls) -> "NatSet":
        return cls(lambda n: n % 2 == 0, "periodic-even", "even")

    @classmethod
    def odds(cls) -> "NatSet":
        return cls(lambda n: n % 2 == 1, "periodic-odd", "odd")

    @classmethod
    def empty(cls) -> "NatSet":
        # false_beyond = -1: false everywhere, same convention as finite().
        return cls(lambda n: False, "finite", "empty", false_beyond=-1)

    @classmethod
    def universe(cls) -> "NatSet":
        return cls(lambda n: True, "tail", "all", true_from=0)

    @classmethod
    def finite(cls, elements: Iterable[int]) -> "NatSet":
        elems = frozenset(elements)
        if not elems:
            return cls.empty()
        if any(e < 0 for e in elems):
            raise ValueError("finite sets live inside the naturals")
        spec = "finite:" + ",".join(str(e) for e in sorted(elems))
        return cls(elems.__contains__, "finite", spec, false_beyond=max(elems))

    @classmethod
    def tail(cls, start: int) -> "NatSet":
        if start < 0:
            raise ValueError("tail start must be a natural number")
        return cls(lambda n: n >= start, "tail", f"tail:{start}", true_from=start)

    @classmethod
    def prng(cls, seed: int, p: float) -> "NatSet":
        """Pseudorandom set: each index is a member with probability p.

        Membership is a pure hash of (seed, index) through SplitMix64, so
        prefixes are reproducible across runs and random access is O(1).
        """
        if not 0 <= seed <= _U64:
            raise ValueError("seed must fit in 64 bits")
        if not 0.0 <= p <= 1.0:
            raise ValueError("probability must lie in [0, 1]")
        threshold = int(p * (1 << 64))
        mixed_seed = (seed * _GAMMA) & _U64

        def member(n: int) -> bool:
            return _splitmix64((mixed_seed + n) & _U64) < threshold

        return cls(member, "prng", f"prng:seed={seed},p={p}")

    @classmethod
    def from_file(cls, path: str) -> "NatSet":
        """Bitstream file: ASCII 0/1 characters, index 0 first.

        Newlines are ignored. Indices past the end of the file are not
        members.
        """
        with open(path, "r", encoding="ascii") as handle:
            raw = handle.read()
        bits = []
        for pos, ch in enumerate(raw):
            if ch in "01":
                bits.append(ch == "1")
            elif ch not in "\r\n":
                raise ParseError(f"bitstream byte {ch!r} is not 0 or 1", pos)
        data = tuple(bits)

        def member(n: int) -> bool:
            return n < len(data) and data[n]

        return cls(member, "file", f"file:{path}", false_beyond=len(data))

    # ---- derived sets ----

    def complement(self) -> "NatSet":
        false_beyond = self.true_from - 1 if self.true_from is not None else None
        true_from = self.false_beyond + 1 if self.false_beyond is not None else None
        return NatSet(
            lambda n: not self.contains(n),
            "derived",
            f"not({self.spec})",
            false_beyond=false_beyond,
            true_from=true_from,
            memoize=True,
        )

    def symmetric_difference(self, other: "NatSet") -> "NatSet":
        false_beyond = None
        if self.false_beyond is not None and other.false_beyond is not None:
            false_beyond = max(self.false_beyond, other.false_beyond)
        if self.true_from is not None and other.true_from is not None:
            false_beyond = max(self.true_from, other.true_from) - 1
        true_from = None
        if self.true_from is not None and other.false_beyond is not None:
            true_from = max(self.true_from, other.false_beyond + 1)
        if other.true_from is not None and self.false_beyond is not None:
            true_from = max(other.true_from, self.false_beyond + 1)
        return NatSet(
            lambda n: self.contains(n) != other.contains(n),
            "derived",
            f"xor({self.spec},{other.spec})",
            false_beyond=false_beyond,
            true_from=true_from,
            memoize=True,
        )

    def __xor__(self, other: "NatSet") -> "NatSet":
        return self.symmetric_difference(other)

    def finite_adjust(self, elements: Iterable[int], mode: str) -> "NatSet":
        """Union with or removal of an explicit finite set."""
        adjust = frozenset(elements)
        if any(e < 0 for e in adjust):
            raise ValueError("adjustment elements must be naturals")
        listing = ",".join(str(e) for e in sorted(adjust))
        top = max(adjust) if adjust else -1
        if mode == "union":
            member = lambda n: n in adjust or self.contains(n)
            spec = f"union({self.spec},finite:{listing})"
            true_from = self.true_from
            false_beyond = self.false_beyond
            if false_beyond is not None:
                false_beyond = max(false_beyond, top)
        elif mode == "minus":
            member = lambda n: self.contains(n) and n not in adjust
            spec = f"minus({self.spec},finite:{listing})"
            true_from = self.true_from
            if true_from is not None:
                true_from = max(true_from, top + 1)
            false_beyond = self.false_beyond
        else:
            raise ValueError("mode must be 'union' or 'minus'")
        return NatSet(
            member, "derived", spec,
            false_beyond=false_beyond, true_from=true_from, memoize=True,
        )

    def restrict(self, radius: int, side: str) -> "NatSet":
        """Keep only members above the radius, or only members at or below it.

        The below side is materialized eagerly, so its kind is finite.
        """
        if radius < 0:
            raise ValueError("radius must be a natural number")
        if side == "above":
            true_from = None
            if self.true_from is not None:
                true_from = max(self.true_from, radius + 1)
            return NatSet(
                lambda n: n > radius and self.contains(n),
                "derived",
                f"above({self.spec},{radius})",
                false_beyond=self.false_beyond,
                true_from=true_from,
                memoize=True,
            )
        if side == "below":
            kept = frozenset(n for n in range(radius + 1) if self.contains(n))
            return NatSet(
                kept.__contains__,
                "finite",
                f"below({self.spec},{radius})",
                false_beyond=radius,
            )
        raise ValueError("side must be 'above' or 'below'")


def image_under(perm, base: NatSet) -> NatSet:
    """The set of images of base under a permutation.

    Membership of n is decided through the inverse oracle, so the
    permutation must carry one. Answers are memoized per index.
    """
    from .errors import NoInverse

    if not perm.has_inverse:
        raise NoInverse("image membership needs an inverse oracle")
    return NatSet(
        lambda n: base.contains(perm.preimage(n)),
        "derived",
        f"image({perm.describe()},{base.spec})",
        memoize=True,
    )


# ---- tail machines ----


@dataclass(frozen=True)
class TailMachine:
    """A tape machine deciding a set that swallows a tail of the naturals.

    States are numbered 0 through boundary. On unary input k (k ones then
    a blank) the head walks right, counting in the state, until either the
    blank is reached below the boundary (answer looked up in finite_part)
    or the boundary state absorbs the rest of the ones (answer 1).
    """

    boundary: int
    finite_part: frozenset

    def __post_init__(self):
        object.__setattr__(self, "finite_part", frozenset(self.finite_part))
        if self.boundary < 0:
            raise ValueError("boundary must be a natural number")
        if any(not 0 <= e < self.boundary for e in self.finite_part):
            raise ValueError("finite part must sit below the boundary")

    def run(self, input_value: int) -> int:
        """Step the tape model on unary input and return the written bit."""
        if input_value < 0:
            raise ValueError("unary input must be a natural number")
        tape = ["1"] * input_value + [None]
        state = 0
        head = 0
        for _ in range(input_value + 2):  # halts after at most input+1 steps
            symbol = tape[head] if head < len(tape) else None
            if symbol == "1":
                if state < self.boundary:
                    state += 1
                head += 1  # boundary state skips ones in place
                continue
            # blank reached: write and halt
            bit = 1 if (state >= self.boundary or state in self.finite_part) else 0
            if head < len(tape):
                tape[head] = str(bit)
            return bit
        raise AssertionError("machine failed to halt inside its step budget")

    def predicate(self, k: int) -> int:
        """Closed form of the decided set; the oracle the simulation is tested against."""
        return 1 if (k >= self.boundary or k in self.finite_part) else 0

    def as_set(self) -> NatSet:
        machine = self
        spec = "tm(boundary={},finite:{})".format(
            machine.boundary, ",".join(str(e) for e in sorted(machine.finite_part))
        )
        return NatSet(
            lambda n: machine.run(n) == 1,
            "tm-tail",
            spec,
            true_from=machine.boundary,
            memoize=True,
        )


def tm_tail_membership(machine: TailMachine, k: int) -> int:
    """Membership bit of k in the machine's set, by stepping the tape."""
    return machine.run(k)


# ---- spec grammar ----
#
#   even | odd | empty | all
#   finite:<n>(,<n>)*
#   tail:<N>
#   prng:seed=<u64>,p=<float>
#   file:<path>
#   xor(<spec>,<spec>) | not(<spec>)
#   above(<spec>,<r>) | below(<spec>,<r>)
#
# The finite list is consumed greedily: a comma followed by a digit
# extends the list. Inside above(...) and below(...) the radius is split
# off at the last top-level comma instead, so finite lists work there too.


class _Cursor:
    __slots__ = ("text", "pos", "limit")

    def __init__(self, text: str, pos: int = 0, limit: Optional[int] = None):
        self.text = text
        self.pos = pos
        self.limit = len(text) if limit is None else limit

    def fail(self, message: str):
        raise ParseError(message, self.pos)

    def at_end(self) -> bool:
        return self.pos >= self.limit

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < self.limit else ""

    def skip_ws(self):
        while self.pos < self.limit and self.text[self.pos] == " ":
            self.pos += 1

    def expect(self, literal: str):
        if not self.text.startswith(literal, self.pos) or self.pos + len(literal) > self.limit:
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def word(self) -> str:
        start = self.pos
        while self.pos < self.limit and self.text[self.pos].isalpha():
            self.pos += 1
        if self.pos == start:
            self.fail("expected a set kind")
        return self.text[start:self.pos]

    def integer(self) -> int:
        start = self.pos
        while self.pos < self.limit and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected a number")
        return int(self.text[start:self.pos])

    def number(self) -> float:
        start = self.pos
        while self.pos < self.limit and (
            self.text[self.pos].isdigit() or self.text[self.pos] in ".eE+-"
        ):
            self.pos += 1
        if self.pos == start:
            self.fail("expected a number")
        try:
            return float(self.text[start:self.pos])
        except ValueError:
            self.pos = start
            self.fail("malformed number")


def _matching_paren(cur: _Cursor) -> int:
    # cur.pos sits just past an opening paren; find its partner.
    depth = 1
    scan = cur.pos
    while scan < cur.limit:
        ch = cur.text[scan]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return scan
        scan += 1
    cur.fail("unbalanced parentheses")


def _last_top_comma(text: str, start: int, stop: int) -> int:
    depth = 0
    found = -1
    for scan in range(start, stop):
        ch = text[scan]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            found = scan
    return found


def _parse_spec(cur: _Cursor) -> NatSet:
    cur.skip_ws()
    word = cur.word()
    if word == "even":
        return NatSet.evens()
    if word == "odd":
        return NatSet.odds()
    if word == "empty":
        return NatSet.empty()
    if word == "all":
        return NatSet.universe()
    if word == "finite":
        cur.expect(":")
        elems = [cur.integer()]
        while cur.peek() == "," and cur.pos + 1 < cur.limit and cur.text[cur.pos + 1].isdigit():
            cur.pos += 1
            elems.append(cur.integer())
        return NatSet.finite(elems)
    if word == "tail":
        cur.expect(":")
        return NatSet.tail(cur.integer())
    if word == "prng":
        cur.expect(":")
        cur.expect("seed=")
        seed = cur.integer()
        cur.expect(",")
        cur.expect("p=")
        where = cur.pos
        p = cur.number()
        if not 0.0 <= p <= 1.0:
            raise ParseError("probability must lie in [0, 1]", where)
        return NatSet.prng(seed, p)
    if word == "file":
        cur.expect(":")
        start = cur.pos
        while not cur.at_end() and cur.peek() not in ",)":
            cur.pos += 1
        if cur.pos == start:
            cur.fail("expected a file path")
        return NatSet.from_file(cur.text[start:cur.pos])
    if word == "xor":
        cur.expect("(")
        left = _parse_spec(cur)
        cur.skip_ws()
        cur.expect(",")
        right = _parse_spec(cur)
        cur.skip_ws()
        cur.expect(")")
        return left.symmetric_difference(right)
    if word == "not":
        cur.expect("(")
        inner = _parse_spec(cur)
        cur.skip_ws()
        cur.expect(")")
        return inner.complement()
    if word in ("above", "below"):
        cur.expect("(")
        close = _matching_paren(cur)
        comma = _last_top_comma(cur.text, cur.pos, close)
        if comma < 0:
            cur.fail(f"{word} needs a spec and a radius")
        inner_cur = _Cursor(cur.text, cur.pos, comma)
        inner = _parse_spec(inner_cur)
        inner_cur.skip_ws()
        if not inner_cur.at_end():
            inner_cur.fail("trailing input inside restriction")
        radius_cur = _Cursor(cur.text, comma + 1, close)
        radius_cur.skip_ws()
        radius = radius_cur.integer()
        radius_cur.skip_ws()
        if not radius_cur.at_end():
            radius_cur.fail("radius must be a single number")
        cur.pos = close + 1
        return inner.restrict(radius, word)
    raise ParseError(f"unknown set kind {word!r}", cur.pos - len(word))


def parse_set_spec(text: str) -> NatSet:
    """Parse the set grammar into a NatSet. Raises ParseError with a position."""
    cur = _Cursor(text)
    result = _parse_spec(cur)
    cur.skip_ws()
    if not cur.at_end():
        cur.fail("trailing input after set spec")
    return result
