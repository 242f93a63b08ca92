"""Membership oracles, set algebra, certificates, and the spec grammar."""

import random

import pytest

from natperm.errors import ParseError
from natperm.sets import (
    NatSet,
    TailMachine,
    parse_set_spec,
    tm_tail_membership,
)


def test_parity_prefixes():
    assert NatSet.evens().char_prefix(8) == "10101010"
    assert NatSet.odds().char_prefix(8) == "01010101"
    assert NatSet.empty().char_prefix(4) == "0000"
    assert NatSet.tail(2).char_prefix(5) == "00111"


def test_contains_basics():
    assert NatSet.evens().contains(4)
    assert not NatSet.evens().contains(5)
    assert NatSet.tail(3).contains(100)
    assert not NatSet.tail(3).contains(2)
    # Negative arguments are outside the domain, never members.
    assert not NatSet.evens().contains(-2)


def test_finite_set_and_bound():
    a = NatSet.finite([1, 4, 7])
    assert a.char_prefix(9) == "010010010"
    assert a.false_beyond == 7
    assert NatSet.finite([]).char_prefix(3) == "000"


def test_complement_is_pointwise_not():
    assert NatSet.evens().complement().char_prefix(8) == "01010101"
    assert NatSet.empty().complement().char_prefix(5) == "11111"
    a = NatSet.prng(9, 0.3)
    twice = a.complement().complement()
    assert twice.char_prefix(1000) == a.char_prefix(1000)


def test_complement_swaps_certificates():
    tail = NatSet.tail(4)
    co = tail.complement()
    assert co.false_beyond == 3
    assert co.true_from is None
    assert co.complement().true_from == 4


def test_xor_pointwise():
    evens, odds = NatSet.evens(), NatSet.odds()
    assert (evens ^ odds).char_prefix(16) == "1" * 16
    assert (evens ^ evens).char_prefix(16) == "0" * 16
    a = NatSet.prng(3, 0.5)
    assert (a ^ NatSet.empty()).char_prefix(512) == a.char_prefix(512)


def test_xor_group_laws_on_prefixes():
    rng = random.Random(20317)
    for _ in range(10):
        a = NatSet.prng(rng.getrandbits(32), 0.5)
        b = NatSet.prng(rng.getrandbits(32), 0.25)
        c = NatSet.finite(sorted(rng.sample(range(200), 12)))
        n = rng.randrange(64, 4097)
        assert ((a ^ b) ^ c).char_prefix(n) == (a ^ (b ^ c)).char_prefix(n)
        assert (a ^ b).char_prefix(n) == (b ^ a).char_prefix(n)
        assert (a ^ a).char_prefix(n) == "0" * n


def test_xor_certificate_propagation():
    # true xor false beyond both bounds stays true: a derived tail.
    q = NatSet.universe() ^ NatSet.empty()
    assert q.true_from == 0
    both_finite = NatSet.finite([1, 2]) ^ NatSet.finite([2, 9])
    assert both_finite.false_beyond == 9
    two_tails = NatSet.tail(3) ^ NatSet.tail(8)
    assert two_tails.false_beyond == 7
    assert two_tails.char_prefix(10) == "0001111100"


def test_finite_adjust_union_and_minus():
    evens = NatSet.evens()
    grown = evens.finite_adjust([1], "union")
    assert grown.contains(1) and grown.contains(6)
    # Removing 0 and 2 from the evens leaves 4 as the first member.
    shrunk = evens.finite_adjust([0, 2], "minus")
    assert shrunk.char_prefix(6) == "000010"
    same = evens.finite_adjust([], "union")
    assert same.char_prefix(64) == evens.char_prefix(64)
    with pytest.raises(ValueError):
        evens.finite_adjust([1], "intersect")


def test_restrict_above_below():
    a = NatSet.finite([1, 2, 5])
    assert a.restrict(2, "above").char_prefix(7) == "0000010"
    assert a.restrict(2, "below").char_prefix(7) == "0110000"
    evens = NatSet.evens()
    assert evens.restrict(0, "above").char_prefix(6) == "001010"
    below = evens.restrict(6, "below")
    assert below.kind == "finite"
    assert below.false_beyond == 6


def test_restrict_decomposition():
    rng = random.Random(5151)
    for _ in range(20):
        a = NatSet.prng(rng.getrandbits(32), 0.5)
        n = rng.randrange(16, 257)
        r = rng.randrange(0, n)
        lo, hi = a.restrict(r, "below"), a.restrict(r, "above")
        joined = [
            "1" if (lo.contains(i) or hi.contains(i)) else "0" for i in range(n)
        ]
        assert "".join(joined) == a.char_prefix(n)
        assert all(not (lo.contains(i) and hi.contains(i)) for i in range(n))


def test_density_exact_rational():
    from fractions import Fraction

    assert NatSet.evens().density(1000) == Fraction(1, 2)
    assert NatSet.empty().density(10) == 0
    assert NatSet.universe().density(7) == 1


def test_prng_density_pinned():
    # Frozen from the generator itself; guards against algorithm drift.
    from fractions import Fraction

    assert NatSet.prng(42, 0.5).density(8192) == Fraction(4107, 8192)


def test_prng_deterministic_and_seed_sensitive():
    a = NatSet.prng(7, 0.5)
    b = NatSet.prng(7, 0.5)
    assert a.char_prefix(2048) == b.char_prefix(2048)
    assert a.char_prefix(2048) != NatSet.prng(8, 0.5).char_prefix(2048)


def test_file_backed_set(tmp_path):
    target = tmp_path / "bits.txt"
    target.write_text("10110\n")
    a = NatSet.from_file(str(target))
    assert a.char_prefix(8) == "10110000"
    assert a.false_beyond == 5
    bad = tmp_path / "bad.txt"
    bad.write_text("10x1")
    with pytest.raises(ParseError):
        NatSet.from_file(str(bad))


def test_parse_atoms():
    assert parse_set_spec("even").char_prefix(4) == "1010"
    assert parse_set_spec("odd").char_prefix(4) == "0101"
    assert parse_set_spec("empty").char_prefix(3) == "000"
    assert parse_set_spec("all").char_prefix(3) == "111"
    assert parse_set_spec("finite:1,4,7").char_prefix(8) == "01001001"
    assert parse_set_spec("tail:10").contains(10)
    assert not parse_set_spec("tail:10").contains(9)


def test_parse_prng_and_file(tmp_path):
    a = parse_set_spec("prng:seed=42,p=0.5")
    assert a.char_prefix(64) == NatSet.prng(42, 0.5).char_prefix(64)
    target = tmp_path / "s.bits"
    target.write_text("0101")
    assert parse_set_spec(f"file:{target}").char_prefix(4) == "0101"


def test_parse_compound():
    assert parse_set_spec("xor(even,odd)").char_prefix(5) == "11111"
    assert parse_set_spec("not(empty)").char_prefix(3) == "111"
    assert parse_set_spec("above(finite:1,2,5,2)").char_prefix(7) == "0000010"
    assert parse_set_spec("below(finite:1,2,5,2)").char_prefix(7) == "0110000"
    nested = parse_set_spec("xor(not(even),finite:1,3)")
    assert nested.char_prefix(6) == "000001"


def test_parse_commas_bind_to_finite_lists():
    # The list swallows comma-digit continuations; the last top-level
    # comma separates the radius.
    a = parse_set_spec("above(finite:1,2,3,1)")
    assert a.char_prefix(5) == "00110"
    b = parse_set_spec("xor(finite:0,3,finite:3,5)")
    assert b.char_prefix(6) == "100001"


def test_parse_errors_carry_position():
    for text in ["", "evenx", "finite:", "finite:1,,2", "xor(even)",
                 "above(even)", "not(even", "tail:", "prng:seed=1",
                 "even junk"]:
        with pytest.raises(ParseError):
            parse_set_spec(text)
    try:
        parse_set_spec("xor(even,bogus)")
    except ParseError as exc:
        assert exc.position == 9


def test_membership_memoized_consistently():
    base = NatSet.prng(11, 0.5)
    probe = base ^ NatSet.empty()
    first = [probe.contains(i) for i in range(100)]
    second = [probe.contains(i) for i in range(100)]
    assert first == second


def test_tail_machine_validates_finite_part():
    with pytest.raises(ValueError):
        TailMachine(3, frozenset({5}))
    machine = TailMachine(3, frozenset({1}))
    assert machine.finite_part == frozenset({1})


def test_tail_machine_examples():
    machine = TailMachine(3, frozenset({1}))
    assert tm_tail_membership(machine, 1) == 1
    assert tm_tail_membership(machine, 2) == 0
    assert tm_tail_membership(TailMachine(3, frozenset()), 7) == 1


def test_tail_machine_simulation_matches_predicate():
    # The stepped tape run is the product path; the closed form checks it.
    for boundary in range(0, 6):
        for mask in range(1 << boundary):
            part = frozenset(i for i in range(boundary) if mask >> i & 1)
            machine = TailMachine(boundary, part)
            for k in range(0, boundary + 4):
                assert machine.run(k) == machine.predicate(k)


def test_tail_machine_as_set():
    machine = TailMachine(4, frozenset({0, 2}))
    made = machine.as_set()
    assert made.char_prefix(7) == "1010111"
    assert made.true_from == 4
