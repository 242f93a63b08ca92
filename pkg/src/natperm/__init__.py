"""Permutations of the naturals induced by subsets, with exact tooling.

A set of naturals drives a sequence of adjacent swaps; the pointwise
limit is a permutation. This package evaluates such permutations and
their inverses lazily, decomposes them into consecutive cycles, measures
distances between them, pushes sets through them, and runs exact
binary-expansion rotations of the circle. A CLI exposes the lot.
"""

from .errors import (
    DEFAULT_FUEL,
    AllOnes,
    BadOrder,
    BoundTooSmall,
    DuplicateEntries,
    FuelExhausted,
    LengthMismatch,
    NatPermError,
    NoDifference,
    NoInverse,
    NoPreimage,
    ParseError,
    RepeatedEntry,
    TooFewDigits,
    Unresolved,
)
from .group import (
    FinitaryPermutation,
    Permutation,
    adjacent_transposition,
    compose,
    compose_adjacent,
    equal_on_prefix,
    finitary_approximation,
    identity,
    support,
    transitive_witness,
    transposition,
)
from .metric import MetricValue, distance, forward_distance
from .rearrange import (
    ConsecutiveCycle,
    CycleDecomposition,
    InjectivityWitness,
    OnelinePrefix,
    Rearrangement,
    Run,
    cycle_decomposition,
    eventually_commutative_index,
    injectivity_witness,
    oneline_from_swaps,
    oneline_prefix,
    runs,
)
from .rotation import (
    BinarySeq,
    CarryVerdict,
    add_mod1,
    carry_bits,
    equidistribution_stat,
    golden_beta,
    normalize_tail,
    orbit,
)
from .sets import (
    NatSet,
    TailMachine,
    image_under,
    parse_set_spec,
    tm_tail_membership,
)

__version__ = "0.1.0"
