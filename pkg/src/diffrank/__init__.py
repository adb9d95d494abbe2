"""Ranks and difference ranks of ordered Hahn fields, computed exactly."""

from .chain import (
    Chain,
    Concat,
    Decrement,
    Empty,
    Equivalent,
    FinalSegments,
    Finite,
    FixZeroPerCopy,
    Identity,
    NonNegRationals,
    NotEquivalent,
    PerCopy,
    Rationals,
    Reverse,
    Scale,
    Singleton,
    Translate,
    Undecided,
    shift_equivalent,
)
from .construct import (
    ConstructionResult,
    Report,
    build_fixed_point_example,
    build_omega_increasing_example,
    oracle_verify_rank_correspondences,
    oracle_verify_theorem3,
)
from .dsl import parse_dsl, render
from .errors import DiffRankError, ParseError
from .hahn_field import (
    HahnSeries,
    Verdict,
    classify_automorphism,
    mult_equivalent,
    sigma_equivalent,
    t,
    tower_from_chain_shift,
)
from .hahn_group import HahnGroupElement, archimedean_equivalent
from .rank import RankDescriptor, all_ranks

__version__ = "0.1.0"

__all__ = [
    "all_ranks",
    "archimedean_equivalent",
    "build_fixed_point_example",
    "build_omega_increasing_example",
    "Chain",
    "classify_automorphism",
    "Concat",
    "ConstructionResult",
    "Decrement",
    "DiffRankError",
    "Empty",
    "Equivalent",
    "FinalSegments",
    "Finite",
    "FixZeroPerCopy",
    "HahnGroupElement",
    "HahnSeries",
    "Identity",
    "mult_equivalent",
    "NonNegRationals",
    "NotEquivalent",
    "oracle_verify_rank_correspondences",
    "oracle_verify_theorem3",
    "parse_dsl",
    "ParseError",
    "PerCopy",
    "RankDescriptor",
    "Rationals",
    "render",
    "Report",
    "Reverse",
    "Scale",
    "shift_equivalent",
    "sigma_equivalent",
    "Singleton",
    "t",
    "tower_from_chain_shift",
    "Translate",
    "Undecided",
    "Verdict",
]
