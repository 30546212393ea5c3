"""Deterministic space-efficient approximation of string measures (ED, LCS,
LIS) with exact oracles, cooperative space metering, and an asymmetric
streaming harness."""

from .core import (
    ApproxParams,
    Interval,
    NEG_INF,
    POS_INF,
    ParameterError,
    Tokens,
    even_picks,
    schedule_values,
    token_substring,
)
from .instrument import MeterError, SpaceMeter, StreamTape
from .oracles import (
    closest_substring_exact,
    exact_ed,
    exact_lcs_len,
    exact_lis_sequence,
    hirschberg_lcs,
    patience_sorting,
)
from .ed_approx import approx_ed, candidate_set, dp_edit_distance
from .lis_approx import (
    approx_lis,
    approx_lis_bound,
    frontier_interpolate,
    ges_approx_lis,
    lis_sequence,
    reduce_nondecreasing,
)
from .lcs_approx import approx_lcs, approx_lcs_bound, lcs_sequence, lcs_to_lis_view
from .asymmetric import asym_closest_substring, asym_ed_2delta, asym_ed_sqrt, asym_lcs
from .generators import GenSpec, SplitMix64, enumerate_small, generate

__all__ = [
    "ApproxParams", "Interval", "NEG_INF", "POS_INF", "ParameterError", "Tokens",
    "even_picks", "schedule_values", "token_substring",
    "MeterError", "SpaceMeter", "StreamTape",
    "closest_substring_exact", "exact_ed", "exact_lcs_len", "exact_lis_sequence",
    "hirschberg_lcs", "patience_sorting",
    "approx_ed", "candidate_set", "dp_edit_distance",
    "approx_lis", "approx_lis_bound", "frontier_interpolate", "ges_approx_lis",
    "lis_sequence", "reduce_nondecreasing",
    "approx_lcs", "approx_lcs_bound", "lcs_sequence", "lcs_to_lis_view",
    "asym_closest_substring", "asym_ed_2delta", "asym_ed_sqrt", "asym_lcs",
    "GenSpec", "SplitMix64", "enumerate_small", "generate",
]
