"""LIS approximation: streaming sparse-patience base case, the recursive
block algorithm with its length-capped variant, sequence output, and the
non-decreasing reduction."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (
    EpsLike,
    NEG_INF,
    ParameterError,
    Tokens,
    as_fraction,
    ceil_frac,
    ceil_sqrt,
)
from .frontier import Frontier, FrontierEngine, frontier_interpolate, ges_frontier
from .instrument import SpaceMeter
from .oracles import exact_lis_sequence

SeqLike = Union[Tokens, Sequence[int]]

__all__ = [
    "approx_lis", "approx_lis_bound", "frontier_interpolate", "ges_approx_lis",
    "lis_sequence", "reduce_nondecreasing", "Frontier",
]


def _as_view(x: SeqLike) -> Tokens:
    return x if isinstance(x, Tokens) else Tokens.from_values(list(x))


class _LisSpace:
    """Frontier-engine adapter for plain ordered token sequences."""

    neg = NEG_INF

    def __init__(self, b: int, eps: Fraction):
        self.b = b
        self.base_threshold = b * b
        self.budget = ceil_frac(Fraction(b) / eps)

    def is_base(self, view: Tokens) -> bool:
        return view.length <= self.base_threshold

    def base_frontier(self, view: Tokens, meter: Optional[SpaceMeter]) -> Frontier:
        return ges_frontier(iter(view), self.budget, NEG_INF, meter)

    def split(self, view: Tokens) -> list[Tokens]:
        return view.split_even(self.b)

    def filter(self, view: Tokens, q: int) -> Tokens:
        return view.filter_gt(q)

    def clamp(self, view: Tokens, le: int) -> Tokens:
        return view.band(NEG_INF, le)

    def key(self, view: Tokens):
        return (view.lo, view.hi, view.gt, view.le)

    def extract_base(self, view: Tokens, k: int, meter: Optional[SpaceMeter]) -> list[int]:
        n = view.length
        words = 3 * (n + 1)
        if meter is not None:
            meter.charge(words)
        seq = exact_lis_sequence(view.to_list())
        if meter is not None:
            meter.release(words)
        if len(seq) < k:
            raise AssertionError("extraction base lost a certified witness")
        return seq[:k]


def _validated(x: SeqLike, b: int, eps: EpsLike) -> tuple[Tokens, Fraction]:
    epsf = as_fraction(eps)
    if b < 2:
        raise ParameterError(f"b must be >= 2, got {b}")
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    view = _as_view(x)
    if b > max(2, view.length):
        raise ParameterError(f"b={b} exceeds n={view.length}")
    return view, epsf


def ges_approx_lis(x: SeqLike, budget: int, eps: EpsLike,
                   meter: Optional[SpaceMeter] = None) -> Frontier:
    """Streaming sparse patience pass over x with the given frontier budget.

    The detected length (max stored S) is within [(1-eps)*LIS, LIS] whenever
    budget >= sqrt(n/eps); callers inside the recursion use ceil(b/eps).
    """
    epsf = as_fraction(eps)
    if budget < 1:
        raise ParameterError(f"budget must be >= 1, got {budget}")
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    return ges_frontier(iter(_as_view(x)), budget, NEG_INF, meter)


def approx_lis(x: SeqLike, b: int, eps: EpsLike,
               meter: Optional[SpaceMeter] = None) -> int:
    """Recursive LIS approximation: never overestimates, and stays above
    (1 - 3*eps*ceil(log_b n)) * LIS(x)."""
    view, epsf = _validated(x, b, eps)
    if view.length == 0:
        return 0
    engine = FrontierEngine(_LisSpace(b, epsf), b, epsf, meter)
    return engine.run(view, None, depth=1).max_s


def approx_lis_bound(x: SeqLike, b: int, eps: EpsLike, l: int,
                     meter: Optional[SpaceMeter] = None) -> Frontier:
    """approx_lis with the per-block detected length capped at l; returns the
    full frontier (witness bounds included)."""
    view, epsf = _validated(x, b, eps)
    if l < 1:
        raise ParameterError(f"l must be >= 1, got {l}")
    if view.length == 0:
        return Frontier.initial(NEG_INF)
    engine = FrontierEngine(_LisSpace(b, epsf), b, epsf, meter)
    return engine.run(view, l, depth=1)


def lis_sequence(x: SeqLike, b: int, eps: EpsLike,
                 meter: Optional[SpaceMeter] = None) -> list[int]:
    """An increasing subsequence of x whose length equals approx_lis(x,b,eps).

    Small inputs are handled exactly; otherwise the boundary list of the
    detected subsequence is recovered by replaying the frontier runs block by
    block, and each block's piece is extracted from its banded view.
    """
    view, epsf = _validated(x, b, eps)
    if view.length <= b:
        return exact_lis_sequence(view.to_list())
    engine = FrontierEngine(_LisSpace(b, epsf), b, epsf, meter)
    out = engine.trace(view)
    claimed = engine.run(view, None, depth=1).max_s
    if len(out) != claimed:
        raise AssertionError(
            f"sequence length {len(out)} != detected length {claimed}"
        )
    return out


def reduce_nondecreasing(x: SeqLike) -> Tokens:
    """Order-preserving encoding of (x_i, i) pairs: the LIS of the result is
    the longest non-decreasing subsequence length of x.

    Pairs compare lexicographically;v*(n+1)+i realizes that order with plain
    integers (positions i are 1-based and bounded by n).
    """
    vals = _as_view(x).to_list()
    n = len(vals)
    return Tokens([v * (n + 1) + i for i, v in enumerate(vals, start=1)])
