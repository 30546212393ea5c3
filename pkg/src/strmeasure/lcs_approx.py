"""LCS approximation through the logspace LCS-to-LIS reduction.

The reduced sequence z lists, per position of x, the matching y positions in
descending order; an increasing subsequence of z is exactly a common
subsequence.  All algorithms walk z virtually through a per-symbol position
index of y, so z is never materialized.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (
    EpsLike,
    ParameterError,
    Tokens,
    as_fraction,
    ceil_frac,
    ceil_sqrt,
)
from .frontier import Frontier, FrontierEngine, ges_frontier
from .instrument import SpaceMeter
from .oracles import hirschberg_lcs

SeqLike = Union[Tokens, Sequence[int]]

WILDCARD = 1 << 71  # masked-y filler; never equal to any embedded symbol


class MaskedY:
    """y with its first ``prefix_len`` positions replaced by a wildcard that
    matches no symbol of x."""

    __slots__ = ("values", "prefix_len")

    def __init__(self, y: SeqLike, prefix_len: int):
        self.values = y.to_list() if isinstance(y, Tokens) else list(y)
        if not (0 <= prefix_len <= len(self.values)):
            raise ParameterError(f"prefix_len {prefix_len} out of range")
        self.prefix_len = prefix_len

    @property
    def length(self) -> int:
        return len(self.values)

    def at(self, i: int) -> int:
        if i < 1 or i > len(self.values):
            raise IndexError(f"index {i} out of range")
        return WILDCARD if i <= self.prefix_len else self.values[i - 1]


class ReducedView:
    """Virtual z = reduction of (x[xlo:xhi], y restricted to indices in
    (mask, hi])."""

    __slots__ = ("xvals", "pos", "m", "xlo", "xhi", "mask", "hi")

    def __init__(self, xvals: list[int], pos: dict, m: int,
                 xlo: int, xhi: int, mask: int, hi: int):
        self.xvals = xvals
        self.pos = pos
        self.m = m
        self.xlo = xlo
        self.xhi = xhi
        self.mask = mask
        self.hi = hi

    def __iter__(self):
        pos, mask, hi = self.pos, self.mask, self.hi
        for p in range(self.xlo, self.xhi):
            lst = pos.get(self.xvals[p])
            if not lst:
                continue
            a = bisect_right(lst, mask)
            b = bisect_right(lst, hi)
            for k in range(b - 1, a - 1, -1):
                yield lst[k]

    @property
    def length(self) -> int:
        total = 0
        pos, mask, hi = self.pos, self.mask, self.hi
        for p in range(self.xlo, self.xhi):
            lst = self.pos.get(self.xvals[p])
            if lst:
                total += bisect_right(lst, hi) - bisect_right(lst, mask)
        return total

    def to_list(self) -> list[int]:
        return list(self)


def _position_index(yvals: list[int]) -> dict:
    pos: dict = {}
    for j, v in enumerate(yvals, start=1):
        pos.setdefault(v, []).append(j)
    return pos


def lcs_to_lis_view(x: SeqLike, y) -> ReducedView:
    """The virtual reduced sequence; LIS of it equals LCS(x, y).

    y may be a MaskedY, in which case the masked prefix simply never matches.
    """
    xvals = x.to_list() if isinstance(x, Tokens) else list(x)
    if isinstance(y, MaskedY):
        yvals = y.values
        mask = y.prefix_len
    else:
        yvals = y.to_list() if isinstance(y, Tokens) else list(y)
        mask = 0
    return ReducedView(xvals, _position_index(yvals), len(yvals),
                       0, len(xvals), mask, len(yvals))


class _LcsSpace:
    """Frontier-engine adapter over reduced views: tokens are y indices, the
    order bottom is index 0, and blocks partition x (not z)."""

    neg = 0

    def __init__(self, xvals: list[int], yvals: list[int], b: int, cutoff: int):
        self.xvals = xvals
        self.pos = _position_index(yvals)
        self.m = len(yvals)
        self.b = b
        self.cutoff = cutoff

    def full_view(self) -> ReducedView:
        return ReducedView(self.xvals, self.pos, self.m, 0, len(self.xvals),
                           0, self.m)

    def is_base(self, view: ReducedView) -> bool:
        return view.xhi - view.xlo <= self.cutoff

    def base_frontier(self, view: ReducedView, meter: Optional[SpaceMeter]) -> Frontier:
        # exact patience sorting over z, streamed; no cleanups
        return ges_frontier(iter(view), None, 0, meter)

    def split(self, view: ReducedView) -> list[ReducedView]:
        n = view.xhi - view.xlo
        q, r = divmod(n, self.b)
        out = []
        lo = view.xlo
        for i in range(self.b):
            sz = q + 1 if i < r else q
            out.append(ReducedView(self.xvals, self.pos, self.m, lo, lo + sz,
                                   view.mask, view.hi))
            lo += sz
        return out

    def filter(self, view: ReducedView, q: int) -> ReducedView:
        return ReducedView(self.xvals, self.pos, self.m, view.xlo, view.xhi,
                           max(view.mask, q), view.hi)

    def clamp(self, view: ReducedView, le: int) -> ReducedView:
        return ReducedView(self.xvals, self.pos, self.m, view.xlo, view.xhi,
                           view.mask, min(view.hi, le))

    def key(self, view: ReducedView):
        return (view.xlo, view.xhi, view.mask, view.hi)

    def extract_base(self, view: ReducedView, k: int, meter: Optional[SpaceMeter]) -> list[int]:
        """First k entries of an exact longest increasing run of y indices."""
        tails: list[int] = []
        tails_tok: list[int] = []
        toks: list[int] = []
        preds: list[int] = []
        charged = 0
        from bisect import bisect_left
        for v in view:
            idx = bisect_left(tails, v)
            toks.append(v)
            preds.append(tails_tok[idx - 1] if idx > 0 else -1)
            if idx == len(tails):
                tails.append(v)
                tails_tok.append(len(toks) - 1)
            else:
                tails[idx] = v
                tails_tok[idx] = len(toks) - 1
            if meter is not None and 2 * len(tails) + 2 * len(toks) > charged:
                delta = 2 * len(tails) + 2 * len(toks) - charged
                meter.charge(delta)
                charged += delta
        if meter is not None:
            meter.release(charged)
        if len(tails) < k:
            raise AssertionError("extraction base lost a certified witness")
        out = []
        p = tails_tok[-1] if tails_tok else -1
        while p >= 0:
            out.append(toks[p])
            p = preds[p]
        out.reverse()
        return out[:k]


def _prep(x: SeqLike, y: SeqLike, b: int, eps: EpsLike):
    epsf = as_fraction(eps)
    if b < 2:
        raise ParameterError(f"b must be >= 2, got {b}")
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    xvals = x.to_list() if isinstance(x, Tokens) else list(x)
    yvals = y.to_list() if isinstance(y, Tokens) else list(y)
    if b > max(2, len(xvals)):
        raise ParameterError(f"b={b} exceeds |x|={len(xvals)}")
    return xvals, yvals, epsf


def _space(xvals, yvals, b, epsf) -> _LcsSpace:
    n, m = len(xvals), len(yvals)
    if m <= b:
        cutoff = n  # short y: one exact patience pass is the whole story
    else:
        cutoff = max(b, min(b * b, ceil_frac(Fraction(n, 2))))
    return _LcsSpace(xvals, yvals, b, cutoff)


def approx_lcs(x: SeqLike, y: SeqLike, b: int, eps: EpsLike,
               meter: Optional[SpaceMeter] = None) -> int:
    """LCS approximation: never overestimates, and stays above
    (1 - 3*eps*ceil(log_b n)) * LCS(x, y)."""
    xvals, yvals, epsf = _prep(x, y, b, eps)
    if not xvals or not yvals:
        return 0
    space = _space(xvals, yvals, b, epsf)
    engine = FrontierEngine(space, b, epsf, meter)
    return engine.run(space.full_view(), None, depth=1).max_s


def approx_lcs_bound(x: SeqLike, y: SeqLike, b: int, eps: EpsLike, l: int,
                     meter: Optional[SpaceMeter] = None) -> Frontier:
    """approx_lcs with the per-block detected length capped at l; the frontier
    Q values are y indices (last matched position)."""
    xvals, yvals, epsf = _prep(x, y, b, eps)
    if l < 1:
        raise ParameterError(f"l must be >= 1, got {l}")
    if not xvals or not yvals:
        return Frontier.initial(0)
    space = _space(xvals, yvals, b, epsf)
    engine = FrontierEngine(space, b, epsf, meter)
    return engine.run(space.full_view(), l, depth=1)


def lcs_sequence(x: SeqLike, y: SeqLike, b: int, eps: EpsLike,
                 meter: Optional[SpaceMeter] = None) -> list[int]:
    """A common subsequence of x and y whose length equals approx_lcs."""
    xvals, yvals, epsf = _prep(x, y, b, eps)
    if len(xvals) <= b or len(yvals) <= b:
        return hirschberg_lcs(xvals, yvals, meter)
    space = _space(xvals, yvals, b, epsf)
    engine = FrontierEngine(space, b, epsf, meter)
    indices = engine.trace(space.full_view())
    claimed = engine.run(space.full_view(), None, depth=1).max_s
    if len(indices) != claimed:
        raise AssertionError(
            f"sequence length {len(indices)} != detected length {claimed}"
        )
    return [yvals[j - 1] for j in indices]
