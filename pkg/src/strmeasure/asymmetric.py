"""Asymmetric streaming algorithms: one pass over x, random access to y.

The one-pass edit-distance approximation advances every distance-guess
instance in lockstep over the block decomposition of x, so each block is
buffered once and the result equals the offline approximation.  The
closest-substring recursion follows the block structure with per-block
certified intervals, and the LCS variant runs the block frontier machinery
directly off the stream.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .core import (
    EpsLike,
    Interval,
    ParameterError,
    as_fraction,
    ceil_frac,
    ceil_sqrt,
    floor_frac,
    schedule_values,
)
from .ed_approx import DpStepper, approx_ed, candidate_grid, even_block_lengths
from .instrument import SpaceMeter, StreamTape
from .lcs_approx import approx_lcs
from .oracles import closest_substring_exact, ed_prefix_distances, exact_ed


class ClosestSubstringResult(NamedTuple):
    iv: Interval
    d: int


def pow_ceil(n: int, exponent: Fraction) -> int:
    """ceil(n ** exponent) in exact integer arithmetic."""
    if n <= 0:
        return 0
    p, q = exponent.numerator, exponent.denominator
    a = n**p
    t = max(1, int(round(a ** (1.0 / q))))
    while t**q < a:
        t += 1
    while t > 1 and (t - 1) ** q >= a:
        t -= 1
    return t


class YBar:
    """Virtual concatenation of y intervals: prefix sums plus a binary-search
    probe, never materialized as part of the algorithm state."""

    def __init__(self, yvals: list[int], ivs: list[Interval]):
        self.yvals = yvals
        self.ivs = [iv for iv in ivs if not iv.is_empty()]
        self.offsets = [0]
        for iv in self.ivs:
            self.offsets.append(self.offsets[-1] + iv.length)

    @property
    def length(self) -> int:
        return self.offsets[-1]

    def probe(self, k: int) -> int:
        """1-based access translated through the accumulated lengths."""
        if k < 1 or k > self.length:
            raise IndexError(f"index {k} out of range [1, {self.length}]")
        seg = bisect_right(self.offsets, k - 1) - 1
        iv = self.ivs[seg]
        return self.yvals[iv.start - 1 + (k - 1 - self.offsets[seg])]

    def to_list(self) -> list[int]:
        out: list[int] = []
        for iv in self.ivs:
            out.extend(self.yvals[iv.start - 1 : iv.end])
        return out


def _flat_grid(starts: np.ndarray, lengths: list[int], m: int):
    if len(starts) == 0 or not lengths:
        return None
    lens_arr = np.array(lengths, dtype=np.int64)
    gs = np.repeat(starts, len(lens_arr))
    gl = np.tile(lens_arr, len(starts))
    valid = gs + gl - 1 <= m
    gs, gl = gs[valid], gl[valid]
    if len(gs) == 0:
        return None
    return gs, gs + gl - 1


def asym_ed_sqrt(tape: StreamTape, eps: EpsLike,
                 eps_prime: Optional[EpsLike] = None,
                 meter: Optional[SpaceMeter] = None) -> int:
    """(1+eps)-approximate ED in one pass over x with sqrt(n)-block buffering.

    Internally runs the offline approximation at b = ceil(sqrt(n)) with a
    tightened eps' (eps/4 by default), all distance guesses advanced in
    lockstep; the output equals the offline value exactly.
    """
    epsf = as_fraction(eps)
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    epsp = as_fraction(eps_prime) if eps_prime is not None else epsf / 4
    n, m = tape.x_length, tape.y_length
    if n == 0:
        tape.next()
        return m
    b = max(2, ceil_sqrt(n))
    cutoff = max(b, min(4 * b, ceil_frac(Fraction(n, 2))))
    if n <= cutoff or m <= b:
        xbuf = tape.next_block(n)
        return exact_ed(xbuf, tape.probe_y_slice(1, m) if m else [], meter)
    block_lens = even_block_lengths(n, b)
    bounds = np.cumsum([0] + block_lens)
    deltas = [0] + schedule_values(epsp, max(n, m), include_zero=False)
    j_values = [0] + schedule_values(epsp, m, include_zero=False)
    steppers = []
    for delta in deltas:
        grids = []
        for i in range(b):
            starts, lengths = candidate_grid(n, m, b, int(bounds[i]) + 1,
                                             block_lens[i], epsp, delta, j_values)
            grids.append(_flat_grid(starts, lengths, m))
        steppers.append(DpStepper(block_lens, m, grids, meter))
    for i in range(b):
        xbuf = np.asarray(tape.next_block(block_lens[i]), dtype=np.int64)
        if meter is not None:
            meter.charge(len(xbuf))
        lx = block_lens[i]
        width = min(floor_frac(Fraction(lx) / epsp), m) + 1
        mat = np.zeros((m + 1, width), dtype=np.int64)
        built = np.zeros(m + 1, dtype=bool)
        for st in steppers:
            g = st.grids[i]
            if g is None:
                st.feed(i, None)
                continue
            gs, ge = g
            for a in np.unique(gs):
                a = int(a)
                if not built[a]:
                    lmax = min(floor_frac(Fraction(lx) / epsp), m - a + 1)
                    ybuf = np.asarray(tape.probe_y_slice(a, a + lmax - 1), dtype=np.int64)
                    if meter is not None:
                        meter.charge(2 * (lx + 1))
                    mat[a, : lmax + 1] = ed_prefix_distances(xbuf, ybuf)
                    if meter is not None:
                        meter.release(2 * (lx + 1))
                    built[a] = True
            st.feed(i, mat[gs, ge - gs + 1])
        if meter is not None:
            meter.release(len(xbuf))
    values = [st.finish() for st in steppers]
    best: Optional[int] = None
    for delta, v in zip(deltas, values):
        if best is not None and delta > ceil_frac((1 + epsp) * best):
            break
        best = v if best is None else min(best, v)
    assert best is not None
    return best


def _approx_or_exact_ed(xb: list[int], yb: list[int], delta: Fraction,
                        eps: Fraction, meter: Optional[SpaceMeter]) -> int:
    nb = pow_ceil(len(xb), delta)
    if len(xb) < 4 or nb < 2 or nb > ceil_sqrt(len(xb)):
        return exact_ed(xb, yb, meter)
    return approx_ed(xb, yb, nb, eps, meter)


def _closest(xvals: list[int], lo: int, hi: int, yvals: list[int], T: int,
             delta: Fraction, eps: Fraction, depth: int,
             meter: Optional[SpaceMeter]) -> ClosestSubstringResult:
    nx = hi - lo
    m = len(yvals)
    if depth <= 0 or nx <= T:
        iv, d = closest_substring_exact(xvals[lo:hi], yvals, max(1, 2 * nx))
        return ClosestSubstringResult(iv, d)
    lens = even_block_lengths(nx, T)
    ivs: list[Interval] = []
    dsum = 0
    if meter is not None:
        meter.charge(3 * T)
    pos = lo
    for ln in lens:
        sub = _closest(xvals, pos, pos + ln, yvals, T, delta, eps, depth - 1, meter)
        ivs.append(sub.iv)
        dsum += sub.d
        pos += ln
    ybar = YBar(yvals, ivs)
    xb = ybar.to_list()
    best_d: Optional[int] = None
    best_iv = Interval(1, 0)
    if m == 0:
        if meter is not None:
            meter.release(3 * T)
        return ClosestSubstringResult(Interval(1, 0), ybar.length + dsum)
    if ybar.length == 0:
        if meter is not None:
            meter.release(3 * T)
        return ClosestSubstringResult(Interval(1, 1), 1 + dsum)
    for l in range(1, m + 1):
        maxlen = min(2 * ybar.length, m - l + 1)
        for r in range(l, l + maxlen):
            L = r - l + 1
            if best_d is not None:
                lb = abs(L - ybar.length) + dsum
                if lb >= best_d:
                    if L > ybar.length:
                        break
                    continue
            v = _approx_or_exact_ed(xb, yvals[l - 1 : r], delta, eps, meter)
            d = v + dsum
            if best_d is None or d < best_d:
                best_d, best_iv = d, Interval(l, r)
    if meter is not None:
        meter.release(3 * T)
    assert best_d is not None
    return ClosestSubstringResult(best_iv, best_d)


def asym_closest_substring(tape: StreamTape, delta: EpsLike, eps: EpsLike,
                           depth: Optional[int] = None,
                           meter: Optional[SpaceMeter] = None) -> ClosestSubstringResult:
    """Certified approximate closest substring of x inside y, one pass over x.

    The returned d always upper-bounds ED(x, y[iv]); against the best
    substring it is within the factor alpha_depth, where
    alpha_k = (2+eps)*alpha_{k-1} + 1 + eps and alpha_0 = 1.
    """
    deltaf = as_fraction(delta)
    epsf = as_fraction(eps)
    if not (0 < deltaf <= Fraction(1, 2)):
        raise ParameterError(f"delta must lie in (0,1/2], got {deltaf}")
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    n, m = tape.x_length, tape.y_length
    if depth is None:
        depth = ceil_frac(1 / deltaf)
    T = max(1, pow_ceil(n, deltaf))
    yvals = tape.probe_y_slice(1, m) if m else []
    xvals = tape.next_block(n)
    if n == 0:
        return ClosestSubstringResult(Interval(1, 0), 0)
    return _closest(xvals, 0, n, yvals, T, deltaf, epsf, depth, meter)


def asym_ed_2delta(tape: StreamTape, delta: EpsLike,
                   meter: Optional[SpaceMeter] = None) -> int:
    """O(2^(1/delta))-approximate ED in one pass: per-block closest substrings
    are combined once against the whole of y, with eps = delta."""
    deltaf = as_fraction(delta)
    if not (0 < deltaf <= Fraction(1, 2)):
        raise ParameterError(f"delta must lie in (0,1/2], got {deltaf}")
    n, m = tape.x_length, tape.y_length
    if n == 0:
        tape.next()
        return m
    yvals = tape.probe_y_slice(1, m) if m else []
    xvals = tape.next_block(n)
    if m == 0:
        return n
    T = max(1, pow_ceil(n, deltaf))
    depth_total = ceil_frac(1 / deltaf)
    lens = even_block_lengths(n, T)
    ivs: list[Interval] = []
    dsum = 0
    if meter is not None:
        meter.charge(3 * T)
    pos = 0
    for ln in lens:
        sub = _closest(xvals, pos, pos + ln, yvals, T, deltaf, deltaf,
                       depth_total - 1, meter)
        ivs.append(sub.iv)
        dsum += sub.d
        pos += ln
    ybar = YBar(yvals, ivs)
    v = _approx_or_exact_ed(ybar.to_list(), yvals, deltaf, deltaf, meter)
    if meter is not None:
        meter.release(3 * T)
    return v + dsum


def asym_lcs(tape: StreamTape, eps: EpsLike,
             meter: Optional[SpaceMeter] = None) -> int:
    """(1-eps)-approximate LCS in one pass over x.

    Runs the block frontier machinery at b = ceil(sqrt(n)) with eps tightened
    by the recursion depth, so the lower bound composes to exactly 1 - eps.
    """
    epsf = as_fraction(eps)
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    n, m = tape.x_length, tape.y_length
    if n == 0 or m == 0:
        tape.next()
        return 0
    b = max(2, ceil_sqrt(n))
    d_est = 1
    while b**d_est < n:
        d_est += 1
    epsp = epsf / (3 * d_est)
    block = ceil_frac(Fraction(n, b))
    xvals: list[int] = []
    while True:
        chunk = tape.next_block(block)
        if not chunk:
            break
        xvals.extend(chunk)
    yvals = tape.probe_y_slice(1, m)
    if meter is not None:
        meter.charge(block)
    v = approx_lcs(xvals, yvals, b, epsp, meter)
    if meter is not None:
        meter.release(block)
    return v
