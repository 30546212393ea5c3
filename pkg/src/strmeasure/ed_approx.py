"""Block-recursive edit-distance approximation.

Three layers: per-block candidate interval generation, a two-row dynamic
program over block-to-interval matchings, and the recursive driver that
guesses the distance over a geometric grid and takes the best matching found.
The driver never underestimates the true distance and stays within the
(1 + 10*eps)^ceil(log_b n) multiplicative envelope.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .core import (
    EpsLike,
    Interval,
    ParameterError,
    Tokens,
    as_fraction,
    ceil_frac,
    ceil_sqrt,
    floor_frac,
    schedule_values,
)
from .instrument import SpaceMeter
from .oracles import ed_prefix_distances

Oracle = Callable[[int, Interval], int]


def even_block_lengths(n: int, b: int) -> list[int]:
    """First (n mod b) blocks get ceil(n/b) tokens, the rest floor(n/b)."""
    q, r = divmod(n, b)
    return [q + 1] * r + [q] * (b - r)


def candidate_set(n: int, m: int, b: int, block: Interval, eps: EpsLike,
                  delta: int) -> list[Interval]:
    """Candidate intervals of y for one block of x at distance guess delta.

    Start points are the multiples of ceil(eps*delta/b) inside the window
    [l - delta - g, l + delta + g] (every point when that step is zero); end
    offsets come from the geometric grid, filtered so the interval length
    stays within [eps*L, L/eps].  Intervals poking past m are dropped.
    """
    epsf = as_fraction(eps)
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    if delta < 0:
        raise ParameterError(f"delta must be >= 0, got {delta}")
    j_values = [0] + schedule_values(epsf, m, include_zero=False)
    starts = _candidate_starts(m, block.start, epsf, b, delta)
    lens = _candidate_lengths(block.length, epsf, j_values)
    out = set()
    for a in starts:
        for L in lens:
            if a + L - 1 <= m:
                out.add(Interval(int(a), int(a + L - 1)))
    return sorted(out)


def _candidate_starts(m: int, l_i: int, eps: Fraction, b: int, delta: int) -> np.ndarray:
    g = ceil_frac(eps * delta / b)
    if g == 0:
        lo = max(1, l_i - delta - 1)
        hi = min(m, l_i + delta + 1)
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        return np.arange(lo, hi + 1, dtype=np.int64)
    lo = max(1, l_i - delta - g)
    hi = min(m, l_i + delta + g)
    first = ((lo + g - 1) // g) * g
    if first > hi:
        return np.empty(0, dtype=np.int64)
    return np.arange(first, hi + 1, g, dtype=np.int64)


def _candidate_lengths(Lx: int, eps: Fraction, j_values: Sequence[int]) -> list[int]:
    j_short = floor_frac(Fraction(Lx) * (1 - eps))      # L - j >= eps L
    j_long = floor_frac(Fraction(Lx) * (1 - eps) / eps)  # L + j <= L / eps
    lens = set()
    for j in j_values:
        if j <= j_short:
            lens.add(Lx - j)
        if j <= j_long:
            lens.add(Lx + j)
    return sorted(lens)


def candidate_grid(n: int, m: int, b: int, l_i: int, Lx: int, eps: Fraction,
                   delta: int, j_values: Sequence[int]):
    """(starts, lengths) arrays whose product, clipped to end <= m, is the
    candidate set."""
    starts = _candidate_starts(m, l_i, eps, b, delta)
    lens = _candidate_lengths(Lx, eps, j_values)
    return starts, lens


_INF = 1 << 60


class DpStepper:
    """Feed-forward form of the block DP.

    The per-block candidate geometry (start/end arrays) is fixed up front; M
    value arrays arrive block by block via feed().  Rows roll over the start
    anchors of the next block with candidates; the final combine is a
    transition to the virtual target m + 1.  Blocks without candidates are
    forced unmatched.
    """

    def __init__(self, block_lens: Sequence[int], m: int, grids,
                 meter: Optional[SpaceMeter] = None):
        self.block_lens = list(block_lens)
        self.m = m
        self.meter = meter
        self.grids = grids
        self.nonempty = [i for i, g in enumerate(grids) if g is not None and len(g[0])]
        self._pos = 0
        self._charged = 0
        if self.nonempty:
            i0 = self.nonempty[0]
            self.anchors = np.unique(grids[i0][0])
            self.row = (self.anchors - 1) + sum(self.block_lens[:i0])
            self._swap_charge(2 * len(self.anchors))
        else:
            self.anchors = None
            self.row = None

    def _swap_charge(self, new_words: int):
        if self.meter is not None:
            self.meter.charge(new_words)
            self.meter.release(self._charged)
        self._charged = new_words

    def feed(self, i: int, mvals: Optional[np.ndarray]) -> None:
        """Advance past block i; mvals matches grids[i] (None for no grid)."""
        if self._pos >= len(self.nonempty) or self.nonempty[self._pos] != i:
            return  # forced-unmatched block: cost folded into pending sums
        starts, ends = self.grids[i]
        anchors, row = self.anchors, self.row
        if self._pos + 1 < len(self.nonempty):
            nxt = self.nonempty[self._pos + 1]
            targets = np.unique(self.grids[nxt][0])
            pending_after = sum(self.block_lens[i + 1 : nxt])
        else:
            targets = np.array([self.m + 1], dtype=np.int64)
            pending_after = sum(self.block_lens[i + 1 :])
        # unmatched: row[a'] + (t - a') + len_i over anchors a' <= t
        pm_u = np.minimum.accumulate(row - anchors)
        idx_u = np.searchsorted(anchors, targets, side="right")
        val_u = np.where(idx_u > 0, pm_u[np.maximum(idx_u - 1, 0)] + targets + self.block_lens[i], _INF)
        # matched: row[at start] + M + (t - 1 - end) over candidates with end <= t - 1
        apos = np.searchsorted(anchors, starts)
        key = row[apos] + mvals - ends - 1
        order = np.argsort(ends, kind="stable")
        ends_sorted = ends[order]
        pm_m = np.minimum.accumulate(key[order])
        idx_m = np.searchsorted(ends_sorted, targets - 1, side="right")
        val_m = np.where(idx_m > 0, pm_m[np.maximum(idx_m - 1, 0)] + targets, _INF)
        self.row = np.minimum(val_u, val_m) + pending_after
        self.anchors = targets
        self._pos += 1
        self._swap_charge(2 * len(self.anchors))

    def finish(self) -> int:
        if self.meter is not None and self._charged:
            self.meter.release(self._charged)
            self._charged = 0
        if self.row is None:
            return sum(self.block_lens) + self.m
        return int(self.row[0])


def _dp_arrays(block_lens: Sequence[int], m: int, gathered, meter: Optional[SpaceMeter]):
    """Run the stepper over fully gathered (starts, ends, M) block arrays."""
    grids = [None if g is None else (g[0], g[1]) for g in gathered]
    stepper = DpStepper(block_lens, m, grids, meter)
    for i, g in enumerate(gathered):
        stepper.feed(i, None if g is None else g[2])
    return stepper.finish()


def dp_edit_distance(n: int, m: int, b: int, eps: EpsLike, delta: int,
                     oracle: Oracle, candidates: Sequence[Sequence[Interval]],
                     meter: Optional[SpaceMeter] = None) -> int:
    """Best block matching cost given per-block candidate intervals and a
    distance oracle (called exactly once per candidate, in sorted order).

    Never underestimates ED(x, y) as long as the oracle never does.
    """
    if len(candidates) != b:
        raise ParameterError(f"need {b} candidate lists, got {len(candidates)}")
    as_fraction(eps)  # validates shape; the DP itself is eps-free
    block_lens = even_block_lengths(n, b)
    gathered = []
    for i, cands in enumerate(candidates, start=1):
        ivs = sorted(set(cands))
        if not ivs:
            gathered.append(None)
            continue
        starts = np.array([iv.start for iv in ivs], dtype=np.int64)
        ends = np.array([iv.end for iv in ivs], dtype=np.int64)
        mvals = np.array([int(oracle(i, iv)) for iv in ivs], dtype=np.int64)
        if np.any(mvals < 0):
            raise ParameterError("oracle returned a negative distance")
        gathered.append((starts, ends, mvals))
    return _dp_arrays(block_lens, m, gathered, meter)


class EdRowPool:
    """Cross-call cache of exact distance rows against one fixed y.

    Used by callers that evaluate one x against many substrings of the same
    y: rows are keyed by (x block, absolute y start) and a call working on
    y[off:...] reads the prefixes it needs.
    """

    def __init__(self, y_full: np.ndarray):
        self.y_full = y_full
        self.rows: dict = {}

    def row(self, xa: np.ndarray, bxlo: int, bxhi: int, abs0: int,
            eps: Fraction) -> np.ndarray:
        key = (bxlo, bxhi, abs0)
        row = self.rows.get(key)
        if row is None:
            lx = bxhi - bxlo
            w = min(floor_frac(Fraction(lx) / eps), len(self.y_full) - abs0)
            row = ed_prefix_distances(xa[bxlo:bxhi], self.y_full[abs0 : abs0 + w])
            self.rows[key] = row
        return row


class _EdContext:
    """Shared state for one approx_ed invocation: token arrays, per-block
    exact-distance matrices, the subproblem memo, and the meter."""

    def __init__(self, xa: np.ndarray, ya: np.ndarray, b: int, eps: Fraction,
                 cutoff: int, meter: Optional[SpaceMeter],
                 pool: Optional[EdRowPool] = None, pool_offset: int = 0):
        self.xa = xa
        self.ya = ya
        self.b = b
        self.eps = eps
        self.cutoff = cutoff
        self.meter = meter
        self.pool = pool
        self.pool_offset = pool_offset
        self.memo: dict = {}
        self.sched_cache: dict = {}

    def schedule(self, cap: int) -> list[int]:
        if cap not in self.sched_cache:
            self.sched_cache[cap] = schedule_values(self.eps, cap, include_zero=False)
        return self.sched_cache[cap]

    def exact(self, xlo, xhi, ylo, yhi) -> int:
        xs = self.xa[xlo:xhi]
        ys = self.ya[ylo:yhi]
        if len(ys) < len(xs):
            xs, ys = ys, xs
        if len(xs) == 0:
            return len(ys)
        words = 2 * (len(xs) + 1)
        if self.meter is not None:
            self.meter.charge(words)
        d = int(ed_prefix_distances(ys, xs)[-1])
        if self.meter is not None:
            self.meter.release(words)
        return d

    def solve(self, xlo, xhi, ylo, yhi, depth) -> int:
        nx, ny = xhi - xlo, yhi - ylo
        if self.meter is not None:
            self.meter.note_depth(depth)
        if nx == 0 or ny == 0:
            return max(nx, ny)
        if nx <= self.cutoff or ny <= self.b:
            return self.exact(xlo, xhi, ylo, yhi)
        key = (xlo, xhi, ylo, yhi)
        v = self.memo.get(key)
        if v is None:
            v = self._solve_blocks(xlo, xhi, ylo, yhi, depth)
            self.memo[key] = v
        return v

    def _solve_blocks(self, xlo, xhi, ylo, yhi, depth) -> int:
        nx, ny = xhi - xlo, yhi - ylo
        b, eps = self.b, self.eps
        lens = even_block_lengths(nx, b)
        bounds = np.cumsum([0] + lens)
        if self.meter is not None:
            self.meter.charge(b + 1)
        j_values = [0] + self.schedule(ny)
        mats: list = [None] * b  # per-block lazy ED(block, y[a..a+L-1]) matrices
        best: Optional[int] = None
        for delta in [0] + self.schedule(max(nx, ny)):
            if best is not None and delta > ceil_frac((1 + eps) * best):
                break
            gathered = []
            for i in range(b):
                l_rel = int(bounds[i]) + 1
                Lx = lens[i]
                starts, lengths = candidate_grid(nx, ny, b, l_rel, Lx, eps, delta, j_values)
                gathered.append(self._gather(i, mats, xlo, ylo, yhi, l_rel, Lx,
                                             starts, lengths, depth))
            v = _dp_arrays(lens, ny, gathered, self.meter)
            best = v if best is None else min(best, v)
        if self.meter is not None:
            self.meter.release(b + 1)
        assert best is not None
        return best

    def _gather(self, i, mats, xlo, ylo, yhi, l_rel, Lx, starts: np.ndarray,
                lengths: list[int], depth):
        """Candidate (start, end, M) arrays for one block: M comes from the
        block's exact distance matrix when the child is a base case, else
        from recursion (memoized)."""
        if len(starts) == 0 or not lengths:
            return None
        ny = yhi - ylo
        bxlo = xlo + l_rel - 1
        bxhi = bxlo + Lx
        lens_arr = np.array(lengths, dtype=np.int64)
        grid_starts = np.repeat(starts, len(lens_arr))
        grid_lens = np.tile(lens_arr, len(starts))
        valid = grid_starts + grid_lens - 1 <= ny
        grid_starts = grid_starts[valid]
        grid_lens = grid_lens[valid]
        if len(grid_starts) == 0:
            return None
        ends = grid_starts + grid_lens - 1
        if Lx <= self.cutoff:
            if mats[i] is None:
                width = min(floor_frac(Fraction(Lx) / self.eps), ny) + 1
                mats[i] = (np.zeros((ny + 1, width), dtype=np.int64),
                           np.zeros(ny + 1, dtype=bool))
            mat, built = mats[i]
            for a in np.unique(grid_starts):
                a = int(a)
                if not built[a]:
                    lmax = min(floor_frac(Fraction(Lx) / self.eps), ny - a + 1)
                    words = 2 * (Lx + 1)
                    if self.meter is not None:
                        self.meter.charge(words)
                    ystart = ylo + a - 1
                    if self.pool is not None:
                        full = self.pool.row(self.xa, bxlo, bxhi,
                                             self.pool_offset + ystart, self.eps)
                        mat[a, : lmax + 1] = full[: lmax + 1]
                    else:
                        mat[a, : lmax + 1] = ed_prefix_distances(
                            self.xa[bxlo:bxhi], self.ya[ystart : ystart + lmax])
                    if self.meter is not None:
                        self.meter.release(words)
                    built[a] = True
            mvals = mat[grid_starts, grid_lens]
        else:
            mvals = np.empty(len(grid_starts), dtype=np.int64)
            for k in range(len(grid_starts)):
                a = int(grid_starts[k])
                mvals[k] = self.solve(bxlo, bxhi, ylo + a - 1,
                                      ylo + a - 1 + int(grid_lens[k]), depth + 1)
        return grid_starts, ends, mvals


def approx_ed(x, y, b: int, eps: EpsLike, meter: Optional[SpaceMeter] = None) -> int:
    """Space-efficient edit-distance approximation.

    Guarantees ED(x,y) <= result <= (1+10*eps)^ceil(log_b |x|) * ED(x,y).
    The base case switches to the exact two-row DP once a subproblem is small;
    the threshold min(4b, ceil(n/2)) keeps desk-scale runs tractable while the
    top level always exercises the full candidate/DP machinery.
    """
    epsf = as_fraction(eps)
    xs = x.to_list() if isinstance(x, Tokens) else list(x)
    ys = y.to_list() if isinstance(y, Tokens) else list(y)
    if b < 2:
        raise ParameterError(f"b must be >= 2, got {b}")
    if not (0 < epsf < 1):
        raise ParameterError(f"eps must lie in (0,1), got {epsf}")
    if b > max(2, len(xs)):
        raise ParameterError(f"b={b} exceeds |x|={len(xs)}")
    xa = np.asarray(xs, dtype=np.int64)
    ya = np.asarray(ys, dtype=np.int64)
    cutoff = max(b, min(4 * b, ceil_frac(Fraction(len(xs), 2))))
    ctx = _EdContext(xa, ya, b, epsf, cutoff, meter)
    return ctx.solve(0, len(xa), 0, len(ya), depth=1)
