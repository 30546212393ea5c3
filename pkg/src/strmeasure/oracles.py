"""Exact baselines: DP edit distance, patience sorting, Hirschberg LCS, and
brute-force closest substring.

These favor obviousness over speed; they serve as recursion base cases and as
ground truth for every property test.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Optional, Sequence, Union

import numpy as np

from .core import Interval, POS_INF, ParameterError, Tokens
from .instrument import SpaceMeter

SeqLike = Union[Tokens, Sequence[int]]


def _values(s: SeqLike) -> list[int]:
    if isinstance(s, Tokens):
        return s.to_list()
    return list(s)


def _np_tokens(s: SeqLike) -> np.ndarray:
    return np.asarray(_values(s), dtype=np.int64)


def ed_prefix_distances(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row of ED(x, y[:L]) for every prefix length L = 0..len(y).

    One DP sweep with rows over y; the sequential dependency along a row is
    resolved with a running minimum.
    """
    m = len(y)
    row = np.arange(m + 1, dtype=np.int64)
    idx = row  # alias: 0..m
    for xi in x:
        sub = (y != xi).astype(np.int64)
        cand = np.empty(m + 1, dtype=np.int64)
        cand[0] = row[0] + 1
        np.minimum(row[:-1] + sub, row[1:] + 1, out=cand[1:])
        row = np.minimum.accumulate(cand - idx) + idx
    return row


def exact_ed(x: SeqLike, y: SeqLike, meter: Optional[SpaceMeter] = None) -> int:
    """Levenshtein distance (insert/delete/substitute, unit costs).

    Rolls two rows over the shorter dimension: O(min(|x|,|y|)) words.
    """
    xa, ya = _np_tokens(x), _np_tokens(y)
    if len(ya) > len(xa):
        xa, ya = ya, xa
    if len(ya) == 0:
        return len(xa)
    words = 2 * (len(ya) + 1)
    if meter is not None:
        meter.charge(words)
    d = int(ed_prefix_distances(xa, ya)[-1])
    if meter is not None:
        meter.release(words)
    return d


class PatienceList:
    """The list P maintained by patience sorting.

    ``entries`` holds the finite strictly-increasing prefix; every slot past
    it reads as +inf.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Optional[list[int]] = None):
        self.entries = entries if entries is not None else []

    def at(self, i: int) -> int:
        if i < 1:
            raise IndexError(f"patience list index {i} < 1")
        if i <= len(self.entries):
            return self.entries[i - 1]
        return POS_INF

    def update(self, v: int, bound: Optional[int] = None) -> None:
        """Place v at the smallest slot l with P[l] >= v.

        With ``bound`` set, slots past it are not maintained: an update that
        would extend the list beyond ``bound`` is ignored.
        """
        idx = bisect_left(self.entries, v)
        if idx == len(self.entries):
            if bound is None or len(self.entries) < bound:
                self.entries.append(v)
        else:
            self.entries[idx] = v

    def length(self) -> int:
        return len(self.entries)


def patience_sorting(x: SeqLike, bound: Optional[int] = None,
                     meter: Optional[SpaceMeter] = None) -> tuple[int, PatienceList]:
    """LIS length via patience sorting; with ``bound`` only slots 1..bound
    are maintained."""
    plist = PatienceList()
    charged = 0
    for v in (x if isinstance(x, Tokens) else list(x)):
        plist.update(v, bound)
        if meter is not None and len(plist.entries) > charged:
            meter.charge(len(plist.entries) - charged)
            charged = len(plist.entries)
    if meter is not None:
        meter.release(charged)
    return plist.length(), plist


def exact_lis_sequence(x: SeqLike) -> list[int]:
    """One longest strictly increasing subsequence, via patience sorting with
    predecessor bookkeeping."""
    vals = _values(x)
    tails: list[int] = []      # tails[l] = value of P[l+1]
    tails_pos: list[int] = []  # position in vals holding that value
    pred: list[int] = [-1] * len(vals)
    for i, v in enumerate(vals):
        idx = bisect_left(tails, v)
        if idx == len(tails):
            tails.append(v)
            tails_pos.append(i)
        else:
            tails[idx] = v
            tails_pos[idx] = i
        pred[i] = tails_pos[idx - 1] if idx > 0 else -1
    out: list[int] = []
    p = tails_pos[-1] if tails_pos else -1
    while p >= 0:
        out.append(vals[p])
        p = pred[p]
    out.reverse()
    return out


def lcs_prefix_row(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Final LCS DP row: out[j] = LCS(x, y[:j]) for j = 0..len(y)."""
    m = len(y)
    row = np.zeros(m + 1, dtype=np.int64)
    for xi in x:
        eq = (y == xi).astype(np.int64)
        cand = np.empty(m + 1, dtype=np.int64)
        cand[0] = 0
        np.maximum(row[1:], row[:-1] + eq, out=cand[1:])
        row = np.maximum.accumulate(cand)
    return row


def exact_lcs_len(x: SeqLike, y: SeqLike, meter: Optional[SpaceMeter] = None) -> int:
    """Exact LCS length with two rolling rows over the shorter dimension."""
    xa, ya = _np_tokens(x), _np_tokens(y)
    if len(ya) > len(xa):
        xa, ya = ya, xa
    words = 2 * (len(ya) + 1)
    if meter is not None:
        meter.charge(words)
    r = int(lcs_prefix_row(xa, ya)[-1])
    if meter is not None:
        meter.release(words)
    return r


def hirschberg_lcs(x: SeqLike, y: SeqLike, meter: Optional[SpaceMeter] = None) -> list[int]:
    """A longest common subsequence in linear space (divide and conquer on x,
    rolling rows over the shorter string)."""
    xa, ya = _np_tokens(x), _np_tokens(y)
    if len(ya) > len(xa):
        xa, ya = ya, xa
    words = 4 * (len(ya) + 1)
    if meter is not None:
        meter.charge(words)
    out = _hirschberg(xa, ya)
    if meter is not None:
        meter.release(words)
    return out


def _hirschberg(x: np.ndarray, y: np.ndarray) -> list[int]:
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        return []
    if n == 1:
        return [int(x[0])] if bool(np.any(y == x[0])) else []
    half = n // 2
    fwd = lcs_prefix_row(x[:half], y)
    bwd = lcs_prefix_row(x[half:][::-1], y[::-1])
    total = fwd + bwd[::-1]
    split = int(np.argmax(total))  # first maximizer: deterministic
    return _hirschberg(x[:half], y[:split]) + _hirschberg(x[half:], y[split:])


def closest_substring_exact(x: SeqLike, y: SeqLike, max_len: int) -> tuple[Interval, int]:
    """Minimize ED(x, y[l..r]) over substrings with length <= max_len, the
    empty substring included; ties go to the lexicographically smallest (l, r).
    """
    if max_len < 1:
        raise ParameterError(f"max_len must be >= 1, got {max_len}")
    xa, ya = _np_tokens(x), _np_tokens(y)
    m = len(ya)
    best_d = len(xa)
    best_iv = Interval(1, 0)  # empty substring
    for l in range(1, m + 1):
        cap = min(m, l + max_len - 1)
        dists = ed_prefix_distances(xa, ya[l - 1 : cap])
        if len(dists) <= 1:
            continue
        j = int(np.argmin(dists[1:]))  # first minimum: smallest r
        d = int(dists[1 + j])
        if d < best_d:
            best_d = d
            best_iv = Interval(l, l + j)
    return best_iv, best_d
