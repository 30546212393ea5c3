"""Sparse patience frontiers and the recursive block engine shared by the LIS
and LCS approximations.

A frontier (S, Q) samples the patience list: for each stored length s with
Q[s] finite, the processed prefix has an increasing subsequence of length s
whose last symbol is at most Q[s].  The engine processes the input in b
blocks, extends the frontier through each block with recursive calls (plain
and length-capped), and keeps every stored witness true, so the reported
length never exceeds the real optimum.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from typing import Iterable, Optional

from .core import POS_INF, ceil_frac, even_picks, schedule_values
from .instrument import SpaceMeter


class Frontier:
    """Ascending lengths S with witness bounds Q, Q[0] = the order's bottom."""

    __slots__ = ("S", "Q", "neg")

    def __init__(self, S: list[int], Q: list[int], neg: int):
        self.S = S
        self.Q = Q
        self.neg = neg

    @classmethod
    def initial(cls, neg: int) -> "Frontier":
        return cls([0], [neg], neg)

    @property
    def max_s(self) -> int:
        return self.S[-1]

    def interpolate(self, i: int) -> int:
        """Q at the smallest stored length >= i; the bottom for i <= 0, +inf
        past the last stored length."""
        if i <= 0:
            return self.neg
        idx = bisect_left(self.S, i)
        if idx == len(self.S):
            return POS_INF
        return self.Q[idx]

    def q_at(self, s: int) -> int:
        idx = bisect_left(self.S, s)
        if idx == len(self.S) or self.S[idx] != s:
            raise KeyError(f"length {s} not stored")
        return self.Q[idx]

    def entries(self):
        return zip(self.S, self.Q)

    def truncate(self, cap: int) -> "Frontier":
        """Keep lengths <= cap; if longer witnesses exist, record their bound
        at the cap itself."""
        idx = bisect_left(self.S, cap + 1)
        S2, Q2 = self.S[:idx], self.Q[:idx]
        if idx < len(self.S) and (not S2 or S2[-1] != cap):
            S2 = S2 + [cap]
            Q2 = Q2 + [self.Q[idx]]
        elif idx < len(self.S) and S2[-1] == cap:
            Q2 = Q2[:-1] + [min(Q2[-1], self.Q[idx])]
        return Frontier(S2, Q2, self.neg)

    def normalize(self) -> None:
        """Monotone pass: a longer witness also bounds every shorter length."""
        for k in range(len(self.Q) - 2, -1, -1):
            if self.Q[k + 1] < self.Q[k]:
                self.Q[k] = self.Q[k + 1]


def frontier_interpolate(f: Frontier, i: int) -> int:
    return f.interpolate(i)


def ges_frontier(stream: Iterable[int], budget: Optional[int], neg: int,
                 meter: Optional[SpaceMeter] = None) -> Frontier:
    """Streaming sparse patience sorting.

    Emulates patience sorting on the interpolated list: a new symbol lands at
    slot prev(s)+1 of the run whose bound first reaches it.  When the store
    exceeds twice the budget, a cleanup keeps evenly picked lengths (budget of
    None disables cleanups, giving the exact patience list in sparse form).
    """
    S = [0]
    Q = [neg]
    cap_words = 2 * (2 * budget + 2) if budget is not None else None
    charged = 0
    for v in stream:
        idx = bisect_left(Q, v)  # Q[0] = bottom, so idx >= 1
        if idx == len(S):
            S.append(S[-1] + 1)
            Q.append(v)
        else:
            target = S[idx - 1] + 1
            if target == S[idx]:
                Q[idx] = v
            else:
                S.insert(idx, target)
                Q.insert(idx, v)
        if budget is not None and len(S) > 2 * budget:
            keep = even_picks(S[-1], budget)
            Q = [_interp(S, Q, s, neg) for s in keep]
            S = keep
        if meter is not None:
            want = cap_words if cap_words is not None else 2 * len(S)
            if want > charged:
                meter.charge(want - charged)
                charged = want
    if meter is not None:
        meter.release(charged)
    return Frontier(S, Q, neg)


def _interp(S: list[int], Q: list[int], i: int, neg: int) -> int:
    if i <= 0:
        return neg
    idx = bisect_left(S, i)
    return Q[idx] if idx < len(S) else POS_INF


class FrontierEngine:
    """Recursive frontier machinery over an abstract sequence space.

    The space adapter supplies: ``neg`` (order bottom), ``is_base(view)``,
    ``base_frontier(view, meter)`` (exact or streaming frontier of a base
    view), ``split(view)`` (b sub-blocks), ``filter(view, q)`` (keep tokens
    greater than q), ``key(view)`` (memo key), and ``extract_base(view, k)``
    (first k tokens of an exact longest increasing subsequence of a base
    view).  Plain and length-capped runs are memoized per engine instance;
    a cap at least the plain value is the plain run itself.
    """

    def __init__(self, space, b: int, eps: Fraction, meter: Optional[SpaceMeter] = None):
        self.space = space
        self.b = b
        self.eps = eps
        self.meter = meter
        self.slots = ceil_frac(Fraction(b) / eps)
        self._base_memo: dict = {}
        self._run_memo: dict = {}
        self._sched_memo: dict = {}
        self._level_words = 4 * (self.slots + 2) + b + 1

    # -- memoized primitives ------------------------------------------------

    def lsched(self, cap: int) -> list[int]:
        got = self._sched_memo.get(cap)
        if got is None:
            got = schedule_values(self.eps, cap, include_zero=False)
            self._sched_memo[cap] = got
        return got

    def base_frontier(self, view) -> Frontier:
        key = self.space.key(view)
        f = self._base_memo.get(key)
        if f is None:
            f = self.space.base_frontier(view, self.meter)
            self._base_memo[key] = f
        return f

    def value(self, view, depth: int) -> int:
        """Plain (uncapped) run value: the detected LIS length."""
        return self.run(view, None, depth).max_s

    def run(self, view, l_cap: Optional[int], depth: int) -> Frontier:
        """Frontier after all b blocks; l_cap bounds the per-block length."""
        if self.meter is not None:
            self.meter.note_depth(depth)
        if self.space.is_base(view):
            f = self.base_frontier(view)
            return f.truncate(l_cap) if l_cap is not None else f
        key = (self.space.key(view), l_cap)
        got = self._run_memo.get(key)
        if got is not None:
            return got
        if l_cap is not None:
            plain = self.run(view, None, depth)
            if l_cap >= plain.max_s:
                self._run_memo[key] = plain
                return plain
        f = self._run_blocks(view, l_cap, upto=self.b, depth=depth)
        self._run_memo[key] = f
        return f

    def run_prefix(self, view, l_cap: Optional[int], upto: int, depth: int) -> Frontier:
        """Re-run the block loop, stopping after ``upto`` blocks (the sequence
        trace recomputes intermediate frontiers instead of storing them)."""
        if upto == self.b:
            return self.run(view, l_cap, depth)
        return self._run_blocks(view, l_cap, upto, depth)

    # -- the block update ----------------------------------------------------

    def _run_blocks(self, view, l_cap: Optional[int], upto: int, depth: int) -> Frontier:
        if self.meter is not None:
            self.meter.charge(self._level_words)
        blocks = self.space.split(view)
        f = Frontier.initial(self.space.neg)
        for t in range(upto):
            f = self._update(blocks[t], f, l_cap, depth)
        if self.meter is not None:
            self.meter.release(self._level_words)
        return f

    def _update(self, blk, prev: Frontier, l_cap: Optional[int], depth: int) -> Frontier:
        # extension lengths per stored witness
        k = 0
        fviews = []
        for s, q in prev.entries():
            z = self.space.filter(blk, q)
            fviews.append(z)
            d = self.value(z, depth + 1)
            if s + d > k:
                k = s + d
        if l_cap is not None and k > l_cap:
            k = l_cap
        S2 = even_picks(k, self.slots)
        Q2 = [POS_INF] * len(S2)
        Q2[0] = self.space.neg
        for (s, q), z in zip(prev.entries(), fviews):
            if k <= s:
                continue
            lsched = self.lsched(k - s)
            if not lsched:
                continue
            if self.space.is_base(z):
                # base child: the witness bound at index j is the same for
                # every cap >= j, so one sweep covers the whole l loop
                G = self.base_frontier(z)
                lo = bisect_left(S2, s + 1)
                hi = bisect_left(S2, k + 1)
                for idx in range(lo, hi):
                    cand = G.interpolate(S2[idx] - s)
                    if cand < Q2[idx]:
                        Q2[idx] = cand
            else:
                v_plain = self.value(z, depth + 1)
                if v_plain == 0:
                    continue
                groups: dict[int, int] = {}
                for l in lsched:
                    l_eff = min(l, v_plain)
                    if groups.get(l_eff, -1) < l:
                        groups[l_eff] = l
                for l_eff in sorted(groups):
                    F = self.run(z, l_eff, depth + 1)
                    window = min(s + groups[l_eff], k)
                    lo = bisect_left(S2, s + 1)
                    hi = bisect_left(S2, window + 1)
                    for idx in range(lo, hi):
                        cand = F.interpolate(S2[idx] - s)
                        if cand < Q2[idx]:
                            Q2[idx] = cand
        # carry-forward: a longer earlier witness bounds every shorter length,
        # so the previous frontier survives pointwise
        for idx, s2 in enumerate(S2):
            cand = prev.interpolate(s2)
            if cand < Q2[idx]:
                Q2[idx] = cand
        out = Frontier(S2, Q2, self.space.neg)
        out.normalize()
        return out

    # -- sequence extraction ---------------------------------------------------

    def trace(self, view, depth: int = 1) -> list[int]:
        """Extract the increasing token sequence behind the plain run's value."""
        f = self.run(view, None, depth)
        v = f.max_s
        if v == 0:
            return []
        return self._extract(view, None, v, f.q_at(v), depth)

    def _extract(self, view, l_cap: Optional[int], sigma: int, beta: int,
                 depth: int) -> list[int]:
        """First ``sigma`` tokens of an increasing subsequence of ``view``
        ending at or below ``beta``, certified by run(view, l_cap)."""
        if sigma == 0:
            return []
        if self.space.is_base(view):
            return self.space.extract_base(self.space.clamp(view, beta), sigma,
                                           self.meter)
        blocks = self.space.split(view)
        sig, bet = sigma, beta
        specs: list = []
        for t in range(self.b, 0, -1):
            fprev = self.run_prefix(view, l_cap, t - 1, depth)
            carry = fprev.interpolate(sig)
            if carry <= bet:
                bet = carry
                specs.append(None)
                continue
            k_t = self.run_prefix(view, l_cap, t, depth).max_s
            found = self._find_step(blocks[t - 1], fprev, k_t, sig, bet, depth)
            if found is None:
                raise AssertionError("sequence trace lost the certified witness")
            s, q, spec = found
            specs.append(spec)
            sig, bet = s, q
        if sig != 0:
            raise AssertionError("sequence trace did not reach the origin")
        out: list[int] = []
        for spec in reversed(specs):
            if spec is None:
                continue
            z, l_eff, s_tilde, q_tilde, j = spec
            if self.space.is_base(z):
                piece = self.space.extract_base(self.space.clamp(z, q_tilde), s_tilde,
                                                self.meter)
            else:
                piece = self._extract(z, l_eff, s_tilde, q_tilde, depth + 1)
            out.extend(piece[:j])
        return out

    def _find_step(self, block, fprev: Frontier, k_t: int, sig: int, bet: int,
                   depth: int):
        """First (s, l) pair, s then l ascending, whose capped run certifies
        an extension of length sig - s ending at or below bet."""
        for s, q in fprev.entries():
            if s >= sig or q >= bet:
                continue
            j = sig - s
            if k_t <= s:
                continue
            z = self.space.filter(block, q)
            z_base = self.space.is_base(z)
            v_plain = None if z_base else self.value(z, depth + 1)
            if v_plain is not None and v_plain == 0:
                continue
            for l in self.lsched(k_t - s):
                if l < j:
                    continue
                if z_base:
                    F = self.base_frontier(z).truncate(l)
                    l_used = None
                else:
                    l_used = min(l, v_plain)
                    F = self.run(z, l_used, depth + 1)
                idx = bisect_left(F.S, j)
                if idx < len(F.S) and F.Q[idx] <= bet:
                    return s, q, (z, l_used, F.S[idx], F.Q[idx], j)
        return None
