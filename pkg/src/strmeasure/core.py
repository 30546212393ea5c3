"""Core value types: tokens, virtual token sequences, intervals, parameter
bundles, and the deterministic integer schedules used by every algorithm.

Token convention
----------------
A token is a plain Python int.  Ordinary symbols must fit in a signed 64-bit
range; the two sentinels sit far outside it so that ``NEG_INF < symbol <
POS_INF`` holds under normal integer comparison.  Byte alphabets embed as
their byte values 0..255, which is injective and order-preserving.

All public indices are 1-based inclusive.  Internal layout is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence, Union

SYMBOL_MIN = -(1 << 63)
SYMBOL_MAX = (1 << 63) - 1

NEG_INF = -(1 << 70)
POS_INF = 1 << 70

KIND_NEG_INF = "NEG_INF"
KIND_SYMBOL = "SYMBOL"
KIND_POS_INF = "POS_INF"

EpsLike = Union[Fraction, float, int, str]


class ParameterError(ValueError):
    """Raised when an operation receives parameters outside its contract."""


def token_kind(t: int) -> str:
    if t == NEG_INF:
        return KIND_NEG_INF
    if t == POS_INF:
        return KIND_POS_INF
    if SYMBOL_MIN <= t <= SYMBOL_MAX:
        return KIND_SYMBOL
    raise ParameterError(f"not a token: {t}")


def as_fraction(eps: EpsLike) -> Fraction:
    """Normalize an epsilon-like value to an exact Fraction.

    Floats go through their shortest decimal repr so that e.g. 0.1 means the
    decimal 1/10, not the binary double.  Keeps every schedule computed from
    eps identical across platforms.
    """
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, float):
        return Fraction(repr(eps))
    return Fraction(eps)


def ceil_frac(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def floor_frac(f: Fraction) -> int:
    return f.numerator // f.denominator


class Interval(NamedTuple):
    """1-based inclusive index pair; end == start - 1 encodes the empty one."""

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def is_empty(self) -> bool:
        return self.end == self.start - 1


def check_interval(iv: Interval) -> None:
    if iv.start < 1 or iv.end < iv.start - 1:
        raise ParameterError(f"malformed interval {iv}")


@dataclass(frozen=True)
class ApproxParams:
    """Knobs shared by the approximation algorithms."""

    b: int
    eps: Fraction
    delta: Optional[Fraction] = None

    def __post_init__(self):
        if self.b < 2:
            raise ParameterError(f"block count b must be >= 2, got {self.b}")
        eps = as_fraction(self.eps)
        object.__setattr__(self, "eps", eps)
        if not (0 < eps < 1):
            raise ParameterError(f"eps must lie in (0,1), got {eps}")
        if self.delta is not None:
            d = as_fraction(self.delta)
            object.__setattr__(self, "delta", d)
            if not (0 < d < Fraction(1, 2)):
                raise ParameterError(f"delta must lie in (0,1/2), got {d}")

    def check_instance(self, n: int) -> None:
        # The theorems assume b <= sqrt(n); enforced at algorithm entry.
        if self.b > ceil_sqrt(n):
            raise ParameterError(
                f"b={self.b} exceeds ceil(sqrt(n))={ceil_sqrt(n)} for n={n}"
            )


def ceil_sqrt(n: int) -> int:
    if n <= 0:
        return 2  # degenerate instances accept every small b
    r = int(n**0.5)
    while r * r < n:
        r += 1
    while (r - 1) * (r - 1) >= n:
        r -= 1
    return r


def schedule_values(ratio_eps: EpsLike, max_value: int, include_zero: bool) -> list[int]:
    """Ascending duplicate-free geometric integer grid.

    Starts at 1 (0 prepended on request) and steps by
    v <- max(v + 1, ceil(v * (1 + eps))), capped so the last value is exactly
    ``max_value``.  The cap preserves the coverage property: every integer
    T in [1, max_value] has a schedule value in [T, ceil((1+eps)*T)].
    """
    eps = as_fraction(ratio_eps)
    if not (0 < eps < 1):
        raise ParameterError(f"ratio eps must lie in (0,1), got {eps}")
    if max_value < 0:
        raise ParameterError(f"max must be >= 0, got {max_value}")
    vals: list[int] = [0] if include_zero else []
    v = 1
    growth = 1 + eps
    while v <= max_value:
        vals.append(v)
        if v == max_value:
            break
        v = min(max_value, max(v + 1, ceil_frac(v * growth)))
    return vals


def even_picks(k: int, slots: int) -> list[int]:
    """{floor(j*k/slots) : j = 0..slots}, deduplicated and ascending.

    Contains 0 and k; consecutive gaps are at most ceil(k/slots); for
    k <= slots this is just 0..k.
    """
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    if slots < 1:
        raise ParameterError(f"slots must be >= 1, got {slots}")
    if k <= slots:
        return list(range(k + 1))
    out = []
    prev = -1
    for j in range(slots + 1):
        v = (j * k) // slots
        if v != prev:
            out.append(v)
            prev = v
    return out


class Tokens:
    """A 1-based-indexable token sequence backed by a shared base list.

    ``Tokens`` is a flat view: (base, lo, hi) half-open 0-based positions plus
    an optional value band (gt, le].  Sub-views and filtered views compose
    into another flat view, so no view ever allocates storage proportional to
    its own length.
    """

    __slots__ = ("base", "lo", "hi", "gt", "le", "_count")

    def __init__(self, base: Sequence[int], lo: int = 0, hi: Optional[int] = None,
                 gt: int = NEG_INF, le: int = POS_INF):
        self.base = base
        self.lo = lo
        self.hi = len(base) if hi is None else hi
        self.gt = gt
        self.le = le
        if gt == NEG_INF and le == POS_INF:
            self._count: Optional[int] = self.hi - self.lo
        else:
            self._count = None

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "Tokens":
        return cls(list(values))

    @property
    def length(self) -> int:
        if self._count is None:
            base, gt, le = self.base, self.gt, self.le
            self._count = sum(1 for p in range(self.lo, self.hi) if gt < base[p] <= le)
        return self._count

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        base, gt, le = self.base, self.gt, self.le
        if gt == NEG_INF and le == POS_INF:
            for p in range(self.lo, self.hi):
                yield base[p]
        else:
            for p in range(self.lo, self.hi):
                v = base[p]
                if gt < v <= le:
                    yield v

    def at(self, i: int) -> int:
        """1-based element access."""
        if i < 1 or i > self.length:
            raise IndexError(f"index {i} out of range [1, {self.length}]")
        if self.gt == NEG_INF and self.le == POS_INF:
            return self.base[self.lo + i - 1]
        for k, v in enumerate(self, start=1):
            if k == i:
                return v
        raise AssertionError("unreachable")

    def to_list(self) -> list[int]:
        return list(self)

    def filter_gt(self, gt: int) -> "Tokens":
        return Tokens(self.base, self.lo, self.hi, max(self.gt, gt), self.le)

    def band(self, gt: int, le: int) -> "Tokens":
        return Tokens(self.base, self.lo, self.hi, max(self.gt, gt), min(self.le, le))

    def split_even(self, b: int) -> list["Tokens"]:
        """Split into b pieces by element count: the first (len mod b) pieces
        get ceil(len/b) elements, the rest floor(len/b).

        One scan finds the base-position boundaries, so the pieces stay flat
        views; only O(b) bookkeeping is allocated.
        """
        n = self.length
        q, r = divmod(n, b)
        sizes = [q + 1] * r + [q] * (b - r)
        bounds = [self.lo]
        if self.gt == NEG_INF and self.le == POS_INF:
            pos = self.lo
            for sz in sizes:
                pos += sz
                bounds.append(pos)
        else:
            base, gt, le = self.base, self.gt, self.le
            pos = self.lo
            seen = 0
            si = 0
            need = sizes[0] if sizes else 0
            for p in range(self.lo, self.hi):
                if si >= b:
                    break
                if gt < base[p] <= le:
                    seen += 1
                    if seen == need:
                        bounds.append(p + 1)
                        si += 1
                        seen = 0
                        need = sizes[si] if si < b else 0
                        while si < b and need == 0:
                            bounds.append(p + 1)
                            si += 1
                            need = sizes[si] if si < b else 0
            while len(bounds) < b + 1:
                bounds.append(self.hi)
        pieces = []
        for j in range(b):
            t = Tokens(self.base, bounds[j], bounds[j + 1], self.gt, self.le)
            t._count = sizes[j]
            pieces.append(t)
        return pieces


def token_substring(s: Tokens, iv: Interval) -> Tokens:
    """Virtual view of s restricted to the 1-based inclusive interval iv."""
    check_interval(iv)
    if iv.is_empty():
        return Tokens(s.base, s.lo, s.lo, s.gt, s.le)
    if iv.end > s.length:
        raise IndexError(f"interval {iv} exceeds sequence length {s.length}")
    if s.gt == NEG_INF and s.le == POS_INF:
        return Tokens(s.base, s.lo + iv.start - 1, s.lo + iv.end, s.gt, s.le)
    # general case: locate the iv.start-th and iv.end-th surviving positions
    base, gt, le = s.base, s.gt, s.le
    first = last = None
    seen = 0
    for p in range(s.lo, s.hi):
        if gt < base[p] <= le:
            seen += 1
            if seen == iv.start:
                first = p
            if seen == iv.end:
                last = p
                break
    assert first is not None and last is not None
    out = Tokens(base, first, last + 1, gt, le)
    out._count = iv.length
    return out


def tokens_from_bytes(data: bytes) -> Tokens:
    return Tokens(list(data))


def tokens_from_ints(values: Sequence[int]) -> Tokens:
    vals = list(values)
    for v in vals:
        if not (SYMBOL_MIN <= v <= SYMBOL_MAX):
            raise ParameterError(f"symbol {v} outside the 64-bit token range")
    return Tokens(vals)
