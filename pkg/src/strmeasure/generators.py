"""Deterministic seeded instance generators.

All randomness comes from SplitMix64 (Steele et al.), implemented here in
plain integer arithmetic so identical specs give byte-identical output on
every platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core import ParameterError

_MASK = (1 << 64) - 1


class SplitMix64:
    """The SplitMix64 generator: 64-bit state, one mix per draw."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n) (modulo reduction; fine for testing)."""
        if n <= 0:
            raise ParameterError(f"below() needs n >= 1, got {n}")
        return self.next_u64() % n


KINDS = ("random", "planted_ed", "planted_lis", "permutation")


@dataclass(frozen=True)
class GenSpec:
    seed: int
    n: int
    alphabet_size: int = 4
    kind: str = "random"
    k: Optional[int] = None  # planted_ed edit budget
    l: Optional[int] = None  # planted_lis target length

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown kind {self.kind!r}")
        if self.n < 0:
            raise ParameterError(f"n must be >= 0, got {self.n}")
        if self.alphabet_size < 1:
            raise ParameterError(f"alphabet_size must be >= 1, got {self.alphabet_size}")
        if self.kind == "planted_ed":
            if self.k is None or not (0 <= self.k <= self.n):
                raise ParameterError(f"planted_ed needs 0 <= k <= n, got k={self.k}")
        if self.kind == "planted_lis":
            if self.l is None or not (0 <= self.l <= self.n):
                raise ParameterError(f"planted_lis needs 0 <= l <= n, got l={self.l}")


@dataclass
class GenResult:
    x: list[int]
    y: Optional[list[int]] = None
    meta: dict = field(default_factory=dict)


def generate(spec: GenSpec) -> GenResult:
    rng = SplitMix64(spec.seed)
    if spec.kind == "random":
        return GenResult(x=[rng.below(spec.alphabet_size) for _ in range(spec.n)])
    if spec.kind == "permutation":
        return GenResult(x=_permutation(rng, spec.n))
    if spec.kind == "planted_ed":
        return _planted_ed(rng, spec)
    if spec.kind == "planted_lis":
        return _planted_lis(rng, spec)
    raise AssertionError(spec.kind)


def _permutation(rng: SplitMix64, n: int) -> list[int]:
    vals = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):  # Fisher-Yates
        j = rng.below(i + 1)
        vals[i], vals[j] = vals[j], vals[i]
    return vals


def _planted_ed(rng: SplitMix64, spec: GenSpec) -> GenResult:
    x = [rng.below(spec.alphabet_size) for _ in range(spec.n)]
    y = list(x)
    for _ in range(spec.k or 0):
        op = rng.below(3)
        if op == 0 and y:  # substitute
            pos = rng.below(len(y))
            y[pos] = rng.below(spec.alphabet_size)
        elif op == 1 and y:  # delete
            del y[rng.below(len(y))]
        else:  # insert
            pos = rng.below(len(y) + 1)
            y.insert(pos, rng.below(spec.alphabet_size))
    return GenResult(x=x, y=y, meta={"edit_budget": spec.k})


def _planted_lis(rng: SplitMix64, spec: GenSpec) -> GenResult:
    """Permutation of 1..n carrying an increasing subsequence of length >= l
    at known positions."""
    n, l = spec.n, spec.l or 0
    positions = sorted(_sample(rng, n, l))
    values = sorted(_sample(rng, n, l))
    x = [0] * n
    taken = set(positions)
    vset = set(values)
    for p, v in zip(positions, values):
        x[p] = v + 1
    rest_vals = [v + 1 for v in range(n) if v not in vset]
    rest_vals = [rest_vals[i] for i in _permutation_idx(rng, len(rest_vals))]
    it = iter(rest_vals)
    for p in range(n):
        if p not in taken:
            x[p] = next(it)
    end_symbol = values[-1] + 1 if l > 0 else None
    return GenResult(x=x, meta={"planted_length": l,
                                "positions": [p + 1 for p in positions],
                                "end_symbol": end_symbol})


def _sample(rng: SplitMix64, n: int, k: int) -> list[int]:
    """k distinct draws from 0..n-1 (partial Fisher-Yates)."""
    vals = list(range(n))
    for i in range(k):
        j = i + rng.below(n - i)
        vals[i], vals[j] = vals[j], vals[i]
    return vals[:k]


def _permutation_idx(rng: SplitMix64, n: int) -> list[int]:
    idx = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        idx[i], idx[j] = idx[j], idx[i]
    return idx


def enumerate_small(alphabet_size: int, max_len: int) -> Iterator[list[int]]:
    """All strings of length 0..max_len, shortest first, lexicographic within
    each length."""
    if alphabet_size < 1:
        raise ParameterError("alphabet_size must be >= 1")
    if alphabet_size**max_len > 10**7:
        raise ParameterError(
            f"alphabet_size**max_len = {alphabet_size**max_len} exceeds the 1e7 guard"
        )
    for length in range(max_len + 1):
        word = [0] * length
        while True:
            yield list(word)
            i = length - 1
            while i >= 0 and word[i] == alphabet_size - 1:
                word[i] = 0
                i -= 1
            if i < 0:
                break
            word[i] += 1
