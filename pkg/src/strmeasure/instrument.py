"""Auxiliary-space metering and streaming-access counters.

Space is measured in machine words of live auxiliary state that an algorithm
self-reports (frontiers, DP rows, recursion bookkeeping).  Read-only inputs
and output buffers are charged zero; random access to inputs is free, as in
the model the bounds are stated for.
"""

from __future__ import annotations

from typing import Optional, Sequence


class MeterError(RuntimeError):
    """Space accounting went negative: a release exceeded the live balance."""


class SpaceMeter:
    """Tracks live and peak auxiliary words across one worker."""

    __slots__ = ("live_words", "peak_words", "max_depth")

    def __init__(self):
        self.live_words = 0
        self.peak_words = 0
        self.max_depth = 0

    def charge(self, words: int) -> None:
        if words < 0:
            raise MeterError(f"cannot charge negative words: {words}")
        self.live_words += words
        if self.live_words > self.peak_words:
            self.peak_words = self.live_words

    def release(self, words: int) -> None:
        if words < 0:
            raise MeterError(f"cannot release negative words: {words}")
        if words > self.live_words:
            raise MeterError(
                f"release of {words} exceeds live balance {self.live_words}"
            )
        self.live_words -= words

    def peak(self) -> int:
        return self.peak_words

    def note_depth(self, depth: int) -> None:
        if depth > self.max_depth:
            self.max_depth = depth

    def section(self, words: int) -> "_MeterSection":
        return _MeterSection(self, words)


class _MeterSection:
    """Context manager charging a fixed block of words for its duration."""

    __slots__ = ("meter", "words")

    def __init__(self, meter: Optional[SpaceMeter], words: int):
        self.meter = meter
        self.words = words

    def __enter__(self):
        if self.meter is not None:
            self.meter.charge(self.words)
        return self

    def __exit__(self, *exc):
        if self.meter is not None:
            self.meter.release(self.words)
        return False


def null_meter() -> SpaceMeter:
    return SpaceMeter()


class StreamTape:
    """One-pass cursor over x plus a random-access, probe-counted handle on y.

    ``passes_started`` counts passes over x: it becomes 1 on the first read
    and increments each time a read follows an explicit rewind.
    """

    __slots__ = ("_x", "_y", "cursor", "passes_started", "y_probes", "_fresh")

    def __init__(self, x: Sequence[int], y: Sequence[int]):
        self._x = list(x)
        self._y = list(y)
        self.cursor = 1
        self.passes_started = 0
        self.y_probes = 0
        self._fresh = True

    @property
    def x_length(self) -> int:
        return len(self._x)

    @property
    def y_length(self) -> int:
        return len(self._y)

    def next(self) -> Optional[int]:
        """Return the next unread token of x, or None at end of stream."""
        if self._fresh:
            self.passes_started += 1
            self._fresh = False
        if self.cursor > len(self._x):
            return None
        v = self._x[self.cursor - 1]
        self.cursor += 1
        return v

    def next_block(self, count: int) -> list[int]:
        """Read up to ``count`` tokens in stream order (bulk next())."""
        if self._fresh and count > 0 and self.cursor <= len(self._x):
            self.passes_started += 1
            self._fresh = False
        lo = self.cursor - 1
        hi = min(lo + count, len(self._x))
        self.cursor = hi + 1
        return self._x[lo:hi]

    def rewind(self) -> None:
        self.cursor = 1
        self._fresh = True

    def probe_y(self, i: int) -> int:
        """Random access y[i] (1-based); every probe is counted."""
        if i < 1 or i > len(self._y):
            raise IndexError(f"y index {i} out of range [1, {len(self._y)}]")
        self.y_probes += 1
        return self._y[i - 1]

    def probe_y_slice(self, lo: int, hi: int) -> list[int]:
        """Bulk probe of y[lo..hi] (1-based inclusive); counts hi-lo+1 probes."""
        if lo < 1 or hi > len(self._y) or hi < lo - 1:
            raise IndexError(f"y slice [{lo},{hi}] out of range")
        self.y_probes += hi - lo + 1
        return self._y[lo - 1 : hi]

    def y_tokens(self):
        """Unmetered handle on y for algorithms that account probes in bulk."""
        return self._y
