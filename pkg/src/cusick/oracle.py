"""Brute-force counting of ``s(n + t) - s(n)`` over ``0 <= n < N``.

This is ground truth by enumeration only; it shares no code with the
recurrences.  Counting is vectorized with numpy popcounts on chunks of
``n``.  ``t`` may be arbitrarily large: it is split as ``hi * 2**48 + lo``
and the carry out of the low part is tracked per element.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

__all__ = ["DigitSumTable", "Histogram", "histogram", "oracle_ct", "s"]

_SPLIT = 48
_MAX_LIMIT = 1 << 47
_OFFSET = 64
CHUNK = 1 << 22


def s(n: int) -> int:
    """Binary sum of digits."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n.bit_count()


@dataclass
class Histogram:
    """``counts[k]`` = number of ``n < limit`` with ``s(n + t) - s(n) = k``."""

    t: int
    limit: int
    counts: dict[int, int] = field(default_factory=dict)

    def fraction(self, k: int) -> float:
        return self.counts.get(k, 0) / self.limit

    def count_at_least(self, k0: int) -> int:
        return sum(v for k, v in self.counts.items() if k >= k0)

    def ge_zero(self) -> Fraction:
        return Fraction(self.count_at_least(0), self.limit)


def _chunk_counts(t: int, start: int, stop: int) -> Counter:
    hi, lo = t >> _SPLIT, t & ((1 << _SPLIT) - 1)
    s_hi, s_hi1 = s(hi), s(hi + 1)
    n = np.arange(start, stop, dtype=np.uint64)
    v = n + np.uint64(lo)
    carry = (v >> np.uint64(_SPLIT)).astype(bool)
    low = np.bitwise_count(v & np.uint64((1 << _SPLIT) - 1)).astype(np.int16)
    d = low - np.bitwise_count(n).astype(np.int16)
    d += np.where(carry, s_hi1, s_hi).astype(np.int16)
    # d >= -47 since n < 2**47
    binc = np.bincount((d + _OFFSET).astype(np.intp))
    return Counter({int(i) - _OFFSET: int(c) for i, c in enumerate(binc) if c})


def _chunks(limit: int, size: int) -> Iterator[tuple[int, int]]:
    for a in range(0, limit, size):
        yield a, min(a + size, limit)


def histogram(t: int, limit: int, jobs: int = 1, chunk: int = CHUNK) -> Histogram:
    """Histogram of ``s(n + t) - s(n)`` for ``0 <= n < limit``.

    The range is split into chunks; with ``jobs > 1`` chunks are counted in
    worker processes.  Per-chunk counts are merged by addition, so the
    result does not depend on the partition.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if not 1 <= limit <= _MAX_LIMIT:
        raise ValueError(f"limit must lie in [1, 2**47], got {limit}")
    total: Counter = Counter()
    spans = list(_chunks(limit, chunk))
    if jobs > 1 and len(spans) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for part in ex.map(_chunk_counts, [t] * len(spans), *zip(*spans)):
                total.update(part)
    else:
        for a, b in spans:
            total.update(_chunk_counts(t, a, b))
    return Histogram(t, limit, dict(sorted(total.items())))


def oracle_ct(t: int, limit: int, jobs: int = 1) -> float:
    """Fraction of ``n < limit`` with ``s(n + t) >= s(n)``."""
    return float(histogram(t, limit, jobs).ge_zero())


class DigitSumTable:
    """Precomputed ``s(n)`` for ``n < size``, for many small shifts at once.

    >>> table = DigitSumTable(1 << 10)
    >>> table.histogram(1, 4).counts
    {-1: 1, 0: 1, 1: 2}
    """

    def __init__(self, size: int):
        self.size = size
        self.sums = np.bitwise_count(np.arange(size, dtype=np.uint64)).astype(np.int8)

    def histogram(self, t: int, limit: int) -> Histogram:
        if t < 0 or t + limit > self.size:
            raise ValueError(f"table of size {self.size} cannot serve t={t}, limit={limit}")
        d = self.sums[t:t + limit] - self.sums[:limit]
        binc = np.bincount((d + _OFFSET).astype(np.uint8))
        counts = {int(i) - _OFFSET: int(c) for i, c in enumerate(binc) if c}
        return Histogram(t, limit, counts)

    def histograms(self, ts: Iterable[int], limit: int) -> Iterator[Histogram]:
        for t in ts:
            yield self.histogram(t, limit)
