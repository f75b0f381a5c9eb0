"""The simplified correlation array ``phi(k, t)``.

``phi`` obeys the same digit recurrence as the correlation densities but
starts from a point mass::

    phi(., 1)      = point mass at 0
    phi(k, 2t)     = phi(k, t)
    phi(k, 2t + 1) = phi(k - 1, t) / 2 + phi(k + 1, t + 1) / 2

Only the pair ``(phi(., u), phi(., u + 1))`` is needed to extend ``u`` by one
binary digit, so :func:`phi` walks the digits of ``t`` from the top and
keeps a single pair.  Each member of the pair is stored as one packed
integer whose fixed-width fields hold the numerators over a common power of
two; shifting a distribution by one position is a shift by one field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping

from .dyadic import Dyadic, ZERO

__all__ = ["Spectrum", "argmax_set", "phi", "phi_naive", "pack_numerators"]

NAIVE_LIMIT = 1 << 24


@dataclass(frozen=True)
class Spectrum:
    """Finite map ``k -> phi(k, t)`` with zeros suppressed, keys ascending."""

    t: int
    entries: Mapping[int, Dyadic] = field(repr=False)

    def __getitem__(self, k: int) -> Dyadic:
        return self.entries.get(k, ZERO)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def support(self) -> tuple[int, int]:
        keys = list(self.entries)
        return keys[0], keys[-1]

    def total(self) -> Dyadic:
        return sum(self.entries.values(), ZERO)

    def mirrored(self) -> "Spectrum":
        """The spectrum ``k -> self[-k]`` (tagged with the reflected ``t`` by the caller)."""
        return Spectrum(self.t, {-k: self.entries[k] for k in reversed(self.entries)})

    def to_records(self, digits: int = 12) -> list[list]:
        return [[k, str(v), v.to_decimal(digits)] for k, v in self.entries.items()]


def pack_numerators(t: int) -> tuple[int, int, int, int]:
    """Run the digit pair iteration for ``t`` on packed integers.

    Returns ``(packed, width, base, exp)``: field ``i`` of ``packed``
    (``width`` bits each, little end first) holds the numerator of
    ``phi(i - base, t)`` over ``2**exp``.
    """
    if t < 1:
        raise ValueError(f"phi is defined for t >= 1, got {t}")
    steps = t.bit_length() - 1
    # every numerator is at most 2**steps
    width = 8 * ((steps + 8) // 8)
    lo = hi = 1
    keep = width + 1
    for j in range(steps - 1, -1, -1):
        # re-based by one field so that only left shifts occur:
        # mixed[k] = lo[k - 1] + hi[k + 1]
        mixed = (lo << (2 * width)) + hi
        if (t >> j) & 1:
            lo, hi = mixed, hi << keep
        else:
            lo, hi = lo << keep, mixed
    return lo, width, steps, steps


def _unpack(packed: int, width: int, base: int, exp: int) -> dict[int, Dyadic]:
    nbytes = width // 8
    nfields = -(-packed.bit_length() // width)
    raw = packed.to_bytes(nfields * nbytes, "little")
    out: dict[int, Dyadic] = {}
    for i in range(nfields):
        v = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little")
        if v:
            out[i - base] = Dyadic(v, exp)
    return out


def phi(t: int) -> Spectrum:
    """Exact ``phi(., t)`` for ``t >= 1``."""
    return Spectrum(t, _unpack(*pack_numerators(t)))


def phi_naive(t: int, k: int) -> Dyadic:
    """``phi(k, t)`` by memoized top-down recursion; an independent check on :func:`phi`."""
    if t < 1:
        raise ValueError(f"phi is defined for t >= 1, got {t}")
    if t >= NAIVE_LIMIT:
        raise ValueError("phi_naive is limited to t < 2**24")
    return _phi_rec(t, k)


@lru_cache(maxsize=1 << 20)
def _phi_rec(t: int, k: int) -> Dyadic:
    if t == 1:
        return Dyadic(1) if k == 0 else ZERO
    if t % 2 == 0:
        return _phi_rec(t // 2, k)
    u = t // 2
    return (_phi_rec(u, k - 1) + _phi_rec(u + 1, k + 1)).halve()


def argmax_set(s: Spectrum) -> set[int]:
    """All offsets where the spectrum attains its maximum."""
    if not s.entries:
        return set()
    top = max(s.entries.values())
    return {k for k, v in s.entries.items() if v == top}

