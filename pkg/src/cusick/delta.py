"""Correlation densities ``delta(k, t)`` and the Cusick densities ``c_t``.

``delta(k, t)`` is the density of ``{n : s(n + t) - s(n) = k}``.  Its
support is unbounded below, with the values halving at each step down, so
it is stored as a finite window on top of a geometric tail.

Two independent routes are provided:

* :func:`delta_dist` runs the digit recurrence directly on tailed
  distributions, starting from ``delta(k, 1) = 2**(k-2)`` for ``k <= 1``;
* :func:`delta_from_phi` convolves ``phi(., t)`` with ``delta(., 1)``::

      delta(k, t) = sum_{l >= 0} phi(k - 1 + l, t) * 2**(-l-1)

Summing the second form over ``k >= 0`` gives the closed form used for
``c_t``::

      c_t = sum_{j >= -1} phi(j, t) * (1 - 2**(-j-2))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .bitword import reflect
from .dyadic import Dyadic, ONE, ZERO
from .spectrum import Spectrum, phi

__all__ = [
    "TailedDistribution",
    "c",
    "c_from_spectrum",
    "delta_dist",
    "delta_from_phi",
    "pair_display",
    "pair_sum",
    "sufficient_condition",
]


@dataclass(frozen=True)
class TailedDistribution:
    """Values ``window[k]`` for ``k > tail_start`` and
    ``tail_value * 2**(k - tail_start)`` for ``k <= tail_start``.

    ``tail_start`` is always the largest offset at which the geometric law
    already holds, which makes the representation canonical.
    """

    tail_start: int
    tail_value: Dyadic
    window: Mapping[int, Dyadic] = field(default_factory=dict)

    def __getitem__(self, k: int) -> Dyadic:
        if k <= self.tail_start:
            return self.tail_value.scale_pow2(k - self.tail_start)
        return self.window.get(k, ZERO)

    def top(self) -> int:
        return max(self.window) if self.window else self.tail_start

    def shift(self, d: int) -> "TailedDistribution":
        return TailedDistribution(
            self.tail_start + d, self.tail_value, {k + d: v for k, v in self.window.items()}
        )

    def mass(self) -> Dyadic:
        return sum(self.window.values(), ZERO) + self.tail_value.scale_pow2(1)

    def mass_at_least(self, k0: int) -> Dyadic:
        """``sum_{k >= k0} self[k]``."""
        total = sum((v for k, v in self.window.items() if k >= k0), ZERO)
        if k0 <= self.tail_start:
            # tail_value * (2 - 2**(k0 - tail_start))
            total += self.tail_value.scale_pow2(1) - self.tail_value.scale_pow2(k0 - self.tail_start)
        return total

    def values(self, lo: int, hi: int) -> dict[int, Dyadic]:
        return {k: self[k] for k in range(lo, hi + 1)}


def _canonical(tail_start: int, tail_value: Dyadic, window: dict[int, Dyadic]) -> TailedDistribution:
    window = {k: v for k, v in sorted(window.items()) if v}
    while window.get(tail_start + 1) == tail_value.scale_pow2(1):
        tail_start += 1
        tail_value = window.pop(tail_start)
    return TailedDistribution(tail_start, tail_value, window)


def _mix(lo: TailedDistribution, hi: TailedDistribution) -> TailedDistribution:
    """``k -> lo[k - 1] / 2 + hi[k + 1] / 2``."""
    a = lo.shift(1)
    b = hi.shift(-1)
    start = min(a.tail_start, b.tail_start)
    top = max(a.top(), b.top())
    window = {k: (a[k] + b[k]).halve() for k in range(start + 1, top + 1)}
    return _canonical(start, (a[start] + b[start]).halve(), window)


DELTA_ONE = TailedDistribution(1, Dyadic(1, 1))


def delta_dist(t: int) -> TailedDistribution:
    """Exact ``delta(., t)`` via the digit recurrence, most significant digit first."""
    if t < 1:
        raise ValueError(f"delta recurrence starts at t = 1, got {t}")
    lo = hi = DELTA_ONE
    for j in range(t.bit_length() - 2, -1, -1):
        mixed = _mix(lo, hi)
        if (t >> j) & 1:
            lo = mixed
        else:
            hi = mixed
    return lo


def delta_from_phi(t: int, k: int, spectrum: Optional[Spectrum] = None) -> Dyadic:
    """``delta(k, t)`` from the convolution of ``phi(., t)`` with ``delta(., 1)``."""
    if t < 1:
        raise ValueError(f"delta is computed from phi only for t >= 1, got {t}")
    s = spectrum if spectrum is not None else phi(t)
    total = ZERO
    for j, v in s.items():
        if j >= k - 1:
            total += v.scale_pow2(k - j - 2)
    return total


def c_from_spectrum(s: Spectrum) -> Dyadic:
    total = ZERO
    for j, v in s.items():
        if j >= -1:
            total += v - v.scale_pow2(-j - 2)
    return total


def c(t: int) -> Dyadic:
    """Exact density of ``{n : s(n + t) >= s(n)}``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return ONE
    return c_from_spectrum(phi(t))


_W0 = Dyadic(3, 1)
_W1 = Dyadic(11, 3)


def pair_display(s: Spectrum) -> Dyadic:
    """``c_t + c_t'`` written in terms of ``phi(., t)`` alone.

    Weights are 3/2 at 0, 11/8 at +-1 and ``1 - 2**(-|l|-2)`` elsewhere.
    """
    total = ZERO
    for k, v in s.items():
        a = abs(k)
        if a == 0:
            total += v * _W0
        elif a == 1:
            total += v * _W1
        else:
            total += v - v.scale_pow2(-a - 2)
    return total


def pair_sum(t: int, spectrum: Optional[Spectrum] = None) -> tuple[Dyadic, Dyadic, Dyadic]:
    """``(c_t, c_t', c_t + c_t')``.

    ``c_t'`` is computed from its own spectrum, and the sum is checked
    against :func:`pair_display` evaluated on ``phi(., t)``; a mismatch
    raises :class:`ArithmeticError`.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    s = spectrum if spectrum is not None else phi(t)
    ct = c_from_spectrum(s)
    ctp = c_from_spectrum(phi(reflect(t)))
    total = ct + ctp
    if total != pair_display(s):
        raise ArithmeticError(f"pair sum of t={t} disagrees with the phi-weighted form")
    return ct, ctp, total


def sufficient_condition(t_or_spectrum) -> tuple[bool, Optional[int]]:
    """Whether ``phi(-1) + phi(0) + phi(1) >= phi(k)`` for every ``|k| >= 2``.

    Returns ``(holds, witness)`` where ``witness`` is the first offending
    ``k`` in ascending order, or ``None``.
    """
    s = t_or_spectrum if isinstance(t_or_spectrum, Spectrum) else phi(t_or_spectrum)
    centre = s[-1] + s[0] + s[1]
    for k, v in s.items():
        if abs(k) >= 2 and v > centre:
            return False, k
    return True, None
