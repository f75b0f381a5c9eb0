"""Characteristic function of ``phi(., t)`` and residue-class masses.

``omega_t(theta) = sum_k phi(k, t) e(k theta)`` with ``e(x) = exp(2 pi i x)``.
With the row vector ``(omega_u, omega_{u+1})`` the digit recurrence becomes a
product of two 2x2 matrices::

    A0 = [[1,        0       ],        A1 = [[e(th)/2, e(-th)/2],
          [e(th)/2,  e(-th)/2]]              [0,       1       ]]

    omega_t = (1 0) A_{eps_0} ... A_{eps_{nu-1}} (1 1)^T

Angles are rational, ``theta = j/m``, so that ``||theta||`` (distance to the
nearest integer) is exact.  All complex arithmetic is double precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .bitword import count_blocks
from .dyadic import ZERO
from .spectrum import Spectrum, phi

__all__ = [
    "NormCheck",
    "RationalAngle",
    "ResidueMass",
    "delange_bound",
    "omega_block_bound_check",
    "omega_direct",
    "omega_grid",
    "omega_matrix",
    "psi_direct",
    "psi_estimate_check",
    "psi_fourier",
    "row_sum_norm",
    "transfer_matrix",
    "triple_norm_bound_check",
]

BOUND_SLACK = 1e-12
COMPARE_TOL = 1e-9


@dataclass(frozen=True)
class RationalAngle:
    """``theta = j/m`` reduced, with ``0 <= j < m``."""

    j: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("denominator must be positive")
        j, m = self.j % self.m, self.m
        g = math.gcd(j, m)
        object.__setattr__(self, "j", j // g)
        object.__setattr__(self, "m", m // g)

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        f = Fraction(text.strip())
        return cls(f.numerator, f.denominator)

    def __neg__(self) -> "RationalAngle":
        return RationalAngle(-self.j, self.m)

    def __str__(self) -> str:
        return f"{self.j}/{self.m}"

    def distance(self) -> Fraction:
        """``||theta||``, the distance to the nearest integer."""
        return Fraction(min(self.j, self.m - self.j), self.m)

    def e(self, k: int = 1) -> complex:
        """``e(k * theta)``; the argument is reduced mod 1 exactly first."""
        return cmath.exp(2j * math.pi * ((k * self.j) % self.m) / self.m)


def transfer_matrix(d: int, theta: RationalAngle) -> np.ndarray:
    e, ebar = theta.e(1), theta.e(-1)
    if d == 0:
        return np.array([[1, 0], [e / 2, ebar / 2]], dtype=complex)
    if d == 1:
        return np.array([[e / 2, ebar / 2], [0, 1]], dtype=complex)
    raise ValueError(f"digit must be 0 or 1, got {d}")


def row_sum_norm(a: np.ndarray) -> float:
    return float(np.abs(a).sum(axis=1).max())


def omega_matrix(t: int, theta: RationalAngle) -> complex:
    """``omega_t(theta)`` from the transfer-matrix product, lowest digit first."""
    if t < 1:
        raise ValueError(f"omega is defined for t >= 1, got {t}")
    e, ebar = theta.e(1), theta.e(-1)
    he, hbar = e / 2, ebar / 2
    # row vector (1 0), multiplied on the right by A_{eps_0}, A_{eps_1}, ...
    v0, v1 = 1 + 0j, 0j
    for j in range(t.bit_length() - 1):
        if (t >> j) & 1:
            v0, v1 = v0 * he, v0 * hbar + v1
        else:
            v0, v1 = v0 + v1 * he, v1 * hbar
    return v0 + v1


def omega_grid(t: int, m: int) -> np.ndarray:
    """``omega_t(j/m)`` for ``j = 0..m-1`` as a complex array."""
    if t < 1:
        raise ValueError(f"omega is defined for t >= 1, got {t}")
    if m < 1:
        raise ValueError("m must be >= 1")
    ang = 2 * np.pi * np.arange(m) / m
    he, hbar = np.exp(1j * ang) / 2, np.exp(-1j * ang) / 2
    v0 = np.ones(m, dtype=complex)
    v1 = np.zeros(m, dtype=complex)
    for j in range(t.bit_length() - 1):
        if (t >> j) & 1:
            v0, v1 = v0 * he, v0 * hbar + v1
        else:
            v0, v1 = v0 + v1 * he, v1 * hbar
    return v0 + v1


def omega_direct(t: int, theta: RationalAngle, spectrum: Optional[Spectrum] = None) -> complex:
    """``sum_k phi(k, t) e(k theta)`` from the exact spectrum."""
    if t < 1:
        raise ValueError(f"omega is defined for t >= 1, got {t}")
    s = spectrum if spectrum is not None else phi(t)
    return sum(float(v) * theta.e(k) for k, v in s.items())


class NormCheck(NamedTuple):
    value: float
    bound: float
    ok: bool


_PATTERNS = {"100": (1, 0, 0), "101": (1, 0, 1)}


def triple_norm_bound_check(pattern: str, theta: RationalAngle) -> NormCheck:
    """Row-sum norm of ``A1 A0 A0`` (pattern ``100``) or ``A1 A0 A1`` (``101``)
    against ``1 - ||theta||**2 / 2``."""
    try:
        ds = _PATTERNS[pattern]
    except KeyError:
        raise ValueError(f"pattern must be '100' or '101', got {pattern!r}") from None
    prod = transfer_matrix(ds[0], theta) @ transfer_matrix(ds[1], theta) @ transfer_matrix(ds[2], theta)
    norm = row_sum_norm(prod)
    bound = 1 - float(theta.distance()) ** 2 / 2
    return NormCheck(norm, bound, norm <= bound + BOUND_SLACK)


def delange_bound(z: Sequence[complex], q: int) -> float:
    """Upper bound ``1 - max_j (1 - Re z_j) / (2q)`` for ``|(1 + z_1 + ... + z_{q-1}) / q|``."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if len(z) != q - 1:
        raise ValueError(f"expected {q - 1} values, got {len(z)}")
    for w in z:
        if abs(w) > 1 + BOUND_SLACK:
            raise ValueError(f"|z| must be <= 1, got {abs(w)}")
    worst = max((1 - w.real for w in z), default=0.0)
    return 1 - worst / (2 * q)


def omega_block_bound_check(t: int, theta: RationalAngle) -> NormCheck:
    """``|omega_t(theta)| <= (1 - ||theta||**2 / 2)**M`` with ``M = (blocks - 1) // 2``."""
    M = max(count_blocks(t) - 1, 0) // 2
    value = abs(omega_matrix(t, theta))
    bound = (1 - float(theta.distance()) ** 2 / 2) ** M
    return NormCheck(value, bound, value <= bound + COMPARE_TOL)


@dataclass(frozen=True)
class ResidueMass:
    """Mass of ``phi(., t)`` on each residue class ``b mod m``."""

    m: int
    masses: tuple

    def __getitem__(self, b: int):
        return self.masses[b]


def psi_direct(t: int, m: int, spectrum: Optional[Spectrum] = None) -> ResidueMass:
    """Exact residue masses summed from the spectrum."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    s = spectrum if spectrum is not None else phi(t)
    out = [ZERO] * m
    for k, v in s.items():
        out[k % m] += v
    return ResidueMass(m, tuple(out))


def psi_fourier(t: int, m: int) -> ResidueMass:
    """Residue masses by discrete Fourier inversion of ``omega_t(j/m)``."""
    w = omega_grid(t, m)
    b = np.arange(m)
    # psi(b) = (1/m) sum_j e(-jb/m) omega(j/m)
    kernel = np.exp(-2j * np.pi * (np.outer(b, np.arange(m)) % m) / m)
    vals = (kernel @ w).real / m
    return ResidueMass(m, tuple(float(x) for x in vals))


def psi_estimate_check(t: int, m: int) -> bool:
    """``|psi(b, m, t) - 1/m| <= exp(-M / (2 m**2))`` for every residue ``b``."""
    M = max(count_blocks(t) - 1, 0) // 2
    bound = math.exp(-M / (2 * m * m)) + COMPARE_TOL
    psi = psi_direct(t, m)
    return all(float(abs(p.as_fraction() - Fraction(1, m))) <= bound for p in psi.masses)
