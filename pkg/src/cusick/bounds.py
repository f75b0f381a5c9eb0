"""Weights, the residue-class lower bound for ``c_t + c_t'`` and the
``epsilon -> (N, m, M, C)`` parameter chain.

For every modulus ``m``::

    c_t + c_t' >= sum_b psi(b, m, t) * min_{l = b mod m} a_l,
    a_l = 1 - 2**(-|l| - 2)

and once ``t`` has ``2M + 1`` blocks of ones this is at least::

    1 - 2**(-N-2) - 2N/m - m * exp(-M / (2 m**2))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Union

import mpmath

from .bitword import count_blocks
from .delta import pair_sum
from .dyadic import Dyadic, ZERO
from .fourier import psi_direct
from .spectrum import phi

__all__ = [
    "BoundParams",
    "TheoremReport",
    "a_tilde",
    "a_weight",
    "mean_weight_lower_bound",
    "min_weight",
    "min_weight_brute",
    "pair_lower_bound_via_residues",
    "params_for",
    "theorem_lower_bound",
    "verify_main_theorem",
]

EpsilonLike = Union[float, str, Fraction, Decimal]

_PREC_DPS = 60


def a_weight(l: int) -> Dyadic:
    return 1 - Dyadic(1, abs(l) + 2)


def a_tilde(l: int) -> Dyadic:
    a = abs(l)
    if a == 0:
        return Dyadic(3, 1)
    if a == 1:
        return Dyadic(11, 3)
    return a_weight(l)


def min_weight(b: int, m: int) -> Dyadic:
    """``min a_l`` over ``l = b (mod m)``: the class member closest to 0 wins."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 <= b < m:
        raise ValueError(f"residue {b} out of range for modulus {m}")
    if 2 * b < m:
        return 1 - Dyadic(1, b + 2)
    return 1 - Dyadic(1, m - b + 2)


def min_weight_brute(b: int, m: int, reach: int = 4) -> Dyadic:
    """Minimum of ``a_l`` over ``l = b (mod m)`` with ``|l| <= reach * m``, by enumeration."""
    return min(a_weight(l) for l in range(-reach * m, reach * m + 1) if (l - b) % m == 0)


def pair_lower_bound_via_residues(t: int, m: int, spectrum=None) -> Dyadic:
    """Certified lower bound ``sum_b psi(b, m, t) * min_weight(b, m)`` for ``c_t + c_t'``."""
    psi = psi_direct(t, m, spectrum)
    total = ZERO
    for b, mass in enumerate(psi.masses):
        if mass:
            total += mass * min_weight(b, m)
    return total


def mean_weight_lower_bound(m: int, N: int) -> Dyadic:
    """``m * (1 - 2**(-N-2)) - 2N``, a lower bound for ``sum_b min_weight(b, m)``."""
    if N < 1 or N > m:
        raise ValueError(f"need 1 <= N <= m, got N={N}, m={m}")
    return m * (1 - Dyadic(1, N + 2)) - 2 * N


def _as_fraction(epsilon: EpsilonLike) -> Fraction:
    # floats are read through their shortest repr, so 0.6 means 3/5
    if isinstance(epsilon, float):
        return Fraction(repr(epsilon))
    if isinstance(epsilon, str):
        return Fraction(epsilon.strip())
    return Fraction(epsilon)


@dataclass(frozen=True)
class BoundParams:
    epsilon: Fraction
    N: int
    m: int
    M: int
    C: int

    def error_terms(self) -> tuple:
        """``(2**(-N-2), 2N/m, m exp(-M/(2 m**2)))``; the last one as an mpmath float."""
        with mpmath.workdps(_PREC_DPS):
            tail = self.m * mpmath.exp(-mpmath.mpf(self.M) / (2 * self.m**2))
        return Fraction(1, 2 ** (self.N + 2)), Fraction(2 * self.N, self.m), tail

    def margins(self) -> tuple[float, float, float]:
        """``epsilon/3`` minus each error term (all must be positive)."""
        third = self.epsilon / 3
        a, b, tail = self.error_terms()
        with mpmath.workdps(_PREC_DPS):
            c = mpmath.mpf(third.numerator) / third.denominator - tail
        return float(third - a), float(third - b), float(c)


def _least_N(eps: Fraction) -> int:
    # floor(-log2 eps) + 1 == least N with 2**-N < eps
    N = 0
    while Fraction(1, 1 << N) >= eps:
        N += 1
    return N


def _least_M(eps: Fraction, m: int) -> int:
    # floor(-2 m^2 ln(eps / (3m))) + 1, i.e. least M with m exp(-M/(2m^2)) < eps/3
    dps = _PREC_DPS
    while True:
        with mpmath.workdps(dps):
            ratio = mpmath.mpf(eps.numerator) / (eps.denominator * 3 * m)
            x = -2 * m * m * mpmath.log(ratio)
            M = int(mpmath.floor(x)) + 1
            if abs(x - mpmath.nint(x)) > mpmath.mpf(10) ** (-(dps // 2)):
                break
        if dps > 400:
            break
        dps *= 2
    with mpmath.workdps(dps):
        third = mpmath.mpf(eps.numerator) / (3 * eps.denominator)
        while not m * mpmath.exp(-mpmath.mpf(M) / (2 * m * m)) < third:
            M += 1
    return M


def params_for(epsilon: EpsilonLike) -> BoundParams:
    eps = _as_fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    N = _least_N(eps)
    m = math.floor(6 * N / eps) + 1
    M = _least_M(eps, m)
    p = BoundParams(eps, N, m, M, 2 * M + 1)
    if not all(x > 0 for x in p.margins()):
        raise ArithmeticError(f"parameter chain for epsilon={epsilon} misses an eps/3 margin")
    return p


def theorem_lower_bound(p: BoundParams) -> float:
    """``1 - 2**(-N-2) - 2N/m - m exp(-M/(2 m**2))``."""
    a, b, tail = p.error_terms()
    with mpmath.workdps(_PREC_DPS):
        return float(1 - mpmath.mpf(a.numerator) / a.denominator
                     - mpmath.mpf(b.numerator) / b.denominator - tail)


@dataclass
class TheoremReport:
    t: int
    params: BoundParams
    blocks: int
    hypothesis_met: bool
    c_t: Dyadic
    c_t_prime: Dyadic
    pair_sum: Dyadic
    residue_bound: Dyadic
    psi_deviation: float
    psi_bound: float
    # None when the block hypothesis is not met
    holds: Optional[bool]

    @property
    def floor_ok(self) -> bool:
        return self.pair_sum >= Fraction(15, 16)

    @property
    def violated(self) -> bool:
        return self.holds is False or not self.floor_ok


def verify_main_theorem(t: int, epsilon: EpsilonLike) -> TheoremReport:
    """Check ``c_t + c_t' > 1 - epsilon`` for ``t`` with at least ``C(epsilon)`` blocks.

    When ``t`` has fewer blocks the exact values are still reported but
    ``holds`` is ``None``.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    p = params_for(epsilon)
    blocks = count_blocks(t)
    s = phi(t)
    ct, ctp, total = pair_sum(t, s)
    psi = psi_direct(t, p.m, s)
    dev = max(abs(x.as_fraction() - Fraction(1, p.m)) for x in psi.masses)
    met = blocks >= p.C
    return TheoremReport(
        t=t,
        params=p,
        blocks=blocks,
        hypothesis_met=met,
        c_t=ct,
        c_t_prime=ctp,
        pair_sum=total,
        residue_bound=pair_lower_bound_via_residues(t, p.m, s),
        psi_deviation=float(dev),
        psi_bound=math.exp(-p.M / (2 * p.m * p.m)),
        holds=(total > 1 - p.epsilon) if met else None,
    )

