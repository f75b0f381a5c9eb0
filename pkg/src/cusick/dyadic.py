"""Exact dyadic rationals ``num / 2**exp``.

Every density produced by the digit recurrences has a power-of-two
denominator, so a pair of Python ints is enough to carry them exactly.
"""

from __future__ import annotations

import re
import sys
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["Dyadic", "parse", "render"]

_HASH_MODULUS = sys.hash_info.modulus
_TEXT_RE = re.compile(r"^\s*(-?\d+)\s*/\s*2\^(\d+)\s*$")

Number = Union["Dyadic", int, Fraction]


class Dyadic:
    """Value ``num / 2**exp`` kept in lowest terms.

    Normal form: ``exp == 0`` or ``num`` odd.  In particular zero is
    stored as ``(0, 0)``.

    >>> Dyadic(1, 1) + Dyadic(1, 2)
    Dyadic(3, 2)
    >>> str(Dyadic(11, 4))
    '11/2^4'
    """

    __slots__ = ("num", "exp")

    def __init__(self, num: int = 0, exp: int = 0):
        if exp < 0:
            num <<= -exp
            exp = 0
        if num == 0:
            exp = 0
        elif exp:
            tz = (num & -num).bit_length() - 1
            if tz:
                s = min(tz, exp)
                num >>= s
                exp -= s
        self.num = num
        self.exp = exp

    @classmethod
    def _raw(cls, num: int, exp: int) -> "Dyadic":
        # caller guarantees normal form
        self = object.__new__(cls)
        self.num = num
        self.exp = exp
        return self

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int]) -> "Dyadic":
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Dyadic":
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic._raw(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.exp < b.exp:
            a, b = b, a
        return Dyadic(a.num + (b.num << (a.exp - b.exp)), a.exp)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic._raw(-self.num, self.exp)

    def __pos__(self) -> "Dyadic":
        return self

    def __abs__(self) -> "Dyadic":
        return Dyadic._raw(abs(self.num), self.exp)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Dyadic(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def halve(self) -> "Dyadic":
        if self.num == 0:
            return self
        return Dyadic._raw(self.num, self.exp + 1)

    def scale_pow2(self, k: int) -> "Dyadic":
        """Multiply by ``2**k`` (``k`` may be negative)."""
        return Dyadic(self.num, self.exp - k)

    # comparison -------------------------------------------------------

    def compare(self, other: Number) -> int:
        """Return -1, 0 or 1 as ``self`` is less than, equal to or greater than ``other``."""
        if isinstance(other, Dyadic):
            e = max(self.exp, other.exp)
            lhs = self.num << (e - self.exp)
            rhs = other.num << (e - other.exp)
        elif isinstance(other, int):
            lhs, rhs = self.num, other << self.exp
        elif isinstance(other, Rational):
            lhs = self.num * other.denominator
            rhs = other.numerator << self.exp
        else:
            raise TypeError(f"cannot compare Dyadic with {type(other).__name__}")
        return (lhs > rhs) - (lhs < rhs)

    def _cmp(self, other):
        if isinstance(other, (Dyadic, int, Rational)):
            return self.compare(other)
        return None

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self) -> int:
        # agrees with hash(Fraction) and hash(int) for equal values
        dinv = pow(2, -self.exp, _HASH_MODULUS)
        h = hash(hash(abs(self.num)) * dinv)
        h = h if self.num >= 0 else -h
        return -2 if h == -1 else h

    def __bool__(self) -> bool:
        return self.num != 0

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"

    def __str__(self) -> str:
        return render(self)

    def __reduce__(self):
        return (Dyadic, (self.num, self.exp))

    def to_decimal(self, digits: int = 12) -> str:
        """Decimal string with ``digits`` places, rounding half away from zero."""
        q, r = divmod(abs(self.num) * 10**digits, 1 << self.exp)
        if 2 * r >= (1 << self.exp) and self.exp:
            q += 1
        sign = "-" if self.num < 0 and q else ""
        if digits == 0:
            return f"{sign}{q}"
        s = str(q).rjust(digits + 1, "0")
        return f"{sign}{s[:-digits]}.{s[-digits:]}"


def render(x: Dyadic) -> str:
    """Canonical text form ``num/2^exp``, or ``0``."""
    if x.num == 0:
        return "0"
    return f"{x.num}/2^{x.exp}"


def parse(text: str) -> Dyadic:
    """Inverse of :func:`render`.  Plain integers are accepted too."""
    m = _TEXT_RE.match(text)
    if m:
        num, exp = int(m.group(1)), int(m.group(2))
        value = Dyadic(num, exp)
        return value
    try:
        return Dyadic(int(text.strip()), 0)
    except ValueError:
        raise ValueError(f"not a dyadic literal: {text!r}") from None


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)
