"""Binary-expansion helpers for nonnegative integers.

Digits are indexed least-significant first: ``digit(t, 0)`` is the parity
of ``t`` and ``digit(t, nu)`` is the leading 1, where ``nu = t.bit_length() - 1``.
"""

from __future__ import annotations

__all__ = [
    "alternating_word",
    "count_blocks",
    "digit",
    "digits",
    "lambda_of",
    "parse_int",
    "pattern_positions",
    "reflect",
]


def _require_positive(t: int, what: str = "t") -> None:
    if t < 1:
        raise ValueError(f"{what} must be >= 1, got {t}")


def parse_int(text: str) -> int:
    """Parse a decimal or ``0b``-prefixed binary literal (underscores allowed)."""
    s = text.strip().replace("_", "")
    if s.lower().startswith("0b"):
        body = s[2:]
        if not body or set(body) - {"0", "1"}:
            raise ValueError(f"malformed binary literal: {text!r}")
        return int(body, 2)
    if not s.isdigit():
        raise ValueError(f"malformed integer: {text!r}")
    return int(s)


def digit(t: int, j: int) -> int:
    return (t >> j) & 1


def digits(t: int) -> list[int]:
    """Binary digits of ``t``, least significant first (empty for 0)."""
    return [(t >> j) & 1 for j in range(t.bit_length())]


def lambda_of(t: int) -> int:
    """The exponent with ``2**lambda <= t < 2**(lambda+1)``."""
    _require_positive(t)
    return t.bit_length() - 1


def reflect(t: int) -> int:
    """``3 * 2**lambda - t``.

    Swaps the digits strictly between the leading 1 and the lowest 1 of
    ``t``.  For ``t = 2**lam`` the result is ``2**(lam+1)``, so the map is
    only an involution away from powers of two.
    """
    _require_positive(t)
    return 3 * (1 << (t.bit_length() - 1)) - t


def _block_tops(t: int) -> int:
    # bit j set iff digit j is 1 and digit j+1 is 0: the top of a block of 1s
    return t & ~(t >> 1)


def count_blocks(t: int) -> int:
    """Number of maximal runs of 1-digits."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return _block_tops(t).bit_count()


def pattern_positions(t: int) -> list[int]:
    """Positions ``j`` carrying the digit pattern 1,0,0 or 1,0,1 at ``j, j+1, j+2``.

    Returned positions lie in ``0..nu-3`` and are pairwise at distance at
    least 3.  A word with ``2M+1`` blocks yields at least ``M`` positions.
    """
    _require_positive(t)
    nu = t.bit_length() - 1
    tops = _block_tops(t) & ~(1 << nu)  # drop the leading block
    chosen: list[int] = []
    last = None
    while tops:
        j = (tops & -tops).bit_length() - 1
        tops &= tops - 1
        if j > nu - 3:
            break
        if last is None or j - last >= 3:
            chosen.append(j)
            last = j
    return chosen


def alternating_word(blocks: int) -> int:
    """``sum(4**i for i < blocks)``: binary 1010...101 with exactly ``blocks`` blocks."""
    if blocks < 0:
        raise ValueError("blocks must be nonnegative")
    return ((1 << (2 * blocks)) - 1) // 3
