"""Dense polynomials over GF(2).

A polynomial is stored as a non-negative Python integer whose bit ``i`` is
the coefficient of ``x**i``.  Python integers are already word-packed and of
arbitrary length, so the same type serves 27-bit segments and 465-bit
products alike.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Gf2Poly",
    "HexParseError",
    "add",
    "clmul",
    "extract",
    "format_hex",
    "mul_schoolbook",
    "op_counts_schoolbook",
    "parse_hex",
    "shift_left",
]


class HexParseError(ValueError):
    """Raised when a hex polynomial literal is malformed."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"{reason} at position {position} in {text!r}")


def clmul(a: int, b: int) -> int:
    """Carry-less product of two integers (shift-and-XOR over set bits)."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    c = 0
    while b:
        low = b & -b
        c ^= a << (low.bit_length() - 1)
        b ^= low
    return c


@dataclass(frozen=True, eq=False, slots=True)
class Gf2Poly:
    """Polynomial over GF(2) with a declared nominal bit width.

    Equality and hashing only look at the coefficients; ``width`` is
    bookkeeping for callers that care about fixed register sizes.
    """

    value: int = 0
    width: int = -1

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("polynomial value must be non-negative")
        bl = self.value.bit_length()
        if self.width < 0:
            object.__setattr__(self, "width", bl)
        elif self.width < bl:
            raise ValueError(f"value needs {bl} bits but width is {self.width}")

    @classmethod
    def from_bits(cls, bits: Iterable[int], width: int | None = None) -> Gf2Poly:
        bits = list(bits)
        value = 0
        for i, bit in enumerate(bits):
            if bit not in (0, 1):
                raise ValueError(f"coefficient {i} is {bit!r}, not a bit")
            value |= bit << i
        return cls(value, len(bits) if width is None else width)

    @classmethod
    def monomial(cls, k: int) -> Gf2Poly:
        return cls(1 << k)

    @property
    def degree(self) -> int:
        return self.value.bit_length() - 1

    @property
    def bits(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.width)]

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Gf2Poly):
            return self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"Gf2Poly({format_hex(self)}, width={self.width})"

    def __xor__(self, other: Gf2Poly) -> Gf2Poly:
        return add(self, other)

    __add__ = __xor__
    __sub__ = __xor__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        return mul_schoolbook(self, other)

    def __lshift__(self, k: int) -> Gf2Poly:
        return shift_left(self, k)

    def resized(self, width: int) -> Gf2Poly:
        return Gf2Poly(self.value, width)


def add(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(a.value ^ b.value, max(a.width, b.width))


def mul_schoolbook(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Schoolbook product; the reference every other multiplier is checked against.

    The result width is ``width(a) + width(b) - 1``, i.e. a ``2n - 1`` bit
    product for two ``n`` bit operands.
    """
    width = a.width + b.width - 1 if a.width and b.width else 0
    return Gf2Poly(clmul(a.value, b.value), width)


def op_counts_schoolbook(n: int) -> tuple[int, int]:
    """Bit multiplications and XORs used by the schoolbook method for n-bit operands."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return n * n, (n - 1) * (n - 1)


def shift_left(a: Gf2Poly, k: int) -> Gf2Poly:
    """Multiply by ``x**k``."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    return Gf2Poly(a.value << k, a.width + k)


def extract(a: Gf2Poly, hi: int, lo: int) -> Gf2Poly:
    """Coefficients ``lo..hi`` (inclusive), re-based at ``x**0``."""
    if not hi >= lo >= 0:
        raise ValueError(f"need hi >= lo >= 0, got hi={hi}, lo={lo}")
    width = hi - lo + 1
    return Gf2Poly((a.value >> lo) & ((1 << width) - 1), width)


_HEX_DIGIT = re.compile(r"[0-9a-fA-F]")


def parse_hex(text: str) -> Gf2Poly:
    """Parse a big-endian ``0x...`` literal; the last digit holds x^3..x^0."""
    if not text.startswith(("0x", "0X")):
        pos = 0 if not text.startswith("0") else 1
        raise HexParseError(text, pos, "expected '0x' prefix")
    if len(text) == 2:
        raise HexParseError(text, 2, "missing hex digits")
    for pos in range(2, len(text)):
        if not _HEX_DIGIT.fullmatch(text[pos]):
            raise HexParseError(text, pos, f"invalid hex digit {text[pos]!r}")
    return Gf2Poly(int(text[2:], 16))


def format_hex(p: Gf2Poly) -> str:
    return f"0x{p.value:x}"
