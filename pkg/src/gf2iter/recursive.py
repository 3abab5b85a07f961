"""Recursive Karatsuba (2-way) and Bailey (3-way) multipliers.

These model the one-clock combinational multipliers: the split rule is
applied level by level until segments reach ``base_width`` bits, where a
schoolbook product takes over.  The same split rules drive the flat
decompositions built in :mod:`gf2iter.schedule`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .poly import Gf2Poly, clmul

__all__ = [
    "Split",
    "SplitStrategy",
    "PAPER_STRATEGIES",
    "split2",
    "mul_karatsuba2",
    "mul_bailey3",
    "mul_recursive",
    "recursive_mult_count",
]


class Split(enum.Enum):
    K2 = 2
    B3 = 3

    @property
    def products(self) -> int:
        return 3 if self is Split.K2 else 6

    @classmethod
    def parse(cls, token) -> Split:
        if isinstance(token, Split):
            return token
        aliases = {"k2": cls.K2, "karatsuba2": cls.K2, "b3": cls.B3, "bailey3": cls.B3}
        try:
            return aliases[str(token).lower()]
        except KeyError:
            raise ValueError(f"unknown split step {token!r}") from None


@dataclass(frozen=True)
class SplitStrategy:
    """Ordered split steps (outermost first) and the final segment width in bits."""

    steps: tuple[Split, ...]
    base_width: int

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Split.parse(s) for s in self.steps))
        if self.base_width < 1:
            raise ValueError("base_width must be positive")

    @property
    def segments(self) -> int:
        return math.prod(step.value for step in self.steps)

    @property
    def width(self) -> int:
        """Operand width the strategy handles, ``segments * base_width``."""
        return self.segments * self.base_width

    def __str__(self) -> str:
        return "[" + ",".join(s.name for s in self.steps) + f"]x{self.base_width}"


K2, B3 = Split.K2, Split.B3

# The six B-233 multipliers: segment count -> strategy.
PAPER_STRATEGIES = {
    ("karatsuba", 2): SplitStrategy((K2,), 128),
    ("karatsuba", 4): SplitStrategy((K2, K2), 64),
    ("karatsuba", 8): SplitStrategy((K2, K2, K2), 32),
    ("bailey", 3): SplitStrategy((B3,), 81),
    ("bailey", 6): SplitStrategy((K2, B3), 39),
    ("bailey", 9): SplitStrategy((B3, B3), 27),
}


def split2(a: Gf2Poly, n: int) -> tuple[Gf2Poly, Gf2Poly]:
    """Split ``a`` as ``a1 * x**n + a0`` with both halves n bits wide.

    Operands narrower than ``2n`` are implicitly padded with leading zeros.
    """
    if a.degree >= 2 * n:
        raise ValueError(f"operand of degree {a.degree} does not fit in {2 * n} bits")
    mask = (1 << n) - 1
    return Gf2Poly(a.value >> n, n), Gf2Poly(a.value & mask, n)


def _mul(a: int, b: int, steps: Sequence[Split], width: int, leaf) -> int:
    if not steps:
        return leaf(a, b)
    step, rest = steps[0], steps[1:]
    if step is Split.K2:
        m = width // 2
        mask = (1 << m) - 1
        a0, a1 = a & mask, a >> m
        b0, b1 = b & mask, b >> m
        d0 = _mul(a0, b0, rest, m, leaf)
        d1 = _mul(a1, b1, rest, m, leaf)
        d01 = _mul(a0 ^ a1, b0 ^ b1, rest, m, leaf)
        return d0 ^ ((d0 ^ d1 ^ d01) << m) ^ (d1 << 2 * m)

    m = width // 3
    mask = (1 << m) - 1
    a0, a1, a2 = a & mask, (a >> m) & mask, a >> 2 * m
    b0, b1, b2 = b & mask, (b >> m) & mask, b >> 2 * m
    d0 = _mul(a0, b0, rest, m, leaf)
    d1 = _mul(a1, b1, rest, m, leaf)
    d2 = _mul(a2, b2, rest, m, leaf)
    d01 = _mul(a0 ^ a1, b0 ^ b1, rest, m, leaf)
    d02 = _mul(a0 ^ a2, b0 ^ b2, rest, m, leaf)
    d12 = _mul(a1 ^ a2, b1 ^ b2, rest, m, leaf)
    return (
        d0
        ^ ((d0 ^ d1 ^ d01) << m)
        ^ ((d0 ^ d1 ^ d2 ^ d02) << 2 * m)
        ^ ((d1 ^ d2 ^ d12) << 3 * m)
        ^ (d2 << 4 * m)
    )


def mul_recursive(
    a: Gf2Poly,
    b: Gf2Poly,
    strategy: SplitStrategy,
    leaf: Callable[[int, int], int] = clmul,
) -> Gf2Poly:
    """Multiply by applying ``strategy``'s splits, then ``leaf`` on base segments.

    ``leaf`` receives the two base-width segments as integers; pass a
    wrapper to observe how many partial products are formed.
    """
    width = strategy.width
    for name, p in (("a", a), ("b", b)):
        if p.degree >= width:
            raise ValueError(f"operand {name} has degree {p.degree}, strategy {strategy} holds {width} bits")
    value = _mul(a.value, b.value, strategy.steps, width, leaf)
    return Gf2Poly(value, max(a.width + b.width - 1, value.bit_length()))


def _levels(bits: int, base_width: int, radix: int) -> int:
    k, span = 0, base_width
    while span < bits:
        span *= radix
        k += 1
    return k


def mul_karatsuba2(a: Gf2Poly, b: Gf2Poly, base_width: int = 1, leaf=clmul) -> Gf2Poly:
    """Recursive Karatsuba, padding operands to ``base_width * 2**k`` bits."""
    k = _levels(max(a.width, b.width, 1), base_width, 2)
    return mul_recursive(a, b, SplitStrategy((K2,) * k, base_width), leaf)


def mul_bailey3(a: Gf2Poly, b: Gf2Poly, base_width: int = 1, leaf=clmul) -> Gf2Poly:
    """Recursive three-way split with six products per level, padding to ``base_width * 3**k``."""
    k = _levels(max(a.width, b.width, 1), base_width, 3)
    return mul_recursive(a, b, SplitStrategy((B3,) * k, base_width), leaf)


def recursive_mult_count(strategy: SplitStrategy) -> int:
    return math.prod(step.products for step in strategy.steps)
