"""Shared test oracles and helpers."""

from pathlib import Path

from gf2iter import Gf2Poly

GOLDEN = Path(__file__).parent / "golden"

# criterion number -> (description, passed); filled by test_acceptance
ACCEPTANCE_RESULTS = {}


def convolve_bits(a, b):
    """Coefficient convolution mod 2 on bit lists; independent of the int-based code paths."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] ^= ai & bj
    return out


def to_bits(value, width):
    return [(value >> i) & 1 for i in range(width)]


def from_bits(bits):
    return sum(bit << i for i, bit in enumerate(bits))


def poly_divmod_remainder(value, modulus):
    """Bit-at-a-time long division remainder."""
    m = modulus.bit_length() - 1
    for i in range(value.bit_length() - 1, m - 1, -1):
        if (value >> i) & 1:
            value ^= modulus << (i - m)
    return value


def random_poly(rng, width):
    return Gf2Poly(rng.getrandbits(width), width)
