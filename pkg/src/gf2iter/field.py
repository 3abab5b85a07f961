"""GF(2^233) arithmetic for the NIST B-233 curve, f(x) = x^233 + x^74 + 1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .poly import Gf2Poly

__all__ = ["FieldParams", "B233", "reduce", "field_mul", "field_sqr", "field_add"]


@dataclass(frozen=True)
class FieldParams:
    m: int
    reduction_terms: tuple[int, ...]

    @property
    def modulus(self) -> Gf2Poly:
        value = 0
        for e in self.reduction_terms:
            value |= 1 << e
        return Gf2Poly(value)

    @property
    def middle(self) -> int:
        (k,) = [e for e in self.reduction_terms if e not in (0, self.m)]
        return k


B233 = FieldParams(233, (233, 74, 0))

_M = B233.m
_K = B233.middle
_MASK = (1 << _M) - 1
_MAX_DEGREE = 2 * _M - 2


def reduce(c: Gf2Poly) -> Gf2Poly:
    """Reduce a product of degree <= 464 modulo the B-233 trinomial.

    Uses x^(233+k) = x^(74+k) + x^k: the overflow above bit 232 is folded back
    in twice at most.
    """
    if c.degree > _MAX_DEGREE:
        raise ValueError(f"degree {c.degree} exceeds {_MAX_DEGREE}, not a field product")
    v = c.value
    while v >> _M:
        hi = v >> _M
        v = (v & _MASK) ^ hi ^ (hi << _K)
    return Gf2Poly(v, _M)


def _check_element(name: str, p: Gf2Poly):
    if p.degree >= _M:
        raise ValueError(f"{name} has degree {p.degree}, not a reduced GF(2^233) element")


def field_add(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    _check_element("a", a)
    _check_element("b", b)
    return Gf2Poly(a.value ^ b.value, _M)


def field_mul(a: Gf2Poly, b: Gf2Poly, backend: Callable[[Gf2Poly, Gf2Poly], Gf2Poly] | str = "schoolbook") -> Gf2Poly:
    """Multiply then reduce; ``backend`` is a multiplier callable or a method name.

    Method names are those accepted by :func:`gf2iter.multipliers.get_multiplier`.
    """
    _check_element("a", a)
    _check_element("b", b)
    if isinstance(backend, str):
        from .multipliers import get_multiplier

        backend = get_multiplier(backend)
    return reduce(backend(a, b))


def _spread(v: int) -> int:
    # a_i -> position 2i
    out = 0
    i = 0
    while v:
        chunk = v & 0xFF
        out |= _SPREAD8[chunk] << (16 * i)
        v >>= 8
        i += 1
    return out


_SPREAD8 = [sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)]


def field_sqr(a: Gf2Poly) -> Gf2Poly:
    _check_element("a", a)
    return reduce(Gf2Poly(_spread(a.value)))
