"""Named multiplier back-ends shared by the field layer and the CLI."""

from __future__ import annotations

from functools import partial

from .datapath import load, run
from .poly import Gf2Poly, mul_schoolbook
from .recursive import PAPER_STRATEGIES, SplitStrategy, mul_bailey3, mul_karatsuba2, mul_recursive
from .schedule import paper_schedule

METHODS = ("schoolbook", "rec-karatsuba", "rec-bailey", "iter-karatsuba", "iter-bailey")
SEGMENTS = {"karatsuba": (2, 4, 8), "bailey": (3, 6, 9)}


def _family(method: str) -> str:
    return method.split("-", 1)[1]


def iterative_multiply(a: Gf2Poly, b: Gf2Poly, family: str, segments: int) -> Gf2Poly:
    schedule, strategy = paper_schedule(family, segments)
    return run(load(a, b, schedule, strategy.base_width))


def get_multiplier(method: str, segments: int | None = None, base_width: int | None = None):
    """Return ``f(a, b) -> Gf2Poly`` for a method name.

    ``iter-*`` methods need ``segments``.  ``rec-*`` methods recurse down to
    ``base_width`` bits (one bit by default, like the one-clock designs);
    with ``segments`` they use the matching split strategy instead.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if method == "schoolbook":
        return mul_schoolbook
    family = _family(method)
    if segments is not None and segments not in SEGMENTS[family]:
        raise ValueError(f"{method} supports segments {SEGMENTS[family]}, not {segments}")
    if method.startswith("iter-"):
        if segments is None:
            raise ValueError(f"{method} needs a segment count")
        return partial(iterative_multiply, family=family, segments=segments)
    if segments is not None:
        strategy = PAPER_STRATEGIES[(family, segments)]
        if base_width is not None:
            strategy = SplitStrategy(strategy.steps, base_width)
        return partial(mul_recursive, strategy=strategy)
    rec = mul_karatsuba2 if family == "karatsuba" else mul_bailey3
    return partial(rec, base_width=base_width or 1)


def datapath_width(method: str, segments: int) -> int:
    """Operand bits an iterative datapath accepts, ``s * segment_width``."""
    return PAPER_STRATEGIES[(_family(method), segments)].width
