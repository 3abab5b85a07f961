"""Flat decompositions, accumulation tables and clocked accumulation schedules.

A split strategy is expanded at segment granularity into a list of partial
products ``(a^{S} ... ) * (b^{S} ...)`` (XORs of operand segments) together
with the result segments each product half is folded into.  A clocked
schedule then orders those products one per clock and spells out the
register updates of the accumulation block.
"""

from __future__ import annotations

import functools
import itertools
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .recursive import PAPER_STRATEGIES, Split, SplitStrategy

__all__ = [
    "PartialMultSpec",
    "AccumulationTable",
    "Update",
    "ClockStep",
    "ClockedSchedule",
    "CostReport",
    "build_decomposition",
    "xor_count_separate",
    "canonical_4segment_schedule",
    "build_iterative_schedule",
    "paper_schedule",
    "cost_report",
    "schedule_to_dict",
    "schedule_from_dict",
    "export_schedule",
    "import_schedule",
]

LO, HI = "lo", "hi"


@dataclass(frozen=True)
class PartialMultSpec:
    """Which operand segments are XORed together before one partial multiplication."""

    a_segments: frozenset[int]
    b_segments: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "a_segments", frozenset(self.a_segments))
        object.__setattr__(self, "b_segments", frozenset(self.b_segments))
        if not self.a_segments or not self.b_segments:
            raise ValueError("partial multiplication needs at least one segment per operand")
        if min(self.a_segments | self.b_segments) < 0:
            raise ValueError("segment indices must be non-negative")

    @classmethod
    def of(cls, *segments: int) -> PartialMultSpec:
        """Symmetric spec ``(a^i xor ...)(b^i xor ...)``."""
        return cls(frozenset(segments), frozenset(segments))

    @property
    def max_segment(self) -> int:
        return max(self.a_segments | self.b_segments)

    def sort_key(self):
        # diagonal products first, then pair sums, ..., then the full sum
        return (len(self.a_segments), sorted(self.a_segments), sorted(self.b_segments))

    def __str__(self) -> str:
        fmt = lambda s: "{" + ",".join(map(str, sorted(s))) + "}"
        return f"a{fmt(self.a_segments)} b{fmt(self.b_segments)}"


@dataclass(frozen=True)
class AccumulationTable:
    """Maps each partial-product half onto the result segments it is XORed into.

    ``shifts[k]`` holds the segments receiving the low half of product ``k``;
    the high half always lands one segment further up.
    """

    s: int
    products: tuple[PartialMultSpec, ...]
    shifts: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.products) != len(self.shifts):
            raise ValueError("one shift set per product required")
        for spec, shifts in zip(self.products, self.shifts):
            if spec.max_segment >= self.s:
                raise ValueError(f"{spec} refers to a segment outside 0..{self.s - 1}")
            if shifts and not (min(shifts) >= 0 and max(shifts) + 1 < 2 * self.s):
                raise ValueError(f"{spec} targets segments outside 0..{2 * self.s - 1}")

    @property
    def n_segments(self) -> int:
        """Number of result segments, ``2s``."""
        return 2 * self.s

    def targets(self, index: int, half: str) -> frozenset[int]:
        lo = self.shifts[index]
        if half == LO:
            return lo
        if half == HI:
            return frozenset(t + 1 for t in lo)
        raise ValueError(f"half must be 'lo' or 'hi', not {half!r}")

    @property
    def rows(self) -> dict[tuple[int, str], frozenset[int]]:
        return {(k, h): self.targets(k, h) for k in range(len(self.products)) for h in (LO, HI)}

    def contributors(self, segment: int) -> list[tuple[int, str]]:
        return [row for row, targets in self.rows.items() if segment in targets]


@dataclass(frozen=True)
class Update:
    """``c<target> <= XOR of sources``; sources are ``c<i>``, ``pr.lo`` or ``pr.hi``."""

    target: int
    sources: tuple[str, ...]

    @property
    def xor_ops(self) -> int:
        return len(self.sources) - 1

    def __str__(self) -> str:
        return f"c{self.target} <= " + " ^ ".join(self.sources)


@dataclass(frozen=True)
class ClockStep:
    pm: PartialMultSpec
    updates: tuple[Update, ...]


_SOURCE = re.compile(r"c(\d+)|pr\.lo|pr\.hi")


@dataclass(frozen=True)
class ClockedSchedule:
    """One partial multiplication per clock plus the register updates it triggers.

    All right-hand sides of a clock read the register values from the start
    of that clock, so no two updates in a clock may target the same register.
    """

    s: int
    steps: tuple[ClockStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for clock, step in enumerate(self.steps, 1):
            if step.pm.max_segment >= self.s:
                raise ValueError(f"clock {clock}: {step.pm} selects a segment outside 0..{self.s - 1}")
            seen = set()
            for up in step.updates:
                if not 0 <= up.target < 2 * self.s:
                    raise ValueError(f"clock {clock}: target c{up.target} out of range")
                if up.target in seen:
                    raise ValueError(f"clock {clock}: c{up.target} written twice")
                seen.add(up.target)
                if not up.sources or len(set(up.sources)) != len(up.sources):
                    raise ValueError(f"clock {clock}: bad source list {up.sources}")
                for src in up.sources:
                    m = _SOURCE.fullmatch(src)
                    if m is None or (m.group(1) is not None and int(m.group(1)) >= 2 * self.s):
                        raise ValueError(f"clock {clock}: bad source {src!r}")

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class CostReport:
    partial_mults: int
    xor_ops: int
    clocks: int

    def as_dict(self) -> dict[str, int]:
        return {"partial_mults": self.partial_mults, "xor_ops": self.xor_ops, "clocks": self.clocks}


def _toggle(acc: dict, key, shift: int):
    shifts = acc.setdefault(key, set())
    shifts.symmetric_difference_update({shift})


def _expand(a: tuple, b: tuple, steps: Sequence[Split]) -> dict:
    """Expand a block product into ``{(a_set, b_set): set of segment shifts}``."""
    if not steps:
        return {(a[0], b[0]): {0}}
    step, rest = steps[0], steps[1:]
    m = len(a) // step.value
    pa = [a[i * m:(i + 1) * m] for i in range(step.value)]
    pb = [b[i * m:(i + 1) * m] for i in range(step.value)]

    def xsum(parts, i, j):
        return tuple(x ^ y for x, y in zip(parts[i], parts[j]))

    def sub(i, j=None):
        if j is None:
            return _expand(pa[i], pb[i], rest)
        return _expand(xsum(pa, i, j), xsum(pb, i, j), rest)

    if step is Split.K2:
        terms = [(sub(0), (0, m)), (sub(1), (m, 2 * m)), (sub(0, 1), (m,))]
    else:
        terms = [
            (sub(0), (0, m, 2 * m)),
            (sub(1), (m, 2 * m, 3 * m)),
            (sub(2), (2 * m, 3 * m, 4 * m)),
            (sub(0, 1), (m,)),
            (sub(0, 2), (2 * m,)),
            (sub(1, 2), (3 * m,)),
        ]
    acc: dict = {}
    for leaves, offsets in terms:
        for key, shifts in leaves.items():
            for shift in shifts:
                for off in offsets:
                    _toggle(acc, key, shift + off)
    return acc


def build_decomposition(strategy: SplitStrategy) -> tuple[list[PartialMultSpec], AccumulationTable]:
    """Fully expand ``strategy`` into single-segment partial products.

    Contributions hitting the same (product, segment) pair twice cancel.
    Products come back in paper order: diagonal products by ascending index,
    then growing XOR sums.
    """
    s = strategy.segments
    block = tuple(frozenset({i}) for i in range(s))
    expanded = _expand(block, block, strategy.steps)
    specs = sorted(
        (PartialMultSpec(a, b) for (a, b), shifts in expanded.items() if shifts),
        key=PartialMultSpec.sort_key,
    )
    shifts = tuple(frozenset(expanded[(p.a_segments, p.b_segments)]) for p in specs)
    return specs, AccumulationTable(s, tuple(specs), shifts)


def xor_count_separate(table: AccumulationTable) -> int:
    """XORs needed when every result segment is accumulated on its own."""
    return sum(max(len(table.contributors(j)) - 1, 0) for j in range(table.n_segments))


def _u(target: int, *sources: str) -> Update:
    return Update(target, sources)


def canonical_4segment_schedule() -> ClockedSchedule:
    """The published nine-clock schedule for the 4-segment Karatsuba product (29 XORs)."""
    P = PartialMultSpec.of
    lo, hi = "pr.lo", "pr.hi"
    steps = [
        (P(0), [_u(0, lo), _u(1, hi)]),
        (P(1), [_u(1, "c1", "c0", lo), _u(2, hi)]),
        (P(2), [_u(2, "c2", "c1", lo), _u(3, hi)]),
        (P(3), [_u(3, "c3", "c2", lo, hi), _u(7, hi)]),
        (P(0, 1), [
            _u(6, "c3", "c2"),
            _u(5, "c3", "c1"),
            _u(4, "c3", "c0", hi),
            _u(3, "c3", "c7", lo),
            _u(2, "c2", hi),
            _u(1, "c1", lo),
        ]),
        (P(0, 2), [_u(3, "c3", lo, hi), _u(2, "c2", lo), _u(4, "c4", hi)]),
        (P(1, 3), [_u(4, "c4", lo, hi), _u(3, "c3", lo), _u(5, "c5", hi)]),
        (P(2, 3), [_u(3, "c3", lo), _u(5, "c5", lo), _u(4, "c4", hi), _u(6, "c6", hi)]),
        (P(0, 1, 2, 3), [_u(3, "c3", lo), _u(4, "c4", hi)]),
    ]
    return ClockedSchedule(4, tuple(ClockStep(pm, tuple(ups)) for pm, ups in steps))


def _greedy_update(target: int, want: int, old: list[int], lo: int, hi: int) -> Update:
    # Operand pool: start-of-clock registers (target first) and the two product halves.
    pool: list[tuple[str, int]] = []
    seen = set()
    order = [target] + [i for i in range(len(old)) if i != target]
    for name, value in [(f"c{i}", old[i]) for i in order] + [("pr.lo", lo), ("pr.hi", hi)]:
        if value and value not in seen:
            seen.add(value)
            pool.append((name, value))
    for name, value in pool:
        if value == want:
            return Update(target, (name,))
    for (n1, v1), (n2, v2) in itertools.combinations(pool, 2):
        if v1 ^ v2 == want:
            return Update(target, (n1, n2))
    # Fall back to plain accumulation: c_t ^ (new product halves).
    sources = [f"c{target}"] if old[target] else []
    delta = want ^ old[target]
    sources += [name for name, value in (("pr.lo", lo), ("pr.hi", hi)) if delta & value]
    return Update(target, tuple(sources))


def build_iterative_schedule(table: AccumulationTable, pm_order: Iterable[int] | None = None) -> ClockedSchedule:
    """Emit one clock per partial product in ``pm_order`` (default: table order).

    After each clock, register ``c_j`` holds the XOR of all of its table
    contributions whose product has already been computed.  Each update is
    chosen greedily: a single start-of-clock register or a pair of
    operands is reused when it already equals the wanted value, otherwise the
    fresh product halves are accumulated directly.  For the 4-segment
    Karatsuba table in paper order the published 29-XOR schedule is returned
    when the greedy pass cannot match it.
    """
    n_prod = len(table.products)
    order = list(range(n_prod)) if pm_order is None else list(pm_order)
    if sorted(order) != list(range(n_prod)):
        raise ValueError("pm_order must be a permutation of the table's products")
    uncovered = [j for j in range(table.n_segments) if not table.contributors(j)]
    if uncovered:
        raise ValueError(f"result segments {uncovered} receive no partial product")

    # Symbolic terms: bit 2k is product k's low half, bit 2k+1 its high half.
    want_final = [0] * table.n_segments
    for (k, half), targets in table.rows.items():
        for j in targets:
            want_final[j] ^= 1 << (2 * k + (half == HI))

    regs = [0] * table.n_segments
    available = 0
    steps = []
    for k in order:
        lo, hi = 1 << 2 * k, 1 << (2 * k + 1)
        available |= lo | hi
        updates = []
        new = list(regs)
        for j in range(table.n_segments):
            want = want_final[j] & available
            if want != regs[j]:
                updates.append(_greedy_update(j, want, regs, lo, hi))
                new[j] = want
        regs = new
        steps.append(ClockStep(table.products[k], tuple(updates)))
    schedule = ClockedSchedule(table.s, tuple(steps))

    if table.s == 4 and order == list(range(n_prod)) and _is_karatsuba4(table):
        canonical = canonical_4segment_schedule()
        if cost_report(schedule).xor_ops > cost_report(canonical).xor_ops:
            return canonical
    return schedule


def _is_karatsuba4(table: AccumulationTable) -> bool:
    _, ref = build_decomposition(SplitStrategy((Split.K2, Split.K2), 1))
    return table.products == ref.products and table.shifts == ref.shifts


@functools.lru_cache(maxsize=None)
def paper_schedule(method: str, segments: int) -> tuple[ClockedSchedule, SplitStrategy]:
    """Generated schedule and strategy for one of the six B-233 multipliers."""
    try:
        strategy = PAPER_STRATEGIES[(method, segments)]
    except KeyError:
        raise ValueError(f"no {method} configuration with {segments} segments") from None
    _, table = build_decomposition(strategy)
    return build_iterative_schedule(table), strategy


def cost_report(schedule: ClockedSchedule) -> CostReport:
    xors = sum(up.xor_ops for step in schedule.steps for up in step.updates)
    return CostReport(partial_mults=len(schedule.steps), xor_ops=xors, clocks=len(schedule.steps))


def schedule_to_dict(schedule: ClockedSchedule) -> dict:
    return {
        "s": schedule.s,
        "steps": [
            {
                "pm": {"a": sorted(step.pm.a_segments), "b": sorted(step.pm.b_segments)},
                "updates": [{"target": f"c{u.target}", "sources": list(u.sources)} for u in step.updates],
            }
            for step in schedule.steps
        ],
    }


def _parse_target(target) -> int:
    if isinstance(target, int):
        return target
    m = re.fullmatch(r"c(\d+)", str(target))
    if m is None:
        raise ValueError(f"bad update target {target!r}")
    return int(m.group(1))


def schedule_from_dict(data: dict) -> ClockedSchedule:
    steps = []
    for step in data["steps"]:
        pm = PartialMultSpec(frozenset(step["pm"]["a"]), frozenset(step["pm"]["b"]))
        updates = tuple(Update(_parse_target(u["target"]), tuple(u["sources"])) for u in step["updates"])
        steps.append(ClockStep(pm, updates))
    return ClockedSchedule(int(data["s"]), tuple(steps))


def dumps_schedule(schedule: ClockedSchedule) -> str:
    return json.dumps(schedule_to_dict(schedule), indent=2) + "\n"


def export_schedule(schedule: ClockedSchedule, path) -> None:
    Path(path).write_text(dumps_schedule(schedule))


def import_schedule(path) -> ClockedSchedule:
    return schedule_from_dict(json.loads(Path(path).read_text()))
