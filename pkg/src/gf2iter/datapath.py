"""Clock-level model of the iterative multiplier datapath.

Three blocks per clock:

* selection XORs the scheduled segments of each operand,
* the partial multiplier forms their ``2n - 1`` bit product into ``pr``,
* product accumulation applies the clock's register updates, all reading
  start-of-clock values.

After the last clock the registers ``c^{2s-1} .. c^0`` concatenate to the
full product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import Gf2Poly, clmul, format_hex
from .schedule import ClockedSchedule, PartialMultSpec, cost_report

__all__ = ["SimulatorError", "StepRecord", "SimulatorState", "load", "step", "run", "trace"]


class SimulatorError(RuntimeError):
    pass


@dataclass(frozen=True)
class StepRecord:
    clock: int
    pm: PartialMultSpec
    pr: int
    updates: tuple
    registers: tuple[int, ...]


def _compile(schedule: ClockedSchedule):
    lo, hi = 2 * schedule.s, 2 * schedule.s + 1
    index = {"pr.lo": lo, "pr.hi": hi}
    index.update({f"c{i}": i for i in range(2 * schedule.s)})
    return [
        (
            tuple(sorted(st.pm.a_segments)),
            tuple(sorted(st.pm.b_segments)),
            tuple((u.target, tuple(index[src] for src in u.sources)) for u in st.updates),
        )
        for st in schedule.steps
    ]


@dataclass
class SimulatorState:
    """Mutable state of one multiplier instance; not meant to be shared across threads."""

    schedule: ClockedSchedule
    segment_width: int
    a_segments: list[int]
    b_segments: list[int]
    registers: list[int]
    pr: int = 0
    clock: int = 0
    result_width: int = 0
    record: bool = False
    history: list[StepRecord] = field(default_factory=list)
    _program: list = field(default=None, repr=False)

    @property
    def s(self) -> int:
        return self.schedule.s

    @property
    def done(self) -> bool:
        return self.clock == len(self.schedule.steps)

    @property
    def pr_lo(self) -> int:
        return self.pr & ((1 << self.segment_width) - 1)

    @property
    def pr_hi(self) -> int:
        return self.pr >> self.segment_width

    def product(self) -> Gf2Poly:
        value = 0
        for i, reg in enumerate(self.registers):
            value |= reg << (i * self.segment_width)
        return Gf2Poly(value, max(self.result_width, value.bit_length()))


def load(a: Gf2Poly, b: Gf2Poly, schedule: ClockedSchedule, segment_width: int, record: bool = False) -> SimulatorState:
    """Latch operands: pad to ``s * segment_width`` bits and cut into segments."""
    if segment_width < 1:
        raise ValueError("segment_width must be positive")
    s = schedule.s
    width = s * segment_width
    for name, p in (("a", a), ("b", b)):
        if p.degree >= width:
            raise ValueError(f"operand {name} has {p.degree + 1} bits, datapath holds {width}")
    mask = (1 << segment_width) - 1
    return SimulatorState(
        schedule=schedule,
        segment_width=segment_width,
        a_segments=[(a.value >> (i * segment_width)) & mask for i in range(s)],
        b_segments=[(b.value >> (i * segment_width)) & mask for i in range(s)],
        registers=[0] * (2 * s),
        result_width=a.width + b.width - 1 if a.width and b.width else 0,
        record=record,
        _program=_compile(schedule),
    )


def step(state: SimulatorState) -> SimulatorState:
    """Advance one clock in place and return the state."""
    if state.done:
        raise SimulatorError(f"simulator already finished after {state.clock} clocks")
    a_sel, b_sel, updates = state._program[state.clock]
    a = b = 0
    for i in a_sel:
        a ^= state.a_segments[i]
    for i in b_sel:
        b ^= state.b_segments[i]
    state.pr = clmul(a, b)

    old = state.registers + [state.pr_lo, state.pr_hi]
    regs = state.registers
    for target, sources in updates:
        v = 0
        for src in sources:
            v ^= old[src]
        regs[target] = v
    state.clock += 1

    if state.record:
        st = state.schedule.steps[state.clock - 1]
        state.history.append(StepRecord(state.clock, st.pm, state.pr, st.updates, tuple(regs)))
    return state


def run(state: SimulatorState) -> Gf2Poly:
    """Clock a freshly loaded state to completion and return the product."""
    if state.clock != 0:
        raise SimulatorError("run() expects a freshly loaded simulator")
    while not state.done:
        step(state)
    return state.product()


def trace(history, segment_width: int | None = None) -> str:
    """Render recorded steps, one line per clock.

    Accepts a :class:`SimulatorState` (with ``record=True``) or a sequence
    of :class:`StepRecord`.
    """
    if isinstance(history, SimulatorState):
        history = history.history
    lines = []
    for rec in history:
        ups = "; ".join(str(u) for u in rec.updates)
        regs = " ".join(f"c{i}=0x{v:x}" for i, v in enumerate(rec.registers))
        lines.append(f"clk {rec.clock}: pm {rec.pm} pr=0x{rec.pr:x} | {ups} | {regs}")
    return "\n".join(lines) + ("\n" if lines else "")


def summary_line(state: SimulatorState) -> str:
    cost = cost_report(state.schedule)
    return (
        f"product {format_hex(state.product())} "
        f"partial_mults={cost.partial_mults} xor_ops={cost.xor_ops} clocks={cost.clocks}"
    )
