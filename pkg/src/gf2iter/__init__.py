"""Polynomial multiplication over GF(2)[x] by iterative Karatsuba and Bailey schedules."""

from .datapath import SimulatorError, SimulatorState, load, run, step, trace
from .field import B233, field_add, field_mul, field_sqr, reduce
from .multipliers import get_multiplier
from .poly import (
    Gf2Poly,
    HexParseError,
    add,
    extract,
    format_hex,
    mul_schoolbook,
    op_counts_schoolbook,
    parse_hex,
    shift_left,
)
from .recursive import (
    PAPER_STRATEGIES,
    Split,
    SplitStrategy,
    mul_bailey3,
    mul_karatsuba2,
    mul_recursive,
    recursive_mult_count,
    split2,
)
from .schedule import (
    AccumulationTable,
    ClockedSchedule,
    ClockStep,
    CostReport,
    PartialMultSpec,
    Update,
    build_decomposition,
    build_iterative_schedule,
    canonical_4segment_schedule,
    cost_report,
    export_schedule,
    import_schedule,
    paper_schedule,
    xor_count_separate,
)

__version__ = "0.1.0"
