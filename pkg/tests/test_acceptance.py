"""Exit criteria: one test per criterion, each reported as a PASS/FAIL line in the summary."""

import contextlib
import io
import itertools
import random
import time

from gf2iter import (
    B233,
    PAPER_STRATEGIES,
    Gf2Poly,
    Split,
    SplitStrategy,
    build_decomposition,
    canonical_4segment_schedule,
    cost_report,
    field_mul,
    field_sqr,
    load,
    mul_bailey3,
    mul_karatsuba2,
    mul_schoolbook,
    paper_schedule,
    recursive_mult_count,
    reduce,
    run,
    xor_count_separate,
)
from gf2iter.cli import main
from helpers import ACCEPTANCE_RESULTS, GOLDEN, poly_divmod_remainder

EDGES = [Gf2Poly(0, 233), Gf2Poly(1, 233), Gf2Poly(1 << 232, 233), Gf2Poly((1 << 233) - 1, 233)]
TABLE4_CLOCKS = {
    ("karatsuba", 2): 3,
    ("karatsuba", 4): 9,
    ("karatsuba", 8): 27,
    ("bailey", 3): 6,
    ("bailey", 6): 18,
    ("bailey", 9): 36,
}


@contextlib.contextmanager
def criterion(number, description):
    ACCEPTANCE_RESULTS[number] = (description, False)
    yield
    ACCEPTANCE_RESULTS[number] = (description, True)


def test_1_simulator_oracle_equivalence():
    with criterion(1, "iterative simulator == schoolbook on 10^4 random 233-bit pairs + edges, 6 configs, < 60 s"):
        rng = random.Random(1)
        start = time.perf_counter()
        for key in TABLE4_CLOCKS:
            schedule, strategy = paper_schedule(*key)
            pairs = [(Gf2Poly(rng.getrandbits(233), 233), Gf2Poly(rng.getrandbits(233), 233)) for _ in range(10_000)]
            pairs += list(itertools.product(EDGES, repeat=2))
            for a, b in pairs:
                assert run(load(a, b, schedule, strategy.base_width)) == mul_schoolbook(a, b), (key, a, b)
        elapsed = time.perf_counter() - start
        assert elapsed < 60, f"took {elapsed:.1f} s"


def test_2_exhaustive_small_widths():
    with criterion(2, "mul_karatsuba2 / mul_bailey3 (base_width=1) == schoolbook for all operand pairs up to 8 bits"):
        for x, y in itertools.product(range(256), repeat=2):
            for a, b in ((Gf2Poly(x), Gf2Poly(y)), (Gf2Poly(x, 8), Gf2Poly(y, 8))):
                expected = mul_schoolbook(a, b)
                assert mul_karatsuba2(a, b, 1) == expected, (x, y)
                assert mul_bailey3(a, b, 1) == expected, (x, y)


def test_3_xor_counts():
    with criterion(3, "canonical 4-segment schedule: 29 XORs; separate accumulation from the table: 42"):
        assert cost_report(canonical_4segment_schedule()).xor_ops == 29
        _, table = build_decomposition(PAPER_STRATEGIES[("karatsuba", 4)])
        assert xor_count_separate(table) == 42


def test_4_clock_counts():
    with criterion(4, "clock counts 3, 9, 27 (Karatsuba s=2,4,8) and 6, 18, 36 (Bailey s=3,6,9)"):
        for key, clocks in TABLE4_CLOCKS.items():
            schedule, strategy = paper_schedule(*key)
            state = load(Gf2Poly(1), Gf2Poly(1), schedule, strategy.base_width)
            run(state)
            assert state.clock == clocks, key
            assert cost_report(schedule).clocks == clocks, key


def test_5_partial_mult_counts():
    with criterion(5, "recursive Karatsuba with s=2^k performs 3^k products (k=1..3); each Bailey step adds factor 6"):
        for k in (1, 2, 3):
            s = 2**k
            strategy = SplitStrategy((Split.K2,) * k, 1)
            assert recursive_mult_count(strategy) == 3**k == round(s ** 1.5849625007211563)
        for steps in [(Split.B3,), (Split.K2, Split.B3), (Split.B3, Split.K2), (Split.B3, Split.B3)]:
            strategy = SplitStrategy(steps, 1)
            without_last = SplitStrategy(steps[:-1], 1)
            factor = 6 if steps[-1] is Split.B3 else 3
            assert recursive_mult_count(strategy) == factor * recursive_mult_count(without_last)
        assert recursive_mult_count(SplitStrategy((Split.B3, Split.B3), 1)) == 36


def test_6_c5_register_check():
    with criterion(6, "after the canonical 4-segment run, c5 equals the seven-term expression, 100 random pairs"):
        rng = random.Random(6)
        n, mask = 64, (1 << 64) - 1
        for _ in range(100):
            a, b = rng.getrandbits(233), rng.getrandbits(233)
            sa = [(a >> (n * i)) & mask for i in range(4)]
            sb = [(b >> (n * i)) & mask for i in range(4)]

            def pp(*idx):
                xa = xb = 0
                for i in idx:
                    xa ^= sa[i]
                    xb ^= sb[i]
                v = mul_schoolbook(Gf2Poly(xa), Gf2Poly(xb)).value
                return v & mask, v >> n

            c5 = pp(1)[1] ^ pp(2)[0] ^ pp(2)[1] ^ pp(3)[0] ^ pp(3)[1] ^ pp(1, 3)[1] ^ pp(2, 3)[0]
            state = load(Gf2Poly(a), Gf2Poly(b), canonical_4segment_schedule(), n)
            run(state)
            assert state.registers[5] == c5


def test_7_reduction():
    with criterion(7, "reduce == long division on 10^4 465-bit inputs; reduce(x^233) = x^74+1; sqr == mul on 10^4"):
        rng = random.Random(7)
        f = B233.modulus.value
        for _ in range(10_000):
            c = rng.getrandbits(465)
            assert reduce(Gf2Poly(c)).value == poly_divmod_remainder(c, f)
        assert reduce(Gf2Poly.monomial(233)) == Gf2Poly((1 << 74) | 1)
        for _ in range(10_000):
            a = Gf2Poly(rng.getrandbits(233))
            assert field_sqr(a) == field_mul(a, a)


def test_8_golden_trace():
    with criterion(8, "simulate on fixture operands reproduces the golden trace; clock 1/9 selections match"):
        out, err = io.StringIO(), io.StringIO()
        code = main(["simulate", "--method", "iter-karatsuba", "--segments", "4",
                     str(GOLDEN / "operand_a.hex"), str(GOLDEN / "operand_b.hex")], out, err)
        assert code == 0, err.getvalue()
        golden = (GOLDEN / "simulate_iter_karatsuba_4.trace").read_text()
        assert out.getvalue() == golden
        lines = golden.splitlines()
        assert lines[0].startswith("clk 1: pm a{0} b{0} ")
        assert lines[8].startswith("clk 9: pm a{0,1,2,3} b{0,1,2,3} ")
