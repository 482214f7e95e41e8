from __future__ import annotations

import itertools
import random

import pytest

from generators import random_design
from svabench.rtl.elaborate import elaborate
from svabench.rtl.errors import (
    CombinationalLoop,
    MultipleDrivers,
    UnsupportedConstruct,
    WidthMismatch,
)
from svabench.rtl.parser import parse_design, render_design

class TestCombinational:
    def test_half_adder_xor(self, half_adder_ts):
        assert half_adder_ts.output_values((), (1, 1)) == {"s": 0, "c": 1}
        assert half_adder_ts.output_values((), (1, 0)) == {"s": 1, "c": 0}
        assert half_adder_ts.output_values((), (0, 0)) == {"s": 0, "c": 0}

    def test_combinational_design_has_empty_state(self, half_adder_ts):
        assert half_adder_ts.registers == []
        assert half_adder_ts.reset_state == ()
        assert half_adder_ts.state_bits == 0

    def test_wire_chains_evaluate_in_dependency_order(self):
        ts = elaborate(
            parse_design(
                "module m(input a, output y); wire t; "
                "assign y = t ^ a; assign t = ~a; endmodule"
            )
        )
        # y = ~a ^ a = 1 always
        assert ts.output_values((), (0,))["y"] == 1
        assert ts.output_values((), (1,))["y"] == 1

    def test_comb_always_with_if(self):
        ts = elaborate(
            parse_design(
                "module m(input s, input a, input b, output y); reg y; "
                "always @(*) begin if (s) y = a; else y = b; end endmodule"
            )
        )
        assert ts.output_values((), (1, 1, 0))["y"] == 1
        assert ts.output_values((), (0, 1, 0))["y"] == 0


class TestClocked:
    def test_t_ff_toggle(self, t_ff_ts):
        assert t_ff_ts.next_state((0,), (1,)) == (1,)
        assert t_ff_ts.next_state((1,), (1,)) == (0,)
        assert t_ff_ts.next_state((1,), (0,)) == (1,)

    def test_register_holds_without_assignment(self):
        ts = elaborate(
            parse_design(
                "module m(input clk, input en, input d, output reg q); "
                "always @(posedge clk) if (en) q <= d; endmodule"
            )
        )
        assert ts.next_state((1,), (0, 0)) == (1,)
        assert ts.next_state((1,), (1, 0)) == (0,)

    def test_nonblocking_reads_pre_cycle_values(self):
        # classic register swap: both updates see old values
        ts = elaborate(
            parse_design(
                "module m(input clk, output reg a, output reg b); "
                "always @(posedge clk) begin a <= b; b <= a; end endmodule"
            )
        )
        assert ts.next_state((0, 1), ()) == (1, 0)

    def test_swapping_nonblocking_order_is_irrelevant(self):
        forward = elaborate(
            parse_design(
                "module m(input clk, input d, output reg a, output reg b); "
                "always @(posedge clk) begin a <= b; b <= d; end endmodule"
            )
        )
        swapped = elaborate(
            parse_design(
                "module m(input clk, input d, output reg a, output reg b); "
                "always @(posedge clk) begin b <= d; a <= b; end endmodule"
            )
        )
        for state in itertools.product((0, 1), repeat=2):
            for inputs in ((0,), (1,)):
                assert forward.next_state(state, inputs) == swapped.next_state(state, inputs)
                assert forward.observe(state, inputs) == swapped.observe(state, inputs)

    def test_reset_pulse_defines_reset_state(self):
        ts = elaborate(
            parse_design(
                "module m(input clk, input rst, output reg q); "
                "always @(posedge clk) if (rst) q <= 1; else q <= q; endmodule"
            )
        )
        assert ts.reset_state == (1,)

    def test_reset_held_low_in_observations(self, arbiter_ts):
        env = arbiter_ts.observe(arbiter_ts.reset_state, (0, 0))
        assert env["rst"] == 0
        assert "clk" not in env


class TestArbiterHandSimulation:
    # Three-cycle hand simulation of the reference arbiter from reset,
    # computed on the fixture RTL and frozen here as the oracle.
    CASES = {
        (1, 0): {"gnt_": [0, 1, 1], "gnt1": [1, 1, 1], "gnt2": [0, 0, 0]},
        (0, 1): {"gnt_": [0, 0, 0], "gnt1": [0, 0, 0], "gnt2": [1, 1, 1]},
        (1, 1): {"gnt_": [0, 1, 0], "gnt1": [1, 0, 1], "gnt2": [0, 1, 0]},
    }

    @pytest.mark.parametrize("inputs", sorted(CASES))
    def test_three_cycles_from_reset(self, arbiter_ts, inputs):
        expected = self.CASES[inputs]
        state = arbiter_ts.reset_state
        for cycle in range(3):
            env = arbiter_ts.observe(state, inputs)
            assert env["gnt_"] == expected["gnt_"][cycle], f"cycle {cycle}"
            assert env["gnt1"] == expected["gnt1"][cycle], f"cycle {cycle}"
            assert env["gnt2"] == expected["gnt2"][cycle], f"cycle {cycle}"
            state = arbiter_ts.next_state(state, inputs)


class TestElaborationErrors:
    def test_combinational_loop(self):
        with pytest.raises(CombinationalLoop) as err:
            elaborate(
                parse_design(
                    "module m(input a, output y); wire t; "
                    "assign t = y & a; assign y = t | a; endmodule"
                )
            )
        assert set(err.value.cycle) == {"t", "y"}

    def test_self_loop(self):
        with pytest.raises(CombinationalLoop):
            elaborate(parse_design("module m(input a, output y); assign y = y ^ a; endmodule"))

    def test_multiple_drivers(self):
        with pytest.raises(MultipleDrivers, match="'y'"):
            elaborate(
                parse_design(
                    "module m(input a, input b, output y); "
                    "assign y = a; assign y = b; endmodule"
                )
            )

    def test_width_mismatch_on_assignment(self):
        with pytest.raises(WidthMismatch, match="2-bit"):
            elaborate(
                parse_design(
                    "module m(input [1:0] a, output y); assign y = a; endmodule"
                )
            )

    def test_unsized_literal_must_fit_target(self):
        with pytest.raises(WidthMismatch, match="does not fit"):
            elaborate(parse_design("module m(output [1:0] y); assign y = 5; endmodule"))

    def test_implicit_latch_rejected(self):
        with pytest.raises(UnsupportedConstruct, match="latch"):
            elaborate(
                parse_design(
                    "module m(input s, input a, output y); reg y; "
                    "always @(*) if (s) y = a; endmodule"
                )
            )

    def test_undriven_signal_rejected(self):
        with pytest.raises(UnsupportedConstruct, match="undriven"):
            elaborate(parse_design("module m(input a, output y); endmodule"))


class TestWidthSemantics:
    def test_addition_is_modular_at_target_width(self):
        ts = elaborate(
            parse_design(
                "module m(input [1:0] a, output [1:0] y); assign y = a + 1; endmodule"
            )
        )
        assert ts.output_values((), (3,))["y"] == 0

    def test_narrow_operand_zero_extends(self):
        ts = elaborate(
            parse_design(
                "module m(input a, output [1:0] y); assign y = a + 1; endmodule"
            )
        )
        assert ts.output_values((), (1,))["y"] == 2

    def test_unary_minus_two_complement(self):
        ts = elaborate(
            parse_design("module m(input [2:0] a, output [2:0] y); assign y = -a; endmodule")
        )
        assert ts.output_values((), (1,))["y"] == 7

    def test_comparison_widens_to_common_width(self):
        ts = elaborate(
            parse_design(
                "module m(input a, input [1:0] b, output y); assign y = a == b; endmodule"
            )
        )
        assert ts.output_values((), (1, 1))["y"] == 1
        assert ts.output_values((), (1, 3))["y"] == 0


class TestDeterminism:
    def test_elaboration_is_deterministic(self):
        rng = random.Random(99)
        for i in range(25):
            src = render_design(random_design(rng, name=f"det{i}"))
            ts1 = elaborate(parse_design(src))
            ts2 = elaborate(parse_design(src))
            states = itertools.product(*[range(1 << w) for _, w in ts1.registers])
            for state in states:
                for inputs in ts1.input_space():
                    assert ts1.next_state(state, inputs) == ts2.next_state(state, inputs)
                    assert ts1.observe(state, inputs) == ts2.observe(state, inputs)

    def test_state_bits_reported(self, arbiter_ts):
        assert arbiter_ts.state_bits == 1
        assert arbiter_ts.input_bits == 2
        assert arbiter_ts.inputs == [("req1", 1), ("req2", 1)]
