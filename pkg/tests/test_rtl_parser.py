from __future__ import annotations

import random

import pytest

from generators import random_design
from svabench.rtl.ast import Direction, ProcessKind, SignalKind
from svabench.rtl.errors import ParseError, UnsupportedConstruct
from svabench.rtl.parser import parse_design, render_design

from conftest import ARBITER_SRC


class TestParseExamples:
    def test_arbiter_signal_partition(self):
        design = parse_design(ARBITER_SRC)
        assert design.input_names == ["clk", "rst", "req1", "req2"]
        assert design.output_names == ["gnt1", "gnt2"]
        assert design.register_names == ["gnt_"]
        assert set(design.signals) == {"clk", "rst", "req1", "req2", "gnt1", "gnt2", "gnt_"}

    def test_identity_passthrough(self):
        design = parse_design("module m(input a, output b); assign b = a; endmodule")
        assert design.register_names == []
        assert design.output_names == ["b"]
        assert design.signals["b"].kind is SignalKind.OUTPUT

    def test_generate_is_unsupported(self):
        with pytest.raises(UnsupportedConstruct) as err:
            parse_design("module m(input a); generate endgenerate endmodule")
        assert "generate" in str(err.value)

    def test_comments_and_whitespace_never_change_semantics(self):
        compact = "module m(input a,output b);assign b=~a;endmodule"
        padded = "module m( input a, /* gap */ output b );\n  assign b = ~ a ; // inverted\nendmodule\n"
        assert parse_design(compact) == parse_design(padded)


class TestDeclarations:
    def test_non_ansi_ports(self):
        design = parse_design(
            "module m(a, b); input a; output b; assign b = a; endmodule"
        )
        assert [p.name for p in design.ports] == ["a", "b"]
        assert design.ports[0].direction is Direction.INPUT

    def test_output_reg_redeclaration(self):
        design = parse_design(
            "module m(q, clk); input clk; output q; reg q; "
            "always @(posedge clk) q <= 1; endmodule"
        )
        assert design.signals["q"].kind is SignalKind.REGISTER

    def test_vector_range(self):
        design = parse_design(
            "module m(input [3:0] a, output [3:0] y); assign y = a; endmodule"
        )
        assert design.signals["a"].width == 4

    def test_duplicate_declaration(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_design("module m(input a, input a); endmodule")

    def test_undeclared_identifier(self):
        with pytest.raises(ParseError, match="undeclared"):
            parse_design("module m(input a, output b); assign b = c; endmodule")

    def test_width_limit(self):
        with pytest.raises(UnsupportedConstruct, match="wider than 16"):
            parse_design("module m(input [16:0] a, output b); assign b = a; endmodule")

    def test_nonzero_lsb_rejected(self):
        with pytest.raises(ParseError, match=r"\[N:0\]"):
            parse_design("module m(input [4:1] a, output b); assign b = a; endmodule")

    def test_memory_array_unsupported(self):
        with pytest.raises(UnsupportedConstruct, match="memory"):
            parse_design("module m(input clk); reg [7:0] mem [0:3]; endmodule")


class TestProcessRules:
    def test_blocking_in_clocked_rejected(self):
        with pytest.raises(UnsupportedConstruct, match="blocking"):
            parse_design(
                "module m(input clk, input d, output q); reg q; "
                "always @(posedge clk) q = d; endmodule"
            )

    def test_nonblocking_in_comb_rejected(self):
        with pytest.raises(UnsupportedConstruct, match="nonblocking"):
            parse_design(
                "module m(input d, output q); reg q; always @(*) q <= d; endmodule"
            )

    def test_assign_to_input(self):
        with pytest.raises(ParseError, match="cannot assign to input"):
            parse_design("module m(input a); assign a = 1; endmodule")

    def test_assign_to_reg_rejected(self):
        with pytest.raises(ParseError, match="declared 'reg'"):
            parse_design("module m(input a, output b); reg r; assign r = a; assign b = a; endmodule")

    def test_always_target_must_be_reg(self):
        with pytest.raises(ParseError, match="must be declared 'reg'"):
            parse_design(
                "module m(input clk, input d, output q); "
                "always @(posedge clk) q <= d; endmodule"
            )

    def test_clock_name_fixed(self):
        with pytest.raises(UnsupportedConstruct, match="clock"):
            parse_design(
                "module m(input ck, input d, output q); reg q; "
                "always @(posedge ck) q <= d; endmodule"
            )

    def test_negedge_unsupported(self):
        with pytest.raises(UnsupportedConstruct, match="negedge"):
            parse_design(
                "module m(input clk, input d, output q); reg q; "
                "always @(negedge clk) q <= d; endmodule"
            )

    def test_async_reset_unsupported(self):
        with pytest.raises(UnsupportedConstruct, match="sensitivity"):
            parse_design(
                "module m(input clk, input rst, input d, output q); reg q; "
                "always @(posedge clk or posedge rst) q <= d; endmodule"
            )

    def test_classic_comb_sensitivity_list(self):
        design = parse_design(
            "module m(input a, input b, output y); reg y; "
            "always @(a or b) y = a & b; endmodule"
        )
        assert design.processes[0].kind is ProcessKind.COMBINATIONAL

    def test_reading_clock_as_data(self):
        with pytest.raises(UnsupportedConstruct, match="clock"):
            parse_design("module m(input clk, output y); assign y = clk; endmodule")

    def test_module_instantiation_unsupported(self):
        with pytest.raises(UnsupportedConstruct, match="instantiation"):
            parse_design("module m(input a); sub u0 (a); endmodule")


class TestLiterals:
    def test_four_state_rejected(self):
        with pytest.raises(UnsupportedConstruct, match="x/z"):
            parse_design("module m(output y); assign y = 1'bx; endmodule")

    def test_sized_literal_overflow(self):
        with pytest.raises(ParseError, match="does not fit"):
            parse_design("module m(output [1:0] y); assign y = 2'd4; endmodule")

    def test_parse_error_carries_position_and_expectations(self):
        with pytest.raises(ParseError) as err:
            parse_design("module m(input a output b); endmodule")
        assert err.value.line == 1
        assert err.value.col > 1
        assert err.value.expected

    def test_error_format_with_filename(self):
        with pytest.raises(ParseError) as err:
            parse_design("module m(input a,, output b); endmodule")
        text = err.value.format("adder.v")
        assert text.startswith("adder.v:1:")


class TestRenderRoundTrip:
    def test_arbiter_round_trip(self):
        design = parse_design(ARBITER_SRC)
        assert parse_design(render_design(design)) == design

    def test_random_designs_round_trip(self):
        rng = random.Random(2024)
        for i in range(250):
            design = random_design(rng, name=f"rt{i}")
            rendered = render_design(design)
            assert parse_design(rendered) == design, rendered
