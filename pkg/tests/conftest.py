from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from svabench.rtl.elaborate import elaborate
from svabench.rtl.parser import parse_design

ARBITER_SRC = """
module arbiter(clk, rst, req1, req2, gnt1, gnt2);
  input clk, rst, req1, req2;
  output gnt1, gnt2;
  reg gnt_;
  assign gnt1 = req1 & (~req2 | ~gnt_);
  assign gnt2 = req2 & (~req1 | gnt_);
  always @(posedge clk) begin
    if (rst) gnt_ <= 0;
    else gnt_ <= gnt1;
  end
endmodule
"""

HALF_ADDER_SRC = """
module half_adder(input a, input b, output s, output c);
  assign s = a ^ b;
  assign c = a & b;
endmodule
"""

T_FF_SRC = """
module t_ff(input clk, input rst, input t, output reg q);
  always @(posedge clk) begin
    if (rst) q <= 0;
    else q <= q ^ t;
  end
endmodule
"""

P1_TEXT = "assert property (@(posedge clk) (req1 == 1 && req2 == 0) |-> (gnt1 == 1));"
P2_TEXT = (
    "assert property (@(posedge clk) (req2 == 0 && gnt_ == 1) ##1 (req1 == 1) "
    "|=> (gnt1 == 1));"
)


@pytest.fixture(scope="session")
def arbiter_design():
    return parse_design(ARBITER_SRC)


@pytest.fixture(scope="session")
def arbiter_ts(arbiter_design):
    return elaborate(arbiter_design)


@pytest.fixture(scope="session")
def half_adder_ts():
    return elaborate(parse_design(HALF_ADDER_SRC))


@pytest.fixture(scope="session")
def t_ff_ts():
    return elaborate(parse_design(T_FF_SRC))


@pytest.fixture(scope="session")
def bundled_root():
    from svabench.bench.store import bundled_benchmark_root

    return bundled_benchmark_root()


@pytest.fixture(scope="session")
def mock_root():
    from svabench.bench.store import bundled_mock_root

    return bundled_mock_root()
