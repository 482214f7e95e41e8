from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from svabench.rtl.errors import UnterminatedComment
from svabench.rtl.strip import strip_for_prompt


def test_line_comment_and_newline():
    assert strip_for_prompt("wire a; // drive\nassign b = a;") == "wire a; assign b = a;"


def test_block_comment():
    assert strip_for_prompt("/*x*/module m;") == "module m;"


def test_no_comments_is_identity_modulo_whitespace():
    text = "assign y = a ^ b;"
    assert strip_for_prompt(text) == text


def test_whitespace_runs_collapse():
    assert strip_for_prompt("a   b\t\tc\n\nd") == "a b c d"


def test_block_comment_separates_tokens():
    assert strip_for_prompt("a/*x*/b") == "a b"


def test_unterminated_comment():
    with pytest.raises(UnterminatedComment):
        strip_for_prompt("assign y = a; /* oops")


def test_multiline_source():
    src = """
    // adder
    module half_adder(input a, input b, output s);
      /* sum
         only */
      assign s = a ^ b;
    endmodule
    """
    assert (
        strip_for_prompt(src)
        == "module half_adder(input a, input b, output s); assign s = a ^ b; endmodule"
    )


@given(st.text(alphabet=" \t\nabcdefg;=^&|()%371", max_size=200))
def test_idempotent(text):
    once = strip_for_prompt(text)
    assert strip_for_prompt(once) == once


@given(st.text(alphabet=" \t\nabcdefg;=^&|()%371", max_size=200))
def test_output_has_no_newlines_or_runs(text):
    out = strip_for_prompt(text)
    assert "\n" not in out
    assert "  " not in out
    assert out == out.strip()
