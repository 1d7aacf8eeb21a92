import pytest

from pimlang.compiler.lint import lint
from pimlang.compiler.spim_reader import read_spim

HEADER = "directive sample 1.0\n"


@pytest.mark.parametrize(
    "text, expected",
    [
        (
            "directive plot A0()\nlet A0() = ( !x; A0() )",
            ["A0: channel x is not in scope"],
        ),
        (
            "directive plot A0()\nnew g@1.0:chan(chan)\nlet A0() = ( !g(x)*1.0; A0() )",
            ["A0: sent channel x is not in scope"],
        ),
        (
            "directive plot A0()\nlet A0() = ( delay@1.0; A1() )",
            ["A0: calls undefined process A1"],
        ),
        (
            "directive plot A0(); A1()\n"
            "let A0() = ( delay@1.0; A1(x) )\nand A1(y:chan) = ()",
            ["A0: argument x is not in scope"],
        ),
        (
            "directive plot A0(); A1()\n"
            "let A0() = ( delay@1.0; A1() )\nand A1(y:chan) = ()",
            ["A0: A1 takes 1 argument(s), given 0"],
        ),
        (
            "directive plot A0()\nnew ab1@1.0:chan(chan)\nlet A0() = ( !ab1*1.0; A0() )",
            ["A0: ab1 carries 1 channel(s), used with 0"],
        ),
        (
            "directive plot A0(); X()\nlet A0() = ( delay@1.0; A1() )\nand A1() = ()",
            ["plot names undefined process X", "process A1 is not plotted"],
        ),
        (
            "directive plot A0()\nlet A0(a:chan) = ()\nrun 5 of A0()",
            ["run statement starts A0 without its arguments"],
        ),
    ],
)
def test_lint_reports(text, expected):
    assert lint(read_spim(HEADER + text)) == expected


def test_input_binds_names_for_the_continuation():
    program = read_spim(
        HEADER
        + "directive plot A0(); A1()\nnew g@1.0:chan(chan)\n"
        "let A0() = ( ?g(x); A1(x) )\nand A1(y:chan) = ( !y; A0() )"
    )
    assert lint(program) == []


def test_lint_generated_programs(fcr_program, fcr_src_program):
    assert lint(fcr_program) == []
    assert lint(fcr_src_program) == []
