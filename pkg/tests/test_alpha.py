import pytest

from pimlang.compiler.alpha import alpha_equal, normalize
from pimlang.compiler.render import render
from pimlang.compiler.spim_reader import read_spim

BASE = """\
directive sample 1.0
directive plot A0(); A1(); B0(); B1()
new g1@1.0:chan(chan)
new g2@1.0:chan(chan)
new nil@0.0:chan
let A0() = ( new a@0.5:chan !g1(a)*1.0; A1(a) )
and A1(a:chan) = ( do !a; A0() or ?a; A0() )
let B0() = ( new b@0.5:chan do !g2(b)*2.0; B1(b) or ?g1(c); B1(c) )
and B1(b:chan) = ( do !b; B0() or ?b; B0() )
run 10 of A0()
run 10 of B0()
"""


def test_renamed_channels_are_equal():
    renamed = (
        BASE.replace("g1", "q").replace("g2", "g1").replace("q", "g2")
        .replace("(a)", "(x)").replace("a@", "x@").replace("a:chan", "x:chan")
        .replace("!a;", "!x;").replace("?a;", "?x;")
    )
    assert alpha_equal(read_spim(BASE), read_spim(renamed))


def test_branch_order_does_not_matter():
    swapped = BASE.replace(
        "do !g2(b)*2.0; B1(b) or ?g1(c); B1(c)", "do ?g1(c); B1(c) or !g2(b)*2.0; B1(b)"
    )
    assert alpha_equal(read_spim(BASE), read_spim(swapped))


@pytest.mark.parametrize(
    "old, new",
    [
        ("new a@0.5", "new a@0.25"),
        ("!g1(a)*1.0", "!g1(a)*3.0"),
        ("?g1(c)", "?g2(c)"),
        ("run 10 of B0()", "run 11 of B0()"),
        ("A1(a:chan) = ( do !a; A0()", "A1(a:chan) = ( do !a; B0()"),
    ],
)
def test_changes_are_not_equal(old, new):
    assert old in BASE
    assert not alpha_equal(read_spim(BASE), read_spim(BASE.replace(old, new)))


def test_normal_form_is_hashable(fcr_program):
    assert hash(normalize(fcr_program)) == hash(normalize(read_spim(render(fcr_program))))
