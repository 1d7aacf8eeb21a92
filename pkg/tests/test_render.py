from pimlang.compiler.render import render
from pimlang.compiler.spim_reader import read_spim
from tests.utils import DECAY_MODEL, _program


def test_render_fcr_lines(fcr_program):
    lines = render(fcr_program).splitlines()
    assert lines[0] == "directive sample 10.0"
    assert lines[1] == (
        "directive plot FcR7(); FcR6(); FcR5(); FcR4(); FcR3(); FcR2(); FcR1(); "
        "FcR0(); IgG1(); IgG0(); Phosph1(); Phosph0()"
    )
    assert lines[2:6] == [
        "new fi1@1.0:chan(chan)",
        "new phosphy2@1.0:chan(chan)",
        "new phosphz3@1.0:chan(chan)",
        "new nil@0.0:chan",
    ]
    assert "let FcR0() = ( new f@1.0:chan !fi1(f)*2.0; FcR1(f) )" in lines
    assert (
        "and FcR1(f:chan) = ( do ?phosphy2(y); FcR4(f,y) or ?phosphz3(z); FcR5(f,z) )"
        in lines
    )
    assert "and FcR7(f:chan,y:chan,z:chan) = ()" in lines
    assert "let IgG0() = ( ?fi1(i); IgG1(i) )" in lines
    assert lines[-3:] == [
        "run 1000 of FcR0()",
        "run 1000 of IgG0()",
        "run 1000 of Phosph0()",
    ]


def test_render_dissociation_and_half_rate(fcr_src_program):
    lines = render(fcr_src_program).splitlines()
    assert "and FcR1(f:chan) = ( new s1@0.5:chan !ssr4(s1)*1.0; FcR5(f,s1) )" in lines
    assert "and Src1(sr1:chan) = ( do !sr1; Src0() or ?sr1; Src0() )" in lines


def test_render_delay_to_termination():
    lines = render(_program(DECAY_MODEL)).splitlines()
    assert "let A0() = ( delay@0.5; () )" in lines


def test_render_is_deterministic(fcr_src_program):
    assert render(fcr_src_program) == render(fcr_src_program)
    assert render(fcr_src_program).endswith(")\n")


def test_render_reads_back(fcr_program, fcr_src_program):
    assert read_spim(render(fcr_program)) == fcr_program
    assert read_spim(render(fcr_src_program)) == fcr_src_program
