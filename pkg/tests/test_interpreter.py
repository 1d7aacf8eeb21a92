import pytest

from pimlang.compiler.spim_reader import read_spim
from pimlang.exc import SimulationError, UndefinedProcessError
from pimlang.sim.engines import compile_model
from pimlang.sim.interpreter import Reaction, load
from tests.utils import FCR_LISTING, _pair_model, _program, _within

BINDING = """\
directive sample 1.0
directive plot A0(); A1(); B0(); B1()
new ab1@1.0:chan(chan)
new nil@0.0:chan
let A0() = ( new a@0.5:chan !ab1(a)*2.0; A1(a) )
and A1(a:chan) = ( do !a; A0() or ?a; A0() )
let B0() = ( ?ab1(b); B1(b) )
and B1(b:chan) = ( do !b; B0() or ?b; B0() )
run 1 of A0()
run 1 of B0()
"""


def _loop(count: int, channel: str = "x", rate: float = 1.0) -> str:
    return (
        f"directive sample 1.0\nnew {channel}@{rate}:chan\n"
        f"let A0() = ( do !{channel}; A0() or ?{channel}; A0() )\n"
        f"run {count} of A0()\n"
    )


def test_binding_then_unbinding():
    state = load(read_spim(BINDING), seed=1)
    assert state.instances == 2
    assert state.total_propensity() == pytest.approx(2.0)

    _, reaction = state.step()
    assert reaction == Reaction("communication", "ab1", "A0", "B0", 2.0)
    assert (state.live("A1"), state.live("B1")) == (1, 1)
    assert state.total_propensity() == pytest.approx(1.0)
    assert len(state._rates) == 3

    _, reaction = state.step()
    assert reaction.kind == "communication"
    assert reaction.channel.startswith("a#")
    assert {reaction.sender, reaction.receiver} == {"A1", "B1"}
    assert (state.live("A0"), state.live("B0")) == (1, 1)
    assert len(state._rates) == 2


def test_no_self_communication():
    assert load(read_spim(_loop(1))).total_propensity() == 0.0
    assert load(read_spim(_loop(2))).total_propensity() == pytest.approx(2.0)
    assert load(read_spim(_loop(3))).total_propensity() == pytest.approx(6.0)


def test_nil_never_fires():
    state = load(read_spim(_loop(5, channel="nil", rate=0.0)))
    assert state.total_propensity() == 0.0
    assert state.step() is None


def test_empty_run_is_inert():
    state = load(read_spim(_loop(0)))
    assert state.instances == 0
    assert state.step() is None


def test_load_fcr_listing():
    state = load(read_spim(FCR_LISTING), seed=3)
    assert state.instances == 3000
    row = dict(zip(state.columns, state.row()))
    assert (row["FcR0"], row["IgG0"], row["Phosph0"]) == (1000, 1000, 1000)
    assert sum(row.values()) == 3000
    for _ in range(300):
        state.step()
    fcr = sum(state.live(f"FcR{index}") for index in range(8))
    assert fcr == 1000
    assert state.live("IgG0") + state.live("IgG1") == 1000


def test_delay_to_termination():
    state = load(_program("A decays with rate 0.5", population=3), seed=0)
    assert state.total_propensity() == pytest.approx(1.5)
    _, reaction = state.step()
    assert reaction == Reaction("delay", None, "A0", None, 0.5)
    assert state.instances == 2


@pytest.mark.parametrize(
    "text",
    [
        "directive sample 1.0\nlet A0() = ( delay@1.0; A9() )\nrun 1 of A0()",
        "directive sample 1.0\nlet A0() = ()\nrun 1 of B0()",
    ],
)
def test_undefined_process(text):
    with pytest.raises(UndefinedProcessError):
        load(read_spim(text))


def test_wrong_argument_count():
    text = (
        "directive sample 1.0\n"
        "let A0() = ( delay@1.0; A1() )\nand A1(a:chan) = ()\nrun 1 of A0()"
    )
    with pytest.raises(SimulationError):
        load(read_spim(text))


@pytest.mark.parametrize("until", [0.0, -1.0])
def test_simulate_needs_positive_time(until, fcr_program):
    with pytest.raises(SimulationError):
        load(fcr_program).simulate(until, 5)


def test_simulate_samples_grid():
    trace = load(_program("A decays with rate 0.5", population=50), seed=2).simulate(
        4.0, 8
    )
    assert trace.columns == ("A0",)
    assert list(trace.times) == [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]
    counts = trace.column("A0")
    assert counts[0] == 50
    assert all(later <= earlier for earlier, later in zip(counts, counts[1:]))


def test_same_seed_same_trace(fcr_program):
    first = load(fcr_program, seed=7).simulate(0.5, 5)
    second = load(fcr_program, seed=7).simulate(0.5, 5)
    assert (first.counts == second.counts).all()


@pytest.mark.slow
@pytest.mark.parametrize("rate", [0.5, 2.0])
def test_binding_waiting_time(rate):
    program = compile_model(_pair_model(rate, 1.0))
    samples = [load(program, seed=seed).step()[0] for seed in range(10_000)]
    assert _within(samples, 1.0 / rate)


@pytest.mark.slow
@pytest.mark.parametrize("rate", [0.5, 2.0])
def test_unbinding_waiting_time(rate):
    program = compile_model(_pair_model(1.0, rate))
    samples = []
    for seed in range(10_000):
        state = load(program, seed=seed)
        state.step()
        dt, reaction = state.step()
        assert reaction.sender in ("A1", "B1")
        samples.append(dt)
    assert _within(samples, 1.0 / rate)


def test_fcr_listing_conserves_receptors():
    trace = load(read_spim(FCR_LISTING), seed=5).simulate(10.0, 20)
    fcr = [name for name in trace.columns if name.startswith("FcR")]
    igg = [name for name in trace.columns if name.startswith("IgG")]
    assert len(fcr) == 8
    assert (trace.select(tuple(fcr)).counts.sum(axis=1) == 1000).all()
    assert (trace.select(tuple(igg)).counts.sum(axis=1) == 1000).all()
