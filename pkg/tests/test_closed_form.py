import numpy as np
import pytest

from pimlang.exc import SimulationError
from pimlang.parser import parse
from pimlang.sim.closed_form import (
    closed_form_means,
    generator_matrix,
    is_transformation_only,
)
from pimlang.sim.trace import sample_grid
from tests.utils import BIND_DECAY_MODEL, CHAIN_MODEL, DECAY_MODEL, FCR_MODEL


@pytest.mark.parametrize(
    "text, expected",
    [
        (DECAY_MODEL, True),
        (CHAIN_MODEL, True),
        (BIND_DECAY_MODEL, False),
        (FCR_MODEL, False),
    ],
)
def test_is_transformation_only(text, expected):
    assert is_transformation_only(parse(text)) is expected


def test_generator_matrix():
    species, q = generator_matrix(parse(CHAIN_MODEL))
    assert species == ("A", "B", "C")
    assert np.allclose(q, [[-1.0, 1.0, 0.0], [0.0, -0.5, 0.5], [0.0, 0.0, -0.25]])


def test_decay_means():
    times = sample_grid(4.0, 4)
    means = closed_form_means(parse(DECAY_MODEL), times)
    assert means.columns == ("A0",)
    assert np.allclose(means.column("A0"), 1000 * np.exp(-0.5 * times))


def test_chain_means():
    times = sample_grid(3.0, 6)
    model = parse(CHAIN_MODEL).with_run_settings(
        default_population=100, initial_counts={"B": 0, "C": 0}
    )
    means = closed_form_means(model, times)
    assert np.allclose(means.column("A0"), 100 * np.exp(-times))
    assert np.allclose(
        means.column("B0"), 200 * (np.exp(-0.5 * times) - np.exp(-times))
    )
    assert means.column("C0")[0] == pytest.approx(0.0, abs=1e-9)
    assert np.all(means.counts.sum(axis=1) <= 100.0 + 1e-9)


def test_initial_counts_per_species():
    model = parse(CHAIN_MODEL).with_run_settings(
        default_population=0, initial_counts={"B": 10}
    )
    means = closed_form_means(model, np.array([0.0, 2.0]))
    assert means.counts[0].tolist() == [0.0, 10.0, 0.0]
    assert means.column("B0")[1] == pytest.approx(10 * np.exp(-1.0))


def test_binding_models_have_no_closed_form():
    with pytest.raises(SimulationError):
        closed_form_means(parse(BIND_DECAY_MODEL), sample_grid(1.0, 2))
