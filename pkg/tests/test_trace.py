import numpy as np
import pytest

from pimlang.exc import SimulationError
from pimlang.schemas.trace import TraceTable
from pimlang.sim.trace import read_csv, sample_grid, summarize, write_csv, z_scores


def _trace(counts, columns=("A0", "B0"), until=1.0) -> TraceTable:
    counts = np.asarray(counts)
    return TraceTable(
        times=sample_grid(until, len(counts) - 1), columns=columns, counts=counts
    )


def test_sample_grid():
    assert list(sample_grid(2.0, 4)) == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert len(sample_grid(10.0, 20)) == 21


def test_trace_shape_is_checked():
    with pytest.raises(ValueError):
        TraceTable(times=sample_grid(1.0, 2), columns=("A0",), counts=np.zeros((3, 2)))


def test_write_csv(tmp_path):
    path = tmp_path / "out.csv"
    write_csv(_trace([[10, 0], [7, 3], [5, 5]]), path)
    assert path.read_text() == "time,A0,B0\n0.0,10,0\n0.5,7,3\n1.0,5,5\n"


def test_write_csv_means(tmp_path):
    path = tmp_path / "mean.csv"
    write_csv(_trace([[2.0, 0.25], [1.5, 3.0]]), path)
    assert path.read_text() == "time,A0,B0\n0.0,2,0.25\n1.0,1.5,3\n"


def test_read_csv(tmp_path):
    path = tmp_path / "out.csv"
    written = _trace([[10, 0], [7, 3], [5, 5]])
    write_csv(written, path)
    trace = read_csv(path)
    assert trace.columns == ("A0", "B0")
    assert np.array_equal(trace.times, written.times)
    assert np.array_equal(trace.counts, written.counts)


def test_read_csv_rejects_other_files(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(SimulationError):
        read_csv(path)


def test_summarize():
    mean, stderr = summarize([_trace([[1, 4], [1, 0]]), _trace([[3, 4], [1, 2]])])
    assert np.array_equal(mean.counts, [[2.0, 4.0], [1.0, 1.0]])
    assert np.allclose(stderr.counts, [[1.0, 0.0], [0.0, 1.0]])


def test_summarize_single_replicate():
    mean, stderr = summarize([_trace([[1, 4], [1, 0]])])
    assert np.array_equal(mean.counts, [[1.0, 4.0], [1.0, 0.0]])
    assert not stderr.counts.any()


@pytest.mark.parametrize(
    "traces",
    [
        [],
        [_trace([[1, 4], [1, 0]]), _trace([[1, 4], [1, 0]], columns=("A0", "A1"))],
        [_trace([[1, 4], [1, 0]]), _trace([[1, 4], [1, 0]], until=2.0)],
    ],
)
def test_summarize_rejects(traces):
    with pytest.raises(SimulationError):
        summarize(traces)


def test_z_scores():
    mean_a, mean_b = _trace([[3.0, 1.0]]), _trace([[0.0, 1.0]])
    se_a, se_b = _trace([[1.0, 0.0]]), _trace([[1.0, 0.0]])
    z = z_scores(mean_a, se_a, mean_b, se_b)
    assert z[0, 0] == pytest.approx(3.0 / np.sqrt(2.0))
    assert z[0, 1] == 0.0


def test_z_scores_zero_error_with_different_means():
    zero = _trace([[0.0, 0.0]])
    z = z_scores(_trace([[1.0, 2.0]]), zero, _trace([[1.0, 0.0]]), zero)
    assert z[0, 0] == 0.0
    assert np.isinf(z[0, 1])


def test_z_scores_need_the_same_columns():
    other = _trace([[0.0, 0.0]], columns=("A0", "C0"))
    same = _trace([[0.0, 0.0]])
    with pytest.raises(SimulationError):
        z_scores(same, same, other, other)
