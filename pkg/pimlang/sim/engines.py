"""The two simulation engines behind one interface, and their comparison."""

import numpy as np

from pimlang.compiler.codegen import generate
from pimlang.compiler.compile_map import build_compile_map
from pimlang.config import settings
from pimlang.log import get_logger
from pimlang.schemas.model import Model
from pimlang.schemas.pi import PiProgram
from pimlang.schemas.run import ColumnDiff, DiffReport, Engine
from pimlang.schemas.trace import TraceTable
from pimlang.sim.closed_form import closed_form_means, is_transformation_only
from pimlang.sim.interpreter import load
from pimlang.sim.replicates import run_replicates
from pimlang.sim.rules import RuleSimulator
from pimlang.sim.trace import summarize, z_scores

log = get_logger(__name__)


def compile_model(model: Model, state_cap: int | None = None) -> PiProgram:
    """Compile map and code generation in one go; raises like both."""
    return generate(build_compile_map(model, state_cap), model, state_cap)


class SimulationEngine:
    """Base interface of an engine producing one trace per seed."""

    name: Engine

    def __init__(self, until: float, points: int) -> None:
        """
        Args:
            until (float): End time of every replicate.
            points (int): Number of sample intervals.
        """
        self.until = until
        self.points = points

    def run(self, seed: int | np.random.SeedSequence) -> TraceTable:
        raise NotImplementedError

    def replicates(self, count: int, seed: int, workers: int = 1) -> list[TraceTable]:
        log.debug("%s engine: %d replicate(s), seed %d", self.name, count, seed)
        return run_replicates(self.run, count, seed, workers)


class GeneratedEngine(SimulationEngine):
    """Executes a generated (or read) pi-calculus program."""

    name = Engine.GENERATED

    def __init__(self, program: PiProgram, until: float, points: int) -> None:
        super().__init__(until, points)
        self.program = program

    def run(self, seed: int | np.random.SeedSequence) -> TraceTable:
        return load(self.program, seed).simulate(self.until, self.points)


class DirectEngine(SimulationEngine):
    """Executes the sentences of a model directly."""

    name = Engine.DIRECT

    def __init__(self, model: Model, until: float, points: int) -> None:
        super().__init__(until, points)
        self.model = model

    def run(self, seed: int | np.random.SeedSequence) -> TraceTable:
        return RuleSimulator(self.model, seed).simulate(self.until, self.points)


def _closed_form_z(model: Model, mean: TraceTable, stderr: TraceTable) -> float:
    expected = closed_form_means(model, mean.times)
    columns = expected.columns
    zero = TraceTable(
        times=expected.times, columns=columns, counts=np.zeros_like(expected.counts)
    )
    z = z_scores(mean.select(columns), stderr.select(columns), expected, zero)
    return float(z.max(initial=0.0))


def diff(
    model: Model,
    until: float | None = None,
    points: int | None = None,
    replicates: int | None = None,
    seed: int = 0,
    workers: int | None = None,
    threshold: float | None = None,
    state_cap: int | None = None,
) -> DiffReport:
    """
    Runs both engines with matched replicates and compares their mean traces.

    The engines get independent seed trees derived from `seed`. Transformation-only
    models are also checked against their closed-form means.

    Args:
        model (Model): A valid model.
        until (float | None): End time. Defaults to the model's sample time.
        points (int | None): Sample intervals. Defaults to `settings.SAMPLE_POINTS`.
        replicates (int | None): Replicates per engine. Defaults to
            `settings.DIFF_REPLICATES`.
        seed (int): Root seed.
        workers (int | None): Threads. Defaults to `settings.WORKERS`.
        threshold (float | None): Largest acceptable |z|. Defaults to
            `settings.Z_THRESHOLD`.
        state_cap (int | None): Passed to compilation.

    Returns:
        DiffReport: Per-column maxima and the verdict.
    """
    until = model.sample_time if until is None else until
    points = settings.SAMPLE_POINTS if points is None else points
    replicates = settings.DIFF_REPLICATES if replicates is None else replicates
    workers = settings.WORKERS if workers is None else workers
    threshold = settings.Z_THRESHOLD if threshold is None else threshold

    program = compile_model(model, state_cap)
    generated_seed, direct_seed = np.random.SeedSequence(seed).generate_state(2)
    engines = (
        (GeneratedEngine(program, until, points), int(generated_seed)),
        (DirectEngine(model, until, points), int(direct_seed)),
    )
    summaries = {}
    for engine, engine_seed in engines:
        traces = engine.replicates(replicates, engine_seed, workers)
        summaries[engine.name] = summarize(traces)

    (g_mean, g_se), (d_mean, d_se) = summaries[Engine.GENERATED], summaries[Engine.DIRECT]
    columns = d_mean.columns
    z = z_scores(g_mean.select(columns), g_se.select(columns), d_mean, d_se)
    report_columns = tuple(
        ColumnDiff(column=name, max_z=float(z[:, i].max())) for i, name in enumerate(columns)
    )
    closed_form = None
    if is_transformation_only(model):
        closed_form = {
            name: _closed_form_z(model, mean, se) for name, (mean, se) in summaries.items()
        }
    report = DiffReport(
        replicates=replicates,
        threshold=threshold,
        columns=report_columns,
        closed_form=closed_form,
    )
    log.info("diff over %d replicates: max |z| = %.3f", replicates, report.max_z)
    return report
