"""Command line entry point.

    pimlang validate MODEL
    pimlang compile MODEL [-o OUT.spim] [--dump-map]
    pimlang simulate MODEL|PROGRAM -o OUT.csv [--engine generated|direct]
    pimlang diff MODEL

Exit status is 0 on success, 1 when the model is rejected or the engines
disagree, and 2 when the input cannot be read or parsed, a program fails the lint
check or a count names an unknown species.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from pimlang.compiler.codegen import generate
from pimlang.compiler.compile_map import build_compile_map, dump_compile_map
from pimlang.compiler.lint import lint
from pimlang.compiler.render import render
from pimlang.compiler.spim_reader import load_spim
from pimlang.config import settings
from pimlang.core.sites import count_states, species_of
from pimlang.exc import (
    InvalidModelError,
    LintError,
    ParseError,
    PimError,
    SpimSyntaxError,
    UnknownSpeciesError,
)
from pimlang.log import get_logger, set_level
from pimlang.parser import load_model
from pimlang.schemas.model import Model
from pimlang.schemas.pi import PiProgram
from pimlang.schemas.run import Engine, RunConfig
from pimlang.sim.engines import DirectEngine, GeneratedEngine, compile_model, diff
from pimlang.sim.trace import summarize, write_csv
from pimlang.validator import format_violation, validate

log = get_logger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2

SPIM_SUFFIX = ".spim"


def _species_count(text: str) -> tuple[str, int]:
    species, sep, number = text.partition("=")
    if not sep or not species or not number.isdigit():
        raise argparse.ArgumentTypeError(f"expected SPECIES=N, got {text!r}")
    return species, int(number)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.PROJECT_NAME, description=settings.DESCRIPTION
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {settings.VERSION}"
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help)
        sub.add_argument("input", type=Path)
        sub.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
        return sub

    def run_options(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--time", dest="sample_time", type=float)
        sub.add_argument("--population", type=int, default=settings.POPULATION)
        sub.add_argument(
            "--count", dest="counts", type=_species_count, action="append", default=[]
        )
        sub.add_argument("--state-cap", type=int, default=settings.STATE_CAP)

    command("validate", "check the sentence conditions")

    compile_ = command("compile", "write the SPiM program of a model")
    compile_.add_argument("-o", "--output", type=Path)
    compile_.add_argument("--dump-map", action="store_true")
    run_options(compile_)

    simulate = command("simulate", "simulate a model or a SPiM program")
    simulate.add_argument("-o", "--output", type=Path, required=True)
    simulate.add_argument(
        "--engine", type=Engine, choices=list(Engine), default=Engine.DIRECT
    )
    simulate.add_argument("--points", type=int, default=settings.SAMPLE_POINTS)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--replicates", type=int, default=settings.REPLICATES)
    simulate.add_argument("--workers", type=int, default=settings.WORKERS)
    run_options(simulate)

    diff_ = command("diff", "compare both engines on a model")
    diff_.add_argument("--points", type=int, default=settings.SAMPLE_POINTS)
    diff_.add_argument("--seed", type=int, default=0)
    diff_.add_argument("--replicates", type=int, default=settings.DIFF_REPLICATES)
    diff_.add_argument("--workers", type=int, default=settings.WORKERS)
    diff_.add_argument("--threshold", type=float, default=settings.Z_THRESHOLD)
    run_options(diff_)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    values = {
        key: value
        for key, value in vars(args).items()
        if key in RunConfig.model_fields and value is not None
    }
    values["counts"] = dict(values.get("counts", []))
    return RunConfig(**values)


def _load(config: RunConfig) -> Model:
    model = load_model(config.input)
    unknown = sorted(set(config.counts) - set(species_of(model)))
    if unknown:
        raise UnknownSpeciesError(unknown)
    return model.with_run_settings(
        sample_time=config.sample_time or settings.SAMPLE_TIME,
        default_population=config.population,
        initial_counts=config.counts,
    )


def _linted(program: PiProgram) -> PiProgram:
    problems = lint(program)
    if problems:
        raise LintError(problems)
    return program


def _report_violations(error: InvalidModelError) -> int:
    for violation in error.violations:
        print(format_violation(violation))
    return EXIT_REJECTED


def cmd_validate(config: RunConfig) -> int:
    violations = validate(load_model(config.input))
    if violations:
        raise InvalidModelError(violations)
    print("model OK")
    return EXIT_OK


def cmd_compile(config: RunConfig) -> int:
    model = _load(config)
    cmap = build_compile_map(model, config.state_cap)
    text = render(_linted(generate(cmap, model, config.state_cap)))
    summary = [f"{species}: {n} states" for species, n in count_states(model).items()]
    if config.output is None:
        sys.stdout.write(text)
        for line in summary:
            print(line, file=sys.stderr)
    else:
        config.output.write_text(text, encoding="utf-8")
        print("\n".join(summary))
    if config.dump_map:
        sys.stderr.write(dump_compile_map(cmap))
    log.info("compiled %s", config.input)
    return EXIT_OK


def cmd_simulate(config: RunConfig) -> int:
    if config.input.suffix == SPIM_SUFFIX:
        if config.engine is not Engine.GENERATED:
            print(
                "error: SPiM programs run on the generated engine only", file=sys.stderr
            )
            return EXIT_INPUT
        program = _linted(load_spim(config.input))
        until = config.sample_time or program.sample_time
        engine = GeneratedEngine(program, until, config.points)
    else:
        model = _load(config)
        until = model.sample_time
        if config.engine is Engine.GENERATED:
            engine = GeneratedEngine(
                compile_model(model, config.state_cap), until, config.points
            )
        else:
            engine = DirectEngine(model, until, config.points)

    traces = engine.replicates(config.replicates, config.seed, config.workers)
    if len(traces) == 1:
        write_csv(traces[0], config.output)
    else:
        mean, stderr = summarize(traces)
        write_csv(mean, config.output)
        write_csv(stderr, config.output.with_suffix(".stderr.csv"))
    log.info("wrote %d replicate(s) to %s", len(traces), config.output)
    return EXIT_OK


def cmd_diff(config: RunConfig) -> int:
    model = _load(config)
    report = diff(
        model,
        points=config.points,
        replicates=config.replicates,
        seed=config.seed,
        workers=config.workers,
        threshold=config.threshold,
        state_cap=config.state_cap,
    )
    width = max((len(c.column) for c in report.columns), default=6)
    for column in report.columns:
        print(f"{column.column:<{width}}  max |z| = {column.max_z:.3f}")
    if report.closed_form is not None:
        for engine, z in report.closed_form.items():
            print(f"closed form vs {engine}: max |z| = {z:.3f}")
    verdict = "agree" if report.passed else "disagree"
    print(
        f"engines {verdict} (threshold {report.threshold}, "
        f"{report.replicates} replicates)"
    )
    return EXIT_OK if report.passed else EXIT_REJECTED


COMMANDS = {
    "validate": cmd_validate,
    "compile": cmd_compile,
    "simulate": cmd_simulate,
    "diff": cmd_diff,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    set_level("DEBUG" if args.verbose else settings.resolve_log_level())
    try:
        config = _config(args)
        return COMMANDS[config.command](config)
    except ValidationError as err:
        print(f"error: invalid options: {err}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as err:
        for diagnostic in err.diagnostics:
            print(diagnostic.render(), file=sys.stderr)
        return EXIT_INPUT
    except SpimSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except LintError as err:
        for problem in err.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownSpeciesError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidModelError as err:
        return _report_violations(err)
    except PimError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_REJECTED
