"""Exceptions raised by the pimlang pipeline.

Library code raises these; only the command line turns them into exit codes.
"""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from pimlang.schemas.diagnostics import Diagnostic, Violation


class PimError(Exception):
    """Base class of every pimlang error."""


class LexError(PimError):
    def __init__(self, diagnostic: "Diagnostic") -> None:
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


class ParseError(PimError):
    """Raised with every diagnostic collected while parsing a model."""

    def __init__(self, diagnostics: list["Diagnostic"]) -> None:
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.render() for d in diagnostics))


class ReservedSpeciesError(PimError):
    def __init__(self, species: str) -> None:
        super().__init__(f"species name {species!r} is reserved for phosphorylation")
        self.species = species


class InvalidModelError(PimError):
    """The model does not satisfy the sentence conditions."""

    def __init__(self, violations: list["Violation"]) -> None:
        self.violations = violations
        super().__init__(f"model has {len(violations)} condition violation(s)")


class StateCapExceeded(PimError):
    def __init__(self, species: str, species_states: int, total: int, cap: int) -> None:
        super().__init__(
            f"state cap {cap} exceeded: {total} states in total, "
            f"species {species} alone has {species_states}"
        )
        self.species = species
        self.total = total
        self.cap = cap


class UnknownSpeciesError(PimError):
    def __init__(self, species: list[str]) -> None:
        super().__init__(f"unknown species: {', '.join(species)}")
        self.species = species


class LintError(PimError):
    """A program that is not closed or not well-typed; carries every problem."""

    def __init__(self, problems: list[str]) -> None:
        self.problems = problems
        super().__init__(f"program has {len(problems)} lint problem(s)")


class SpimSyntaxError(PimError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UndefinedProcessError(PimError):
    def __init__(self, name: str) -> None:
        super().__init__(f"undefined process {name!r}")
        self.name = name


class SimulationError(PimError):
    pass
