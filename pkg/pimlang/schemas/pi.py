"""Abstract syntax of the generated stochastic pi-calculus subset."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

NIL_CHANNEL = "nil"


class Scope(StrEnum):
    GLOBAL = "global"
    LOCAL = "local"


class ActionKind(StrEnum):
    OUTPUT = "output"
    INPUT = "input"
    DELAY = "delay"


class ChannelDecl(BaseModel):
    """`new name@rate:chan` or, with arity n > 0, `new name@rate:chan(chan,...)`"""

    name: str
    rate: float = Field(ge=0)
    arity: int = Field(0, ge=0)
    scope: Scope = Scope.LOCAL

    model_config = ConfigDict(frozen=True)


class Call(BaseModel):
    process: str
    args: tuple[str, ...] = ()

    model_config = ConfigDict(frozen=True)


class Action(BaseModel):
    """One guarded branch of a summation.

    `payload` holds the sent names of an output or the bound names of an input.
    A `None` continuation is the terminated process `()`.
    """

    kind: ActionKind
    channel: str | None = None
    payload: tuple[str, ...] = ()
    weight: float | None = None
    rate: float | None = None
    continuation: Call | None = None

    model_config = ConfigDict(frozen=True)


class ProcessDef(BaseModel):
    name: str
    params: tuple[str, ...] = ()
    locals: tuple[ChannelDecl, ...] = ()
    body: tuple[Action, ...] = ()

    model_config = ConfigDict(frozen=True)


class DefinitionGroup(BaseModel):
    """Definitions chained by one `let ... and ...` block"""

    species: str
    definitions: tuple[ProcessDef, ...]

    model_config = ConfigDict(frozen=True)


class RunStatement(BaseModel):
    count: int = Field(ge=0)
    process: str

    model_config = ConfigDict(frozen=True)


class PiProgram(BaseModel):
    sample_time: float = Field(gt=0)
    plot: tuple[str, ...] = ()
    globals: tuple[ChannelDecl, ...] = ()
    groups: tuple[DefinitionGroup, ...] = ()
    runs: tuple[RunStatement, ...] = ()

    model_config = ConfigDict(frozen=True)

    @property
    def definitions(self) -> tuple[ProcessDef, ...]:
        return tuple(d for group in self.groups for d in group.definitions)

    def definition(self, name: str) -> ProcessDef:
        for definition in self.definitions:
            if definition.name == name:
                return definition
        raise KeyError(name)
