from enum import StrEnum
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, StringConstraints, model_validator

TOKEN_PATTERN = r"^[A-Za-z][A-Za-z0-9_]*$"

SpeciesName = Annotated[str, StringConstraints(pattern=TOKEN_PATTERN)]
SiteName = Annotated[str, StringConstraints(pattern=TOKEN_PATTERN)]
StateSet = frozenset[frozenset[str]]

PHOSPH_SPECIES = "Phosph"
PHOSPH_SITE = "phosph"
DEFAULT_RATE = 1.0


class SourceSpan(BaseModel):
    """1-based line and inclusive column range"""

    line: int = Field(ge=1)
    column_start: int = Field(ge=1)
    column_end: int = Field(ge=1)

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        return f"line {self.line}, columns {self.column_start}-{self.column_end}"


class SiteRef(BaseModel):
    species: SpeciesName
    site: SiteName | None = None

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        if self.site is None:
            return self.species
        return f"({self.species},{self.site})"


class SentenceKind(StrEnum):
    ASSOCIATION = "association"
    DISSOCIATION = "dissociation"
    TRANSFORMATION = "transformation"


class Sentence(BaseModel):
    """Core sentence: kind, body (left, right), conditions and rate"""

    kind: SentenceKind
    left: SiteRef
    right: SiteRef | None = None
    pos: frozenset[SiteRef] = frozenset()
    neg: frozenset[SiteRef] = frozenset()
    rate: float = Field(DEFAULT_RATE, gt=0, allow_inf_nan=False)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_body(self) -> "Sentence":
        if self.kind is SentenceKind.TRANSFORMATION:
            if self.left.site is not None or (
                self.right is not None and self.right.site is not None
            ):
                raise ValueError("transformation bodies carry no sites")
        else:
            if self.right is None or self.left.site is None or self.right.site is None:
                raise ValueError(f"{self.kind} bodies need a site on both sides")
        for ref in self.pos | self.neg:
            if ref.site is None:
                raise ValueError("condition entries need a site")
        return self

    @property
    def body(self) -> tuple[SiteRef, ...]:
        if self.right is None:
            return (self.left,)
        return (self.left, self.right)

    @property
    def is_binding(self) -> bool:
        return self.kind is not SentenceKind.TRANSFORMATION


class Model(BaseModel):
    """Ordered sentences plus the run settings baked into generated programs.

    `spans` runs parallel to `sentences` when the model comes from text.
    """

    sentences: tuple[Sentence, ...] = ()
    initial_counts: dict[SpeciesName, Annotated[int, Field(ge=0)]] = {}
    default_population: int = Field(1000, ge=0)
    sample_time: float = Field(10.0, gt=0)
    spans: tuple[SourceSpan | None, ...] = Field(default=(), repr=False)

    model_config = ConfigDict(frozen=True)

    def span_of(self, index: int) -> SourceSpan | None:
        if index < len(self.spans):
            return self.spans[index]
        return None

    def population(self, species: str) -> int:
        return self.initial_counts.get(species, self.default_population)

    def with_run_settings(
        self,
        sample_time: float | None = None,
        default_population: int | None = None,
        initial_counts: dict[str, int] | None = None,
    ) -> "Model":
        update: dict = {}
        if sample_time is not None:
            update["sample_time"] = sample_time
        if default_population is not None:
            update["default_population"] = default_population
        if initial_counts is not None:
            update["initial_counts"] = {**self.initial_counts, **initial_counts}
        return self.model_copy(update=update)


Production = Literal[
    "association",
    "dissociation",
    "phosphorylation",
    "dephosphorylation",
    "transformation",
    "decay",
]


class Condition(BaseModel):
    site: str
    species: str
    bound: bool
    span: SourceSpan | None = None

    model_config = ConfigDict(frozen=True)


class SurfaceSentence(BaseModel):
    """One parsed sentence before desugaring, fields as written"""

    production: Production
    left_species: str
    left_site: str | None = None
    right_species: str | None = None
    right_site: str | None = None
    rate: float | None = None
    conditions: tuple[Condition, ...] = ()
    span: SourceSpan | None = None

    model_config = ConfigDict(frozen=True)
