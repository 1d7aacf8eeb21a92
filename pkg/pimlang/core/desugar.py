"""Reduction of the six surface forms to association, dissociation and
transformation sentences."""

from collections.abc import Sequence

from pimlang.core.sites import sites_of
from pimlang.exc import ReservedSpeciesError
from pimlang.log import get_logger
from pimlang.schemas.model import (
    DEFAULT_RATE,
    PHOSPH_SITE,
    PHOSPH_SPECIES,
    Model,
    Sentence,
    SentenceKind,
    SiteRef,
    SourceSpan,
    SurfaceSentence,
)

log = get_logger(__name__)

_KINDS = {
    "association": SentenceKind.ASSOCIATION,
    "phosphorylation": SentenceKind.ASSOCIATION,
    "dissociation": SentenceKind.DISSOCIATION,
    "dephosphorylation": SentenceKind.DISSOCIATION,
    "transformation": SentenceKind.TRANSFORMATION,
    "decay": SentenceKind.TRANSFORMATION,
}


def _with_implicit_conditions(sentence: Sentence) -> Sentence:
    body = frozenset(sentence.body)
    if sentence.kind is SentenceKind.ASSOCIATION and not body <= sentence.neg:
        return sentence.model_copy(update={"neg": sentence.neg | body})
    if sentence.kind is SentenceKind.DISSOCIATION and not body <= sentence.pos:
        return sentence.model_copy(update={"pos": sentence.pos | body})
    return sentence


def _check_reserved(surface: SurfaceSentence) -> None:
    named = [surface.left_species, *(c.species for c in surface.conditions)]
    if surface.production in ("association", "dissociation", "transformation"):
        named.append(surface.right_species)
    for species in named:
        if species == PHOSPH_SPECIES:
            raise ReservedSpeciesError(species)


def desugar(sentence: SurfaceSentence | Sentence) -> Sentence:
    """
    Maps a surface sentence to a core sentence.

    Phosphorylation and dephosphorylation bind to and release site `phosph` on the
    reserved species `Phosph`, a decay is a transformation without target, and a
    missing rate becomes 1.0. Associations gain their body in Neg and dissociations
    in Pos. Core sentences pass through with those entries added, so the mapping is
    idempotent.

    Args:
        sentence (SurfaceSentence | Sentence): Parser output or a core sentence.

    Returns:
        Sentence: The core sentence.

    Raises:
        ReservedSpeciesError: If the text names the species `Phosph` itself.
    """
    if isinstance(sentence, Sentence):
        return _with_implicit_conditions(sentence)

    _check_reserved(sentence)
    kind = _KINDS[sentence.production]
    rate = DEFAULT_RATE if sentence.rate is None else sentence.rate
    pos = frozenset(
        SiteRef(species=c.species, site=c.site) for c in sentence.conditions if c.bound
    )
    neg = frozenset(
        SiteRef(species=c.species, site=c.site)
        for c in sentence.conditions
        if not c.bound
    )

    match sentence.production:
        case "transformation":
            left = SiteRef(species=sentence.left_species)
            right = SiteRef(species=sentence.right_species)
        case "decay":
            left, right = SiteRef(species=sentence.left_species), None
        case "phosphorylation" | "dephosphorylation":
            left = SiteRef(species=sentence.left_species, site=sentence.left_site)
            right = SiteRef(species=PHOSPH_SPECIES, site=PHOSPH_SITE)
        case _:
            left = SiteRef(species=sentence.left_species, site=sentence.left_site)
            right = SiteRef(species=sentence.right_species, site=sentence.right_site)

    core = Sentence(kind=kind, left=left, right=right, pos=pos, neg=neg, rate=rate)
    return _with_implicit_conditions(core)


def complete_model(
    sentences: Sequence[Sentence],
    spans: Sequence[SourceSpan | None] = (),
    **run_settings,
) -> Model:
    """
    Builds a model and gives each transformation its full Neg set.

    A transformation requires its source to be unbound at every site the model
    declares for it, which is only known once all sentences are read.

    Args:
        sentences (Sequence[Sentence]): Desugared sentences in textual order.
        spans (Sequence[SourceSpan | None]): Source spans parallel to `sentences`.
        **run_settings: Extra `Model` fields (sample_time, initial_counts, ...).

    Returns:
        Model: The completed model.
    """
    draft = Model(sentences=tuple(sentences))
    completed = []
    for sentence in sentences:
        if sentence.kind is SentenceKind.TRANSFORMATION:
            species = sentence.left.species
            unbound = frozenset(
                SiteRef(species=species, site=site)
                for site in sites_of(draft, species)
            )
            sentence = sentence.model_copy(update={"neg": sentence.neg | unbound})
        completed.append(sentence)
    log.debug("completed model with %d sentences", len(completed))
    return Model(sentences=tuple(completed), spans=tuple(spans), **run_settings)
