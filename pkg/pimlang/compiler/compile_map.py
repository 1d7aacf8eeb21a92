from pimlang.config import settings
from pimlang.core.sites import (
    check_state_cap,
    enumerate_states,
    sentence_states,
    site_table,
    state_sort_key,
)
from pimlang.exc import InvalidModelError
from pimlang.log import get_logger
from pimlang.schemas.compile_map import (
    CompileMap,
    Partner,
    SpeciesActions,
    StateActions,
    Transform,
)
from pimlang.schemas.model import Model, SentenceKind, StateSet
from pimlang.validator import validate

log = get_logger(__name__)


def build_compile_map(model: Model, state_cap: int | None = None) -> CompileMap:
    """
    Builds the per-species, per-state action tables of a valid model.

    For every species A, state S and site a, the association partners of (A,a) are
    the other body sides of the association sentences naming (A,a) whose state set
    for A contains S; dissociation partners likewise. Transformations of A are
    listed at the empty state only. Partners carry the originating sentence label.

    Args:
        model (Model): A model without violations.
        state_cap (int | None): Maximum total number of species states. Defaults
            to `settings.STATE_CAP`.

    Returns:
        CompileMap: One entry per species with all 2^n states in graded
            lexicographic order.

    Raises:
        InvalidModelError: If the model violates a sentence condition.
        StateCapExceeded: If the species have too many states in total.
    """
    violations = validate(model)
    if violations:
        raise InvalidModelError(violations)
    check_state_cap(model, settings.STATE_CAP if state_cap is None else state_cap)

    sites = site_table(model)
    labelled = [
        (label, sentence, sentence_states(sites, sentence))
        for label, sentence in enumerate(model.sentences, start=1)
    ]

    species_actions = {}
    for species, species_sites in sites.items():
        entries = []
        for state in enumerate_states(species_sites):
            assoc: dict[str, list[Partner]] = {}
            dissoc: dict[str, list[Partner]] = {}
            transform: list[Transform] = []
            for label, sentence, (left_states, right_states) in labelled:
                if sentence.kind is SentenceKind.TRANSFORMATION:
                    if sentence.left.species == species and not state:
                        target = sentence.right.species if sentence.right else None
                        transform.append(
                            Transform(target=target, rate=sentence.rate, label=label)
                        )
                    continue
                table = assoc if sentence.kind is SentenceKind.ASSOCIATION else dissoc
                sides = (
                    (sentence.left, left_states, sentence.right, right_states),
                    (sentence.right, right_states, sentence.left, left_states),
                )
                for own, own_states, other, other_states in sides:
                    if own.species != species or state not in own_states:
                        continue
                    table.setdefault(own.site, []).append(
                        Partner(
                            species=other.species,
                            site=other.site,
                            states=other_states,
                            rate=sentence.rate,
                            label=label,
                        )
                    )
            entries.append(
                StateActions(
                    state=state,
                    assoc={s: tuple(assoc[s]) for s in species_sites if s in assoc},
                    dissoc={s: tuple(dissoc[s]) for s in species_sites if s in dissoc},
                    transform=tuple(transform),
                )
            )
        species_actions[species] = SpeciesActions(
            species=species, sites=species_sites, actions=tuple(entries)
        )
        log.debug("%s: %d states", species, len(entries))
    return CompileMap(species=species_actions)


def _state(state: frozenset[str]) -> str:
    return "{" + ",".join(sorted(state)) + "}"


def _state_set(states: StateSet) -> str:
    ordered = sorted(states, key=state_sort_key)
    return "{" + ",".join(_state(s) for s in ordered) + "}"


def _partners(table: dict[str, tuple[Partner, ...]]) -> str:
    items = []
    for site, partners in table.items():
        listed = ", ".join(
            f"({p.species},{p.site},{_state_set(p.states)},{p.rate!r})"
            for p in partners
        )
        items.append(f"({site}, {{{listed}}})")
    return "{" + ", ".join(items) + "}"


def dump_compile_map(cmap: CompileMap) -> str:
    """Pretty-prints a compile map as nested tuples, one state per line."""
    lines = []
    for species, entry in cmap.species.items():
        lines.append(f"<{species}, {{")
        for actions in entry.actions:
            transform = ", ".join(
                f"({t.target if t.target else ''},{t.rate!r})" for t in actions.transform
            )
            lines.append(
                f"  <{_state(actions.state)}, {_partners(actions.assoc)}, "
                f"{_partners(actions.dissoc)}, {{{transform}}}>"
            )
        lines.append("}>")
    return "\n".join(lines) + "\n"
