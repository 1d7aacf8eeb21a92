"""Species and site tables, states and their enumeration order."""

from collections.abc import Iterable
from itertools import combinations

from pimlang.exc import StateCapExceeded
from pimlang.log import get_logger
from pimlang.schemas.model import Model, Sentence, SentenceKind, SiteRef, StateSet

log = get_logger(__name__)


def site_key(species: str, site: str) -> tuple[str, str]:
    """Sort key of the total site order: site name first, species breaks ties."""
    return (site, species)


def species_of(model: Model) -> tuple[str, ...]:
    """
    Species occurring in sentence bodies, in order of first occurrence.

    Species that only appear in conditions are not included.

    Args:
        model (Model): The model.

    Returns:
        tuple[str, ...]: Species names, first occurrence first.
    """
    seen: dict[str, None] = {}
    for sentence in model.sentences:
        for ref in sentence.body:
            seen.setdefault(ref.species, None)
    return tuple(seen)


def sites_of(model: Model, species: str) -> tuple[str, ...]:
    """
    Sites of a species drawn from sentence bodies, sorted by the site order.

    Args:
        model (Model): The model.
        species (str): Species name.

    Returns:
        tuple[str, ...]: Site names in ascending order.
    """
    found = {
        ref.site
        for sentence in model.sentences
        for ref in sentence.body
        if ref.species == species and ref.site is not None
    }
    return tuple(sorted(found))


def site_table(model: Model) -> dict[str, tuple[str, ...]]:
    return {species: sites_of(model, species) for species in species_of(model)}


def enumerate_states(sites: Iterable[str]) -> tuple[frozenset[str], ...]:
    """
    Powerset of `sites` in graded lexicographic order.

    States are ordered by size, then lexicographically on their sorted site lists,
    so for sites f, y, z the order is {}, {f}, {y}, {z}, {f,y}, {f,z}, {y,z}, {f,y,z}.
    """
    ordered = sorted(sites)
    return tuple(
        frozenset(combo)
        for size in range(len(ordered) + 1)
        for combo in combinations(ordered, size)
    )


def state_index(sites: Iterable[str], state: frozenset[str]) -> int:
    return enumerate_states(sites).index(state)


def state_name(species: str, index: int) -> str:
    return f"{species}{index}"


def _states(
    sites: tuple[str, ...], species: str, pos: frozenset[SiteRef], neg: frozenset[SiteRef]
) -> StateSet:
    required = {ref.site for ref in pos if ref.species == species}
    forbidden = {ref.site for ref in neg if ref.species == species}
    return frozenset(
        state
        for state in enumerate_states(sites)
        if required <= state and not (state & forbidden)
    )


def states(
    model: Model, species: str, pos: frozenset[SiteRef], neg: frozenset[SiteRef]
) -> StateSet:
    """
    States of `species` compatible with a sentence's conditions.

    A state is a set of bound sites. It qualifies when it contains every site of the
    species in `pos` and none of those in `neg`.

    Args:
        model (Model): The model, which fixes the site table.
        species (str): Species name.
        pos (frozenset[SiteRef]): Sites required to be bound.
        neg (frozenset[SiteRef]): Sites required to be unbound.

    Returns:
        StateSet: The qualifying subsets of `sites_of(model, species)`.
    """
    return _states(sites_of(model, species), species, pos, neg)


def sentence_states(
    sites: dict[str, tuple[str, ...]], sentence: Sentence
) -> tuple[StateSet, StateSet]:
    """
    States of the left and right body species of a sentence.

    A decay has no right species; its right state set is `{{}}`.
    """
    left_species = sentence.left.species
    left = _states(sites.get(left_species, ()), left_species, sentence.pos, sentence.neg)
    if sentence.right is None:
        return left, frozenset({frozenset()})
    right_species = sentence.right.species
    if sentence.kind is SentenceKind.TRANSFORMATION:
        return left, frozenset(enumerate_states(sites.get(right_species, ())))
    right = _states(
        sites.get(right_species, ()), right_species, sentence.pos, sentence.neg
    )
    return left, right


def count_states(model: Model) -> dict[str, int]:
    """Number of states (2 to the number of sites) of every species."""
    return {species: 2 ** len(sites) for species, sites in site_table(model).items()}


def check_state_cap(model: Model, cap: int) -> int:
    """
    Checks the total number of species states against `cap`.

    Args:
        model (Model): The model.
        cap (int): Maximum number of states summed over all species.

    Returns:
        int: The total number of states.

    Raises:
        StateCapExceeded: Naming the species with the most states.
    """
    counts = count_states(model)
    total = sum(counts.values())
    log.debug("model has %d species states in total", total)
    if total > cap:
        worst = max(counts, key=lambda species: counts[species])
        raise StateCapExceeded(worst, counts[worst], total, cap)
    return total


def state_sort_key(state: frozenset[str]) -> tuple[int, list[str]]:
    """Sort key giving the graded lexicographic order of `enumerate_states`."""
    return (len(state), sorted(state))
