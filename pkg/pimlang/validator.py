"""Sentence conditions 1-7 and the self-association/duplicate check (8)."""

from collections.abc import Iterator
from itertools import combinations

from pimlang.core.sites import sentence_states, site_key, site_table
from pimlang.log import get_logger
from pimlang.schemas.diagnostics import SELF_CHECK_CONDITION, Violation
from pimlang.schemas.model import Model, Sentence, SentenceKind, SiteRef, StateSet

log = get_logger(__name__)

CONDITION_TITLES = {
    1: "sentences contain relevant species",
    2: "conditions of the sentences are consistent",
    3: "all the sites in the conditions are declared in the model",
    4: "association sentences associate unbound species",
    5: "dissociation sentences dissociate bound species",
    6: "transformation sentences are unbound at all sites",
    7: "there are no overlapping conditions in the sentences",
    SELF_CHECK_CONDITION: "sentences are distinct and bind two different species",
}


def _refs(refs: frozenset[SiteRef]) -> str:
    return ", ".join(str(ref) for ref in sorted(refs, key=lambda r: (r.species, r.site)))


def _sentence_checks(
    sentence: Sentence, sites: dict[str, tuple[str, ...]]
) -> Iterator[tuple[int, str]]:
    body_species = {ref.species for ref in sentence.body}
    conditions = sentence.pos | sentence.neg

    strangers = {ref for ref in conditions if ref.species not in body_species}
    if strangers:
        yield 1, f"conditions mention species outside the body: {_refs(strangers)}"

    if both := sentence.pos & sentence.neg:
        yield 2, f"required both bound and unbound: {_refs(both)}"

    undeclared = {
        ref
        for ref in conditions
        if ref.species in body_species and ref.site not in sites.get(ref.species, ())
    }
    if undeclared:
        yield 3, f"sites not declared in any sentence body: {_refs(undeclared)}"

    body = frozenset(sentence.body)
    match sentence.kind:
        case SentenceKind.ASSOCIATION if missing := body - sentence.neg:
            yield 4, f"associated sites not required unbound: {_refs(missing)}"
        case SentenceKind.DISSOCIATION if missing := body - sentence.pos:
            yield 5, f"dissociated sites not required bound: {_refs(missing)}"
        case SentenceKind.TRANSFORMATION:
            source = sentence.left.species
            unbound = frozenset(
                SiteRef(species=source, site=site) for site in sites.get(source, ())
            )
            if sentence.pos or sentence.neg != unbound:
                yield 6, (
                    f"transformation of {source} must require exactly its sites "
                    f"{{{_refs(unbound)}}} unbound and nothing bound"
                )

    if sentence.is_binding and sentence.left.species == sentence.right.species:
        yield SELF_CHECK_CONDITION, (
            f"self-association of {sentence.left.species} is not supported"
        )


def _canonical(
    sentence: Sentence, left: StateSet, right: StateSet
) -> tuple[tuple, StateSet, StateSet]:
    """Body key in site order, with the state sets swapped along with the body."""
    if not sentence.is_binding:
        target = sentence.right.species if sentence.right else None
        return (sentence.kind, sentence.left.species, target), left, right
    a, b = sentence.left, sentence.right
    if site_key(b.species, b.site) < site_key(a.species, a.site):
        return (sentence.kind, b, a), right, left
    return (sentence.kind, a, b), left, right


def _overlap(
    first: tuple[StateSet, StateSet], second: tuple[StateSet, StateSet]
) -> bool:
    (a1, b1), (a2, b2) = first, second
    if a1 == a2:
        return bool(b1 & b2)
    if b1 == b2:
        return bool(a1 & a2)
    return bool(a1 & a2) or bool(b1 & b2)


def validate(model: Model) -> list[Violation]:
    """
    Checks every sentence condition and reports all violations together.

    Conditions 1-6 are checked per sentence. Condition 7 compares every pair of
    same-kind sentences with the same body (after ordering the body by site order)
    through their state sets; sentences already failing 1-3 are left out of it.
    Check 8 rejects self-associations and duplicate sentences.

    Args:
        model (Model): A parsed and desugared model.

    Returns:
        list[Violation]: Ordered by first sentence label, then condition number;
            empty when the model is valid.
    """
    sites = site_table(model)
    violations: list[Violation] = []
    comparable: dict[tuple, list[tuple[int, StateSet, StateSet]]] = {}
    first_seen: dict[Sentence, int] = {}

    for label, sentence in enumerate(model.sentences, start=1):
        found = list(_sentence_checks(sentence, sites))
        if sentence in first_seen:
            found.append(
                (
                    SELF_CHECK_CONDITION,
                    f"duplicate of sentence {first_seen[sentence]}",
                )
            )
        first_seen.setdefault(sentence, label)
        for condition, message in found:
            violations.append(
                Violation(
                    condition=condition,
                    sentences=(label,),
                    message=message,
                    span=model.span_of(label - 1),
                )
            )
        if any(condition <= 3 for condition, _ in found):
            continue
        key, left, right = _canonical(sentence, *sentence_states(sites, sentence))
        comparable.setdefault(key, []).append((label, left, right))

    for group in comparable.values():
        for (i, a1, b1), (j, a2, b2) in combinations(group, 2):
            if _overlap((a1, b1), (a2, b2)):
                violations.append(
                    Violation(
                        condition=7,
                        sentences=(i, j),
                        message=f"sentences {i} and {j} apply to overlapping states",
                        span=model.span_of(i - 1),
                    )
                )

    violations.sort(key=lambda v: (v.sentences[0], v.condition, v.sentences))
    log.debug("validated %d sentences: %d violations", len(model.sentences), len(violations))
    return violations


def format_violation(violation: Violation) -> str:
    """Renders `condition N: <message> at line L` (without line when unknown)."""
    text = (
        f"condition {violation.condition}: "
        f"{CONDITION_TITLES[violation.condition]}: {violation.message}"
    )
    if violation.span is not None:
        text += f" at line {violation.span.line}"
    return text
