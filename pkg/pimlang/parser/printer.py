from pimlang.core.sites import site_key
from pimlang.schemas.model import (
    PHOSPH_SITE,
    PHOSPH_SPECIES,
    Model,
    Sentence,
    SentenceKind,
    SiteRef,
)

_PHOSPH = SiteRef(species=PHOSPH_SPECIES, site=PHOSPH_SITE)


def _site(ref: SiteRef) -> str:
    return f"site {ref.site} on {ref.species}"


def _conditions(sentence: Sentence) -> str:
    implicit = frozenset(sentence.body)
    pos, neg = sentence.pos, sentence.neg
    if sentence.kind is SentenceKind.ASSOCIATION:
        neg = neg - implicit
    else:
        pos = pos - implicit
    entries = [(ref, "bound") for ref in pos] + [(ref, "unbound") for ref in neg]
    entries.sort(key=lambda entry: (site_key(entry[0].species, entry[0].site), entry[1]))
    if not entries:
        return ""
    return " if " + " and ".join(f"{_site(ref)} is {state}" for ref, state in entries)


def format_sentence(sentence: Sentence) -> str:
    """
    Writes one core sentence in canonical surface syntax.

    The rate is always written. Sentences binding to site `phosph` on `Phosph` come
    out as phosphorylation or dephosphorylation; conditions implied by the sentence
    kind are left out.
    """
    rate = f" with rate {sentence.rate!r}"
    match sentence.kind:
        case SentenceKind.TRANSFORMATION:
            if sentence.pos:
                raise ValueError("transformation conditions have no surface syntax")
            if sentence.right is None:
                return f"{sentence.left.species} decays{rate}"
            return f"{sentence.left.species} becomes {sentence.right.species}{rate}"
        case SentenceKind.ASSOCIATION if sentence.right == _PHOSPH:
            verb = "gets phosphorylated"
        case SentenceKind.DISSOCIATION if sentence.right == _PHOSPH:
            verb = "gets dephosphorylated"
        case SentenceKind.ASSOCIATION:
            verb = f"associates {_site(sentence.right)}"
        case _:
            verb = f"dissociates {_site(sentence.right)}"
    return f"{_site(sentence.left)} {verb}{rate}{_conditions(sentence)}"


def format_model(model: Model) -> str:
    """Canonical surface text of a model, one sentence per line."""
    return "".join(format_sentence(sentence) + "\n" for sentence in model.sentences)
