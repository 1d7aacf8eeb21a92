"""Private dissociation channels: which exist, their rates and their names.

Each bound site carries one channel per dissociation sentence that can release it,
declared at half the sentence rate because both partners offer both polarities.
A site no dissociation sentence mentions carries a single default channel at 1.0.
"""

from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, Field

from pimlang.core.sites import site_key
from pimlang.schemas.model import Model, Sentence, SentenceKind, SiteRef

DEFAULT_CHANNEL_RATE = 1.0


class ChannelSlot(BaseModel):
    """(site, rate, label); `sentence` is the dissociation sentence label, or None
    for the default channel."""

    site: str
    rate: float = Field(gt=0)
    label: int = Field(ge=1)
    sentence: int | None = None

    model_config = ConfigDict(frozen=True)


def _dissociations(model: Model) -> list[tuple[int, Sentence]]:
    return [
        (label, sentence)
        for label, sentence in enumerate(model.sentences, start=1)
        if sentence.kind is SentenceKind.DISSOCIATION
    ]


def _slots(site: str, releasing: list[tuple[int, Sentence]]) -> tuple[ChannelSlot, ...]:
    if not releasing:
        return (ChannelSlot(site=site, rate=DEFAULT_CHANNEL_RATE, label=1),)
    return tuple(
        ChannelSlot(site=site, rate=sentence.rate / 2, label=index, sentence=label)
        for index, (label, sentence) in enumerate(releasing, start=1)
    )


def R_set(model: Model, species: str, site: str) -> tuple[ChannelSlot, ...]:
    """
    Channel slots a bound (species, site) carries, one per dissociation sentence
    mentioning it on either side, at half that sentence's rate.

    Args:
        model (Model): The model.
        species (str): Species name.
        site (str): Site name.

    Returns:
        tuple[ChannelSlot, ...]: Slots in sentence order, or the single default
            slot (site, 1.0, 1) when no dissociation sentence mentions the site.
    """
    ref = SiteRef(species=species, site=site)
    releasing = [(label, s) for label, s in _dissociations(model) if ref in s.body]
    return _slots(site, releasing)


def pair_channels(
    model: Model, species: str, site: str, partner: str, partner_site: str
) -> tuple[ChannelSlot, ...]:
    """
    Channels created when (species, site) binds (partner, partner_site).

    These are the slots of `R_set` whose dissociation sentence has exactly this
    body, keeping their labels. A pair no dissociation sentence releases gets the
    default slot.
    """
    pair = {SiteRef(species=species, site=site), SiteRef(species=partner, site=partner_site)}
    matching = tuple(
        slot
        for slot in R_set(model, species, site)
        if slot.sentence is not None
        and set(model.sentences[slot.sentence - 1].body) == pair
    )
    return matching or _slots(site, [])


def U_set(
    model: Model, species: str, site: str, partner: str, partner_site: str
) -> tuple[ChannelSlot, ...]:
    """
    Fresh channels (species, site) declares when binding (partner, partner_site).

    Only the side that comes first in the site order creates them, so the other
    side gets an empty tuple.
    """
    if site_key(species, site) < site_key(partner, partner_site):
        return pair_channels(model, species, site, partner, partner_site)
    return ()


def association_channel_name(sentence: Sentence, label: int) -> str:
    """`<first site><second site><label>` in site order, e.g. fi1 or ssr4."""
    first, second = sorted(
        (sentence.left, sentence.right), key=lambda ref: site_key(ref.species, ref.site)
    )
    return f"{first.site}{second.site}{label}"


def fresh_name(base: str, taken: set[str]) -> str:
    """`base`, or `base_2`, `base_3`, ... whichever is first not in `taken`."""
    name, counter = base, 1
    while name in taken:
        counter += 1
        name = f"{base}_{counter}"
    return name


class SlotNames:
    """Names of the channel slots of one species.

    A default slot is named after its site, the others get their label appended
    (f, s1). A name already taken by another slot or listed in `reserved` joins the
    label with an underscore instead, then gets a counter until it is free.
    """

    def __init__(
        self,
        species: str,
        slots: dict[str, tuple[ChannelSlot, ...]],
        reserved: Iterable[str] = (),
    ) -> None:
        self.species = species
        self._names: dict[tuple[str, int | None], str] = {}
        taken = set(reserved)
        for site in slots:
            self._names[site, None] = name = fresh_name(site, taken)
            taken.add(name)
        for site, site_slots in slots.items():
            for slot in site_slots:
                if slot.sentence is None:
                    continue
                name = f"{site}{slot.label}"
                if name in taken:
                    name = fresh_name(f"{site}_{slot.label}", taken)
                self._names[site, slot.sentence] = name
                taken.add(name)

    def name(self, slot: ChannelSlot) -> str:
        return self._names[slot.site, slot.sentence]
