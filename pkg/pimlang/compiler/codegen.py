"""Compile map to stochastic pi-calculus program.

Every species state S becomes one process definition whose parameters are the
private channels of the bound sites in S. Its body sums three kinds of branch.
Association branches exchange fresh private channels over the sentence's global
channel. Dissociation branches offer both polarities on a private channel. At
the empty state, delays perform the species' transformations.
"""

from pimlang.compiler.channels import (
    ChannelSlot,
    R_set,
    SlotNames,
    association_channel_name,
    fresh_name,
    pair_channels,
)
from pimlang.config import settings
from pimlang.core.sites import check_state_cap, site_key, state_index, state_name
from pimlang.log import get_logger
from pimlang.schemas.compile_map import CompileMap, Partner
from pimlang.schemas.model import Model, Sentence, SentenceKind
from pimlang.schemas.pi import (
    NIL_CHANNEL,
    Action,
    ActionKind,
    Call,
    ChannelDecl,
    DefinitionGroup,
    PiProgram,
    ProcessDef,
    RunStatement,
    Scope,
)

log = get_logger(__name__)

GLOBAL_CHANNEL_RATE = 1.0


def _association_weight(sentence: Sentence) -> float:
    return sentence.rate


def _global_names(model: Model) -> dict[int, str]:
    names: dict[int, str] = {}
    taken = {NIL_CHANNEL}
    for label, sentence in enumerate(model.sentences, start=1):
        if sentence.kind is not SentenceKind.ASSOCIATION:
            continue
        name = association_channel_name(sentence, label)
        if name in taken:
            first, second = sorted(
                sentence.body, key=lambda ref: site_key(ref.species, ref.site)
            )
            name = fresh_name(f"{first.site}_{second.site}_{label}", taken)
        names[label] = name
        taken.add(name)
    return names


def _same_sentence(slot: ChannelSlot, entries: tuple[ChannelSlot, ...]) -> bool:
    return any(slot.sentence == entry.sentence for entry in entries)


class _Generator:
    def __init__(self, cmap: CompileMap, model: Model) -> None:
        self.cmap = cmap
        self.model = model
        self.globals = _global_names(model)
        self.slots = {
            species: {site: R_set(model, species, site) for site in entry.sites}
            for species, entry in cmap.species.items()
        }
        reserved = set(self.globals.values()) | {NIL_CHANNEL}
        self.names = {
            species: SlotNames(species, slots, reserved)
            for species, slots in self.slots.items()
        }

    def params(self, species: str, state: frozenset[str]) -> tuple[str, ...]:
        names = self.names[species]
        return tuple(
            names.name(slot)
            for site in sorted(state)
            for slot in self.slots[species][site]
        )

    def process(self, species: str, state: frozenset[str]) -> str:
        return state_name(species, state_index(self.cmap[species].sites, state))

    def association(
        self, species: str, state: frozenset[str], site: str, partner: Partner
    ) -> tuple[Action, tuple[ChannelDecl, ...]]:
        sentence = self.model.sentences[partner.label - 1]
        names = self.names[species]
        entries = pair_channels(
            self.model, species, site, partner.species, partner.site
        )
        payload = tuple(names.name(entry) for entry in entries)

        bound = state | {site}
        args = []
        for bound_site in sorted(bound):
            for slot in self.slots[species][bound_site]:
                if bound_site != site or _same_sentence(slot, entries):
                    args.append(names.name(slot))
                else:
                    args.append(NIL_CHANNEL)
        continuation = Call(process=self.process(species, bound), args=tuple(args))

        channel = self.globals[partner.label]
        if site_key(species, site) < site_key(partner.species, partner.site):
            decls = tuple(
                ChannelDecl(name=name, rate=entry.rate)
                for name, entry in zip(payload, entries)
            )
            action = Action(
                kind=ActionKind.OUTPUT,
                channel=channel,
                payload=payload,
                weight=_association_weight(sentence),
                continuation=continuation,
            )
            return action, decls
        action = Action(
            kind=ActionKind.INPUT,
            channel=channel,
            payload=payload,
            continuation=continuation,
        )
        return action, ()

    def dissociation(
        self, species: str, state: frozenset[str], site: str, partner: Partner
    ) -> tuple[Action, Action]:
        slot = next(s for s in self.slots[species][site] if s.sentence == partner.label)
        released = state - {site}
        continuation = Call(
            process=self.process(species, released),
            args=self.params(species, released),
        )
        channel = self.names[species].name(slot)
        return (
            Action(kind=ActionKind.OUTPUT, channel=channel, continuation=continuation),
            Action(kind=ActionKind.INPUT, channel=channel, continuation=continuation),
        )

    def transformation(self, species: str) -> tuple[Action, ...]:
        actions = []
        for transform in self.cmap[species].at(frozenset()).transform:
            target = None
            if transform.target is not None:
                target = Call(process=state_name(transform.target, 0))
            actions.append(
                Action(kind=ActionKind.DELAY, rate=transform.rate, continuation=target)
            )
        return tuple(actions)

    def definition(self, species: str, state: frozenset[str]) -> ProcessDef:
        actions = self.cmap[species].at(state)
        body: list[Action] = []
        decls: dict[str, ChannelDecl] = {}
        for site, partners in actions.assoc.items():
            for partner in partners:
                action, fresh = self.association(species, state, site, partner)
                body.append(action)
                for decl in fresh:
                    decls.setdefault(decl.name, decl)
        for site, partners in actions.dissoc.items():
            for partner in partners:
                body.extend(self.dissociation(species, state, site, partner))
        if not state:
            body.extend(self.transformation(species))
        return ProcessDef(
            name=self.process(species, state),
            params=self.params(species, state),
            locals=tuple(decls.values()),
            body=tuple(body),
        )

    def global_decls(self) -> tuple[ChannelDecl, ...]:
        decls = []
        for label, name in self.globals.items():
            sentence = self.model.sentences[label - 1]
            entries = pair_channels(
                self.model,
                sentence.left.species,
                sentence.left.site,
                sentence.right.species,
                sentence.right.site,
            )
            decls.append(
                ChannelDecl(
                    name=name,
                    rate=GLOBAL_CHANNEL_RATE,
                    arity=len(entries),
                    scope=Scope.GLOBAL,
                )
            )
        decls.append(ChannelDecl(name=NIL_CHANNEL, rate=0.0, scope=Scope.GLOBAL))
        return tuple(decls)

    def program(self) -> PiProgram:
        groups = []
        plot: list[str] = []
        runs = []
        for species, entry in self.cmap.species.items():
            definitions = tuple(
                self.definition(species, actions.state) for actions in entry.actions
            )
            groups.append(DefinitionGroup(species=species, definitions=definitions))
            plot.extend(d.name for d in reversed(definitions))
            runs.append(
                RunStatement(
                    count=self.model.population(species),
                    process=state_name(species, 0),
                )
            )
        return PiProgram(
            sample_time=self.model.sample_time,
            plot=tuple(plot),
            globals=self.global_decls(),
            groups=tuple(groups),
            runs=tuple(runs),
        )


def association_actions(
    cmap: CompileMap, model: Model, species: str, state: frozenset[str], site: str
) -> list[Action]:
    """
    Association branches of `species` in `state` at `site`, one per partner.

    The side whose site comes first in the site order sends the fresh private
    channels with the sentence rate as weight; the other side receives them.

    Args:
        cmap (CompileMap): Compile map of `model`.
        model (Model): The validated model.
        species (str): Species name.
        state (frozenset[str]): Current bound sites, not containing `site`.
        site (str): The associating site.

    Returns:
        list[Action]: Outputs or inputs on the global association channels.
    """
    generator = _Generator(cmap, model)
    partners = cmap[species].at(state).assoc.get(site, ())
    return [generator.association(species, state, site, p)[0] for p in partners]


def dissociation_actions(
    cmap: CompileMap, model: Model, species: str, state: frozenset[str], site: str
) -> list[Action]:
    """Paired `!x; P` and `?x; P` branches for every partner that can release `site`."""
    generator = _Generator(cmap, model)
    partners = cmap[species].at(state).dissoc.get(site, ())
    return [
        action
        for partner in partners
        for action in generator.dissociation(species, state, site, partner)
    ]


def transformation_actions(cmap: CompileMap, model: Model, species: str) -> list[Action]:
    return list(_Generator(cmap, model).transformation(species))


def generate(
    cmap: CompileMap, model: Model, state_cap: int | None = None
) -> PiProgram:
    """
    Assembles the whole program: directives, global channels, one definition
    group per species with all of its states, and one run statement per species.

    Args:
        cmap (CompileMap): Compile map of `model`.
        model (Model): The validated model; supplies populations and sample time.
        state_cap (int | None): Maximum total number of species states. Defaults to
            `settings.STATE_CAP`.

    Returns:
        PiProgram: The generated program.

    Raises:
        StateCapExceeded: If the species have too many states in total.
    """
    check_state_cap(model, settings.STATE_CAP if state_cap is None else state_cap)
    program = _Generator(cmap, model).program()
    log.debug(
        "generated %d definitions over %d global channels",
        len(program.definitions),
        len(program.globals),
    )
    return program


B_set = association_actions
G_set = dissociation_actions
