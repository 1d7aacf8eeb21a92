"""Direct stochastic simulation of the sentences over agents with explicit bonds.

Agents are pooled by (species, bound sites) and bonds by (body, endpoint states),
so every sentence's propensity is a product or sum of pool sizes. Bodies are kept
in site order, the same orientation the validator compares sentences in.
"""

from collections.abc import Iterator
from itertools import count, product
from typing import NamedTuple

import numpy as np

from pimlang.core.sites import (
    enumerate_states,
    sentence_states,
    site_key,
    site_table,
    state_name,
    state_sort_key,
)
from pimlang.exc import InvalidModelError, SimulationError
from pimlang.log import get_logger
from pimlang.schemas.model import Model, SentenceKind, SiteRef
from pimlang.schemas.trace import TraceTable
from pimlang.sim.trace import sample_grid
from pimlang.validator import validate

log = get_logger(__name__)

Pair = tuple[SiteRef, SiteRef]


class IndexedPool:
    """Set of integers with O(1) add, remove and uniform choice in insertion order."""

    def __init__(self) -> None:
        self._items: list[int] = []
        self._index: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[int]:
        return iter(self._items)

    def __contains__(self, item: int) -> bool:
        return item in self._index

    def add(self, item: int) -> None:
        self._index[item] = len(self._items)
        self._items.append(item)

    def remove(self, item: int) -> None:
        position = self._index.pop(item)
        last = self._items.pop()
        if position < len(self._items):
            self._items[position] = last
            self._index[last] = position

    def pick(self, rng: np.random.Generator) -> int:
        return self._items[int(rng.integers(len(self._items)))]


class Agent:
    __slots__ = ("id", "species", "bonds")

    def __init__(self, id: int, species: str, sites: tuple[str, ...]) -> None:
        self.id = id
        self.species = species
        self.bonds: dict[str, int | None] = dict.fromkeys(sites)

    @property
    def state(self) -> frozenset[str]:
        return frozenset(site for site, bond in self.bonds.items() if bond is not None)


class Bond(NamedTuple):
    """Endpoints in site order: `first` carries the smaller site."""

    pair: Pair
    first: int
    second: int


class RuleMatch(NamedTuple):
    label: int
    matches: int
    propensity: float


class _Rule(NamedTuple):
    label: int
    kind: SentenceKind
    rate: float
    pair: Pair | None
    first: tuple[frozenset[str], ...]
    second: tuple[frozenset[str], ...]
    source: str
    target: str | None


def _rules(model: Model) -> list[_Rule]:
    sites = site_table(model)
    rules = []
    for label, sentence in enumerate(model.sentences, start=1):
        left_states, right_states = sentence_states(sites, sentence)
        pair = None
        first, second = left_states, right_states
        if sentence.is_binding:
            a, b = sentence.left, sentence.right
            pair = (a, b)
            if site_key(b.species, b.site) < site_key(a.species, a.site):
                pair = (b, a)
                first, second = right_states, left_states
        rules.append(
            _Rule(
                label=label,
                kind=sentence.kind,
                rate=sentence.rate,
                pair=pair,
                first=tuple(sorted(first, key=state_sort_key)),
                second=tuple(sorted(second, key=state_sort_key)),
                source=sentence.left.species,
                target=sentence.right.species if sentence.right else None,
            )
        )
    return rules


class RuleSimulator:
    """A mixture of agents evolving under the sentences of a valid model."""

    def __init__(
        self,
        model: Model,
        seed: int | np.random.SeedSequence = 0,
        counts: dict[str, int] | None = None,
    ) -> None:
        violations = validate(model)
        if violations:
            raise InvalidModelError(violations)
        self.model = model
        self.rng = np.random.default_rng(seed)
        self.time = 0.0
        self.sites = site_table(model)
        self.rules = _rules(model)
        self.columns = tuple(
            state_name(species, index)
            for species, species_sites in self.sites.items()
            for index, _ in enumerate(enumerate_states(species_sites))
        )

        self._ids = count()
        self.agents: dict[int, Agent] = {}
        self.bonds: dict[int, Bond] = {}
        self._agent_pools: dict[tuple[str, frozenset[str]], IndexedPool] = {}
        self._bond_pools: dict[tuple[Pair, frozenset[str], frozenset[str]], IndexedPool] = {}

        populations = {species: model.population(species) for species in self.sites}
        populations.update(counts or {})
        for species, number in populations.items():
            if species not in self.sites:
                raise SimulationError(f"unknown species {species}")
            for _ in range(number):
                self._new_agent(species)
        log.debug("mixture of %d agents", len(self.agents))

    def _agent_pool(self, species: str, state: frozenset[str]) -> IndexedPool:
        return self._agent_pools.setdefault((species, state), IndexedPool())

    def _bond_pool(self, bond: Bond) -> IndexedPool:
        key = (bond.pair, self.agents[bond.first].state, self.agents[bond.second].state)
        return self._bond_pools.setdefault(key, IndexedPool())

    def _new_agent(self, species: str) -> Agent:
        agent = Agent(next(self._ids), species, self.sites[species])
        self.agents[agent.id] = agent
        self._agent_pool(species, frozenset()).add(agent.id)
        return agent

    def _touching(self, *agents: Agent) -> set[int]:
        return {
            bond for agent in agents for bond in agent.bonds.values() if bond is not None
        }

    def _detach(self, agents: tuple[Agent, ...]) -> set[int]:
        """Takes agents and their bonds out of the pools before their state changes."""
        bonds = self._touching(*agents)
        for bond_id in bonds:
            self._bond_pool(self.bonds[bond_id]).remove(bond_id)
        for agent in agents:
            self._agent_pool(agent.species, agent.state).remove(agent.id)
        return bonds

    def _attach(self, agents: tuple[Agent, ...], bonds: set[int]) -> None:
        for agent in agents:
            self._agent_pool(agent.species, agent.state).add(agent.id)
        for bond_id in sorted(bonds):
            if bond_id in self.bonds:
                self._bond_pool(self.bonds[bond_id]).add(bond_id)

    def count(self, species: str, states: tuple[frozenset[str], ...]) -> int:
        return sum(len(self._agent_pools.get((species, s), ())) for s in states)

    def _bond_count(self, rule: _Rule) -> int:
        return sum(
            len(self._bond_pools.get((rule.pair, s, t), ()))
            for s, t in product(rule.first, rule.second)
        )

    def propensities(self) -> list[RuleMatch]:
        """
        Match counts and propensities of every sentence in the current mixture.

        Associations count ordered pairs of distinct agents in qualifying states,
        dissociations count qualifying bonds of the same body, and transformations
        count unbound source agents.
        """
        found = []
        for rule in self.rules:
            match rule.kind:
                case SentenceKind.ASSOCIATION:
                    first, second = rule.pair
                    matches = self.count(first.species, rule.first) * self.count(
                        second.species, rule.second
                    )
                case SentenceKind.DISSOCIATION:
                    matches = self._bond_count(rule)
                case SentenceKind.TRANSFORMATION:
                    matches = self.count(rule.source, rule.first)
            found.append(RuleMatch(rule.label, matches, rule.rate * matches))
        return found

    def _pick_agent(self, species: str, states: tuple[frozenset[str], ...]) -> Agent:
        sizes = [len(self._agent_pools.get((species, s), ())) for s in states]
        slot = int(self.rng.integers(sum(sizes)))
        for state, size in zip(states, sizes):
            if slot < size:
                return self.agents[self._agent_pools[(species, state)].pick(self.rng)]
            slot -= size
        raise SimulationError(f"no {species} agent to pick")

    def _associate(self, rule: _Rule) -> None:
        first_ref, second_ref = rule.pair
        first = self._pick_agent(first_ref.species, rule.first)
        second = self._pick_agent(second_ref.species, rule.second)
        bonds = self._detach((first, second))
        bond_id = next(self._ids)
        first.bonds[first_ref.site] = bond_id
        second.bonds[second_ref.site] = bond_id
        self.bonds[bond_id] = Bond(rule.pair, first.id, second.id)
        self._attach((first, second), bonds | {bond_id})

    def _dissociate(self, rule: _Rule) -> None:
        pools = [
            self._bond_pools[(rule.pair, s, t)]
            for s, t in product(rule.first, rule.second)
            if self._bond_pools.get((rule.pair, s, t))
        ]
        sizes = [len(pool) for pool in pools]
        slot = int(self.rng.integers(sum(sizes)))
        for pool, size in zip(pools, sizes):
            if slot < size:
                bond_id = pool.pick(self.rng)
                break
            slot -= size
        bond = self.bonds[bond_id]
        first, second = self.agents[bond.first], self.agents[bond.second]
        bonds = self._detach((first, second))
        first.bonds[bond.pair[0].site] = None
        second.bonds[bond.pair[1].site] = None
        del self.bonds[bond_id]
        self._attach((first, second), bonds - {bond_id})

    def _transform(self, rule: _Rule) -> None:
        agent = self._pick_agent(rule.source, rule.first)
        self._agent_pool(agent.species, agent.state).remove(agent.id)
        del self.agents[agent.id]
        if rule.target is not None:
            self._new_agent(rule.target)

    def _fire(self, matches: list[RuleMatch], total: float) -> RuleMatch:
        threshold = self.rng.random() * total
        chosen = None
        for rule, found in zip(self.rules, matches):
            if found.propensity <= 0:
                continue
            chosen = (rule, found)
            threshold -= found.propensity
            if threshold < 0:
                break
        rule, fired = chosen
        match rule.kind:
            case SentenceKind.ASSOCIATION:
                self._associate(rule)
            case SentenceKind.DISSOCIATION:
                self._dissociate(rule)
            case SentenceKind.TRANSFORMATION:
                self._transform(rule)
        return fired

    def step(self) -> tuple[float, RuleMatch] | None:
        """Fires one sentence; None when no sentence can fire."""
        matches = self.propensities()
        total = sum(m.propensity for m in matches)
        if total <= 0:
            return None
        dt = self.rng.exponential(1.0 / total)
        self.time += dt
        return dt, self._fire(matches, total)

    def row(self) -> np.ndarray:
        return np.array(
            [
                len(self._agent_pools.get((species, state), ()))
                for species, species_sites in self.sites.items()
                for state in enumerate_states(species_sites)
            ],
            dtype=np.int64,
        )

    def simulate(self, until: float, points: int) -> TraceTable:
        """Runs until `until`, sampling state counts on the shared sample grid."""
        if until <= 0:
            raise SimulationError(f"simulation end time must be positive, got {until}")
        times = sample_grid(until, points)
        rows = np.zeros((len(times), len(self.columns)), dtype=np.int64)
        current = 0
        while current < len(times):
            matches = self.propensities()
            total = sum(m.propensity for m in matches)
            if total <= 0:
                rows[current:] = self.row()
                break
            upcoming = self.time + self.rng.exponential(1.0 / total)
            while current < len(times) and times[current] < upcoming:
                rows[current] = self.row()
                current += 1
            if current == len(times):
                break
            self.time = upcoming
            self._fire(matches, total)
        return TraceTable(times=times, columns=self.columns, counts=rows)


def run(
    model: Model,
    until: float,
    points: int,
    seed: int | np.random.SeedSequence = 0,
    counts: dict[str, int] | None = None,
) -> TraceTable:
    """
    Simulates a valid model directly from its sentences.

    Args:
        model (Model): The model; its populations apply unless `counts` overrides.
        until (float): End time.
        points (int): Number of sample intervals.
        seed (int | np.random.SeedSequence): Seed of the random stream.
        counts (dict[str, int] | None): Initial agent counts per species.

    Returns:
        TraceTable: Columns named like the generated process definitions.
    """
    return RuleSimulator(model, seed, counts).simulate(until, points)
