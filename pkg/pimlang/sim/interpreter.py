"""Gillespie direct-method execution of generated pi-calculus programs.

Instances that run the same definition over the same channels are pooled with a
multiplicity, like transitions in a multiset. For every channel the pool keeps
three sums over its users g with multiplicity n_g: S_out = sum n_g*O_g over
output weights, S_in = sum n_g*I_g over input branches, and S_self = sum
n_g*O_g*I_g. The channel fires at rate * (S_out*S_in - S_self), which counts
every ordered output/input pair of two distinct instances exactly once.

Channels created by `new` are minted when the action that needs them fires and
are dropped once no instance refers to them.
"""

from collections.abc import Callable
from itertools import count
from typing import NamedTuple

import numpy as np

from pimlang.exc import SimulationError, UndefinedProcessError
from pimlang.log import get_logger
from pimlang.schemas.pi import ActionKind, ChannelDecl, PiProgram, ProcessDef
from pimlang.schemas.trace import TraceTable
from pimlang.sim.trace import sample_grid

log = get_logger(__name__)

_GLOBAL, _PARAM, _LOCAL, _BOUND = range(4)
_EPS = 1e-9

Ref = tuple[int, int]
Key = tuple[str, tuple[int, ...]]


class Reaction(NamedTuple):
    kind: str
    channel: str | None
    sender: str
    receiver: str | None
    propensity: float


class _Branch(NamedTuple):
    kind: ActionKind
    channel: Ref | None
    payload: tuple[Ref, ...]
    weight: float
    rate: float
    process: str | None
    args: tuple[Ref, ...]


class _Definition(NamedTuple):
    name: str
    params: int
    locals: tuple[ChannelDecl, ...]
    branches: tuple[_Branch, ...]


class _Usage:
    """Branches of one instance key on one channel."""

    __slots__ = ("outs", "ins", "weight", "inputs")

    def __init__(self) -> None:
        self.outs: list[tuple[int, float]] = []
        self.ins: list[int] = []
        self.weight = 0.0
        self.inputs = 0


class _ChannelPool:
    __slots__ = ("rate", "name", "members", "s_out", "s_in", "s_self")

    def __init__(self, rate: float, name: str) -> None:
        self.rate = rate
        self.name = name
        self.members: dict[Key, _Usage] = {}
        self.s_out = 0.0
        self.s_in = 0
        self.s_self = 0.0

    @property
    def propensity(self) -> float:
        pairs = self.s_out * self.s_in
        value = pairs - self.s_self
        if value <= _EPS * max(1.0, pairs):
            return 0.0
        return self.rate * value


def _compile(definition: ProcessDef, global_ids: dict[str, int]) -> _Definition:
    scope: dict[str, Ref] = {name: (_GLOBAL, cid) for name, cid in global_ids.items()}
    scope.update({name: (_PARAM, i) for i, name in enumerate(definition.params)})
    scope.update({decl.name: (_LOCAL, j) for j, decl in enumerate(definition.locals)})

    def ref(names: dict[str, Ref], name: str) -> Ref:
        if name not in names:
            raise SimulationError(f"{definition.name}: channel {name} is not in scope")
        return names[name]

    branches = []
    for action in definition.body:
        inner = scope
        channel = None
        payload: tuple[Ref, ...] = ()
        if action.kind is not ActionKind.DELAY:
            channel = ref(scope, action.channel)
            if action.kind is ActionKind.OUTPUT:
                payload = tuple(ref(scope, name) for name in action.payload)
            else:
                inner = dict(scope)
                inner.update({n: (_BOUND, k) for k, n in enumerate(action.payload)})
                payload = tuple((_BOUND, k) for k in range(len(action.payload)))
        call = action.continuation
        branches.append(
            _Branch(
                kind=action.kind,
                channel=channel,
                payload=payload,
                weight=1.0 if action.weight is None else action.weight,
                rate=action.rate or 0.0,
                process=call.process if call else None,
                args=tuple(ref(inner, name) for name in call.args) if call else (),
            )
        )
    return _Definition(
        name=definition.name,
        params=len(definition.params),
        locals=definition.locals,
        branches=tuple(branches),
    )


class SimState:
    """A running population of process instances with its clock and random stream."""

    def __init__(self, program: PiProgram, seed: int | np.random.SeedSequence) -> None:
        self.rng = np.random.default_rng(seed)
        self.time = 0.0
        self._ids = count()
        self._rates: dict[int, float] = {}
        self._names: dict[int, str] = {}
        self._refs: dict[int, int] = {}

        global_ids = {}
        for decl in program.globals:
            cid = next(self._ids)
            global_ids[decl.name] = cid
            self._rates[cid] = decl.rate
            self._names[cid] = decl.name
        self._defs = {d.name: _compile(d, global_ids) for d in program.definitions}

        plotted = set(program.plot)
        names = [d.name for d in program.definitions]
        self.columns = tuple(n for n in names if n in plotted) if plotted else tuple(names)

        self._counts: dict[Key, int] = {}
        self._usage: dict[Key, dict[int, _Usage]] = {}
        self._delays: dict[Key, float] = {}
        self._pools: dict[int, _ChannelPool] = {}
        self._delay_total = 0.0
        self._live: dict[str, int] = dict.fromkeys(names, 0)

        for definition in self._defs.values():
            for branch in definition.branches:
                if branch.process is not None and branch.process not in self._defs:
                    raise UndefinedProcessError(branch.process)
                if branch.process is not None:
                    expected = self._defs[branch.process].params
                    if expected != len(branch.args):
                        raise SimulationError(
                            f"{definition.name} calls {branch.process} with "
                            f"{len(branch.args)} argument(s), expected {expected}"
                        )
        for run in program.runs:
            if run.process not in self._defs:
                raise UndefinedProcessError(run.process)
            if self._defs[run.process].params:
                raise SimulationError(f"run statement starts {run.process} without arguments")
            if run.count:
                self._adjust((run.process, ()), run.count)
        log.debug(
            "loaded %d instances of %d definitions",
            sum(self._counts.values()),
            len(self._defs),
        )

    @property
    def instances(self) -> int:
        return sum(self._counts.values())

    def live(self, name: str) -> int:
        return self._live.get(name, 0)

    def row(self) -> np.ndarray:
        return np.array([self._live[name] for name in self.columns], dtype=np.int64)

    def _resolve_channel(self, ref: Ref, env: tuple[int, ...]) -> int | None:
        scope, index = ref
        if scope == _GLOBAL:
            return index
        if scope == _PARAM:
            return env[index]
        return None

    def _setup(self, key: Key) -> None:
        name, env = key
        usage: dict[int, _Usage] = {}
        delay = 0.0
        for index, branch in enumerate(self._defs[name].branches):
            if branch.kind is ActionKind.DELAY:
                delay += branch.rate
                continue
            cid = self._resolve_channel(branch.channel, env)
            if cid is None or self._rates.get(cid, 0.0) <= 0.0:
                continue
            entry = usage.setdefault(cid, _Usage())
            if branch.kind is ActionKind.OUTPUT:
                entry.outs.append((index, branch.weight))
                entry.weight += branch.weight
            else:
                entry.ins.append(index)
                entry.inputs += 1
        self._usage[key] = usage
        self._delays[key] = delay

    def _adjust(self, key: Key, delta: int) -> None:
        before = self._counts.get(key, 0)
        after = before + delta
        if after < 0:
            raise SimulationError(f"instance count of {key[0]} would become negative")
        if before == 0:
            self._setup(key)

        for cid, usage in self._usage[key].items():
            pool = self._pools.get(cid)
            if pool is None:
                pool = self._pools[cid] = _ChannelPool(self._rates[cid], self._names[cid])
            pool.s_out += delta * usage.weight
            pool.s_in += delta * usage.inputs
            pool.s_self += delta * usage.weight * usage.inputs
            if after:
                pool.members[key] = usage
            else:
                pool.members.pop(key, None)
                if not pool.members:
                    del self._pools[cid]
        self._delay_total += delta * self._delays[key]

        name, env = key
        self._live[name] += delta
        for cid in env:
            if cid in self._refs:
                self._refs[cid] += delta
                if self._refs[cid] == 0:
                    self._release(cid)
        if after:
            self._counts[key] = after
        else:
            del self._counts[key]
            del self._usage[key]
            del self._delays[key]
            if not self._counts:
                self._delay_total = 0.0

    def _mint(self, decl: ChannelDecl) -> int:
        cid = next(self._ids)
        self._rates[cid] = decl.rate
        self._names[cid] = f"{decl.name}#{cid}"
        self._refs[cid] = 0
        return cid

    def _release(self, cid: int) -> None:
        del self._rates[cid], self._names[cid], self._refs[cid]

    def total_propensity(self) -> float:
        delays = self._delay_total if self._delay_total > _EPS else 0.0
        return sum(pool.propensity for pool in self._pools.values()) + delays

    def _choose(self, weighted: list[tuple[object, float]]) -> object:
        total = sum(weight for _, weight in weighted)
        threshold = self.rng.random() * total
        chosen = None
        for item, weight in weighted:
            if weight <= 0:
                continue
            chosen = item
            threshold -= weight
            if threshold < 0:
                break
        if chosen is None:
            raise SimulationError("no enabled branch to choose from")
        return chosen

    def _resolver(
        self, key: Key, received: tuple[int, ...], minted: list[int]
    ) -> Callable[[Ref], int]:
        name, env = key
        locals_: dict[int, int] = {}

        def resolve(ref: Ref) -> int:
            scope, index = ref
            if scope == _GLOBAL:
                return index
            if scope == _PARAM:
                return env[index]
            if scope == _BOUND:
                return received[index]
            if index not in locals_:
                locals_[index] = self._mint(self._defs[name].locals[index])
                minted.append(locals_[index])
            return locals_[index]

        return resolve

    @staticmethod
    def _next(branch: _Branch, resolve: Callable[[Ref], int]) -> Key | None:
        if branch.process is None:
            return None
        return branch.process, tuple(resolve(ref) for ref in branch.args)

    def _apply(self, removed: list[Key], added: list[Key | None], minted: list[int]) -> None:
        for key in added:
            if key is not None:
                self._adjust(key, 1)
        for key in removed:
            self._adjust(key, -1)
        for cid in minted:
            if self._refs.get(cid) == 0:
                self._release(cid)

    def _fire(self, total: float) -> Reaction:
        threshold = self.rng.random() * total
        last = None
        for pool in self._pools.values():
            propensity = pool.propensity
            if propensity <= 0:
                continue
            last = (pool, propensity)
            threshold -= propensity
            if threshold < 0:
                return self._communicate(pool, propensity)
        if self._delay_total > _EPS or last is None:
            return self._delay()
        return self._communicate(*last)

    def _communicate(self, pool: _ChannelPool, propensity: float) -> Reaction:
        sender, out_index = self._choose(
            [
                ((key, index), weight * self._counts[key] * (pool.s_in - usage.inputs))
                for key, usage in pool.members.items()
                for index, weight in usage.outs
            ]
        )
        receiver, in_index = self._choose(
            [
                ((key, index), self._counts[key] - (1 if key == sender else 0))
                for key, usage in pool.members.items()
                for index in usage.ins
            ]
        )
        out_branch = self._defs[sender[0]].branches[out_index]
        in_branch = self._defs[receiver[0]].branches[in_index]
        if len(out_branch.payload) != len(in_branch.payload):
            raise SimulationError(
                f"{sender[0]} sends {len(out_branch.payload)} channel(s) on {pool.name}, "
                f"{receiver[0]} expects {len(in_branch.payload)}"
            )
        minted: list[int] = []
        send = self._resolver(sender, (), minted)
        sent = tuple(send(ref) for ref in out_branch.payload)
        sender_next = self._next(out_branch, send)
        receiver_next = self._next(in_branch, self._resolver(receiver, sent, minted))
        self._apply([sender, receiver], [sender_next, receiver_next], minted)
        return Reaction("communication", pool.name, sender[0], receiver[0], propensity)

    def _delay(self) -> Reaction:
        key, index = self._choose(
            [
                ((key, index), self._counts[key] * branch.rate)
                for key, delay in self._delays.items()
                if delay > 0
                for index, branch in enumerate(self._defs[key[0]].branches)
                if branch.kind is ActionKind.DELAY
            ]
        )
        branch = self._defs[key[0]].branches[index]
        minted: list[int] = []
        following = self._next(branch, self._resolver(key, (), minted))
        self._apply([key], [following], minted)
        return Reaction("delay", None, key[0], None, branch.rate)

    def step(self) -> tuple[float, Reaction] | None:
        """
        Fires one reaction.

        Returns:
            tuple[float, Reaction] | None: The time advance and the reaction, or
                None when nothing is enabled.
        """
        total = self.total_propensity()
        if total <= 0:
            return None
        dt = self.rng.exponential(1.0 / total)
        self.time += dt
        return dt, self._fire(total)

    def simulate(self, until: float, points: int) -> TraceTable:
        """
        Runs until `until` and records the live instances of every column at
        `points + 1` evenly spaced sample times starting at 0.

        Args:
            until (float): End time, > 0.
            points (int): Number of sample intervals.

        Returns:
            TraceTable: Counts per sample time; rows before the current clock repeat
                the current counts.
        """
        if until <= 0:
            raise SimulationError(f"simulation end time must be positive, got {until}")
        times = sample_grid(until, points)
        rows = np.zeros((len(times), len(self.columns)), dtype=np.int64)
        current = 0
        fired = 0
        while current < len(times):
            total = self.total_propensity()
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
            self._fire(total)
            fired += 1
        log.debug("fired %d reactions up to time %s", fired, until)
        return TraceTable(times=times, columns=self.columns, counts=rows)


def load(program: PiProgram, seed: int | np.random.SeedSequence = 0) -> SimState:
    """
    Instantiates the run statements of a program.

    Raises:
        UndefinedProcessError: If a run statement or continuation names no definition.
        SimulationError: If a call passes the wrong number of arguments.
    """
    return SimState(program, seed)


def step(state: SimState) -> tuple[float, Reaction] | None:
    return state.step()


def simulate(state: SimState, until: float, points: int) -> TraceTable:
    return state.simulate(until, points)
