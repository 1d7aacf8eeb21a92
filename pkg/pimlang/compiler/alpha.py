"""Program comparison up to the spelling of channel names.

Process names are kept. Global channels are renamed after the way they are used,
and parameters, locals and input-bound names positionally, so two programs that
differ only in how channels are named normalize to the same value.
"""

from collections import defaultdict

from pimlang.schemas.pi import Action, ChannelDecl, PiProgram, ProcessDef

_DIGITS = 9


def _num(value: float | None) -> float | None:
    return None if value is None else round(value, _DIGITS)


def _target(action: Action) -> str | None:
    return action.continuation.process if action.continuation else None


def _global_usage(program: PiProgram) -> dict[str, list[tuple]]:
    globals_ = {decl.name for decl in program.globals}
    usage: dict[str, list[tuple]] = defaultdict(list)
    for definition in program.definitions:
        hidden = set(definition.params) | {decl.name for decl in definition.locals}
        for action in definition.body:
            target = _target(action)
            if action.channel in globals_ and action.channel not in hidden:
                usage[action.channel].append(
                    (definition.name, str(action.kind), _num(action.weight), target)
                )
            bound = set(action.payload) if action.kind == "input" else set()
            if action.continuation is None:
                continue
            for index, name in enumerate(action.continuation.args):
                if name in globals_ and name not in hidden | bound:
                    usage[name].append((definition.name, "arg", target, index))
    return usage


def _global_names(program: PiProgram) -> dict[str, str]:
    usage = _global_usage(program)
    signature = {
        decl.name: (_num(decl.rate), decl.arity, tuple(sorted(usage[decl.name], key=repr)))
        for decl in program.globals
    }
    ordered = sorted(signature, key=lambda name: repr(signature[name]))
    return {name: f"g{index}" for index, name in enumerate(ordered)}


def _decl(decl: ChannelDecl, name: str) -> tuple:
    return (name, _num(decl.rate), decl.arity)


def _action(action: Action, names: dict[str, str]) -> tuple:
    inner = dict(names)
    if action.kind == "input":
        inner.update({name: f"b{index}" for index, name in enumerate(action.payload)})
    payload = tuple(inner.get(name, name) for name in action.payload)
    call = None
    if action.continuation is not None:
        args = tuple(inner.get(name, name) for name in action.continuation.args)
        call = (action.continuation.process, args)
    return (
        str(action.kind),
        names.get(action.channel, action.channel),
        payload,
        _num(action.weight),
        _num(action.rate),
        call,
    )


def _definition(definition: ProcessDef, global_names: dict[str, str]) -> tuple:
    names = dict(global_names)
    names.update({p: f"p{index}" for index, p in enumerate(definition.params)})
    names.update({d.name: f"l{index}" for index, d in enumerate(definition.locals)})
    locals_ = tuple(sorted(_decl(d, names[d.name]) for d in definition.locals))
    body = tuple(sorted((_action(a, names) for a in definition.body), key=repr))
    return (definition.name, len(definition.params), locals_, body)


def normalize(program: PiProgram) -> tuple:
    """Hashable normal form of a program; equal for alpha-equivalent programs."""
    global_names = _global_names(program)
    globals_ = tuple(
        sorted(_decl(decl, global_names[decl.name]) for decl in program.globals)
    )
    definitions = tuple(
        sorted(_definition(d, global_names) for d in program.definitions)
    )
    runs = tuple(sorted((run.process, run.count) for run in program.runs))
    return (
        _num(program.sample_time),
        tuple(sorted(program.plot)),
        globals_,
        definitions,
        runs,
    )


def alpha_equal(left: PiProgram, right: PiProgram) -> bool:
    return normalize(left) == normalize(right)
