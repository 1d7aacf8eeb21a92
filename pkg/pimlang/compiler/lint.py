"""Closedness and arity checks for generated programs."""

from pimlang.log import get_logger
from pimlang.schemas.pi import Action, ActionKind, ChannelDecl, PiProgram, ProcessDef

log = get_logger(__name__)


def _check_action(
    definition: ProcessDef,
    action: Action,
    scope: dict[str, ChannelDecl | None],
    defined: dict[str, ProcessDef],
) -> list[str]:
    where = f"{definition.name}"
    problems = []
    visible = dict(scope)
    if action.kind is not ActionKind.DELAY:
        if action.channel not in scope:
            problems.append(f"{where}: channel {action.channel} is not in scope")
        decl = scope.get(action.channel)
        if decl is not None and decl.arity != len(action.payload):
            problems.append(
                f"{where}: {action.channel} carries {decl.arity} channel(s), "
                f"used with {len(action.payload)}"
            )
        if action.kind is ActionKind.OUTPUT:
            problems.extend(
                f"{where}: sent channel {name} is not in scope"
                for name in action.payload
                if name not in scope
            )
        else:
            visible.update(dict.fromkeys(action.payload))

    call = action.continuation
    if call is None:
        return problems
    target = defined.get(call.process)
    if target is None:
        problems.append(f"{where}: calls undefined process {call.process}")
    elif len(target.params) != len(call.args):
        problems.append(
            f"{where}: {call.process} takes {len(target.params)} argument(s), "
            f"given {len(call.args)}"
        )
    problems.extend(
        f"{where}: argument {name} is not in scope"
        for name in call.args
        if name not in visible
    )
    return problems


def lint(program: PiProgram) -> list[str]:
    """
    Checks that a program is closed and well-typed enough to run.

    Every channel used must be a global, a local `new`, a parameter or a name bound
    by an enclosing input. Payload lengths must match the declared channel type and
    calls must pass as many arguments as the target definition has parameters. The
    plot list must name exactly the defined processes.

    Args:
        program (PiProgram): The program to check.

    Returns:
        list[str]: One message per problem; empty when the program is clean.
    """
    problems: list[str] = []
    defined: dict[str, ProcessDef] = {}
    for definition in program.definitions:
        if definition.name in defined:
            problems.append(f"process {definition.name} is defined twice")
        defined[definition.name] = definition

    globals_ = {decl.name: decl for decl in program.globals}
    for definition in program.definitions:
        scope: dict[str, ChannelDecl | None] = dict(globals_)
        scope.update(dict.fromkeys(definition.params))
        scope.update({decl.name: decl for decl in definition.locals})
        for action in definition.body:
            problems.extend(_check_action(definition, action, scope, defined))

    plotted = set(program.plot)
    problems.extend(
        f"plot names undefined process {name}" for name in program.plot if name not in defined
    )
    problems.extend(
        f"process {name} is not plotted" for name in defined if name not in plotted
    )
    for run in program.runs:
        target = defined.get(run.process)
        if target is None:
            problems.append(f"run statement names undefined process {run.process}")
        elif target.params:
            problems.append(f"run statement starts {run.process} without its arguments")
    log.debug("lint found %d problem(s)", len(problems))
    return problems
