"""SPiM text for a PiProgram."""

from pimlang.schemas.pi import Action, ActionKind, Call, ChannelDecl, PiProgram, ProcessDef


def _rate(value: float) -> str:
    return repr(float(value))


def _decl(decl: ChannelDecl) -> str:
    kind = "chan"
    if decl.arity:
        kind = "chan(" + ",".join(["chan"] * decl.arity) + ")"
    return f"new {decl.name}@{_rate(decl.rate)}:{kind}"


def _call(call: Call | None) -> str:
    if call is None:
        return "()"
    return f"{call.process}({','.join(call.args)})"


def _action(action: Action) -> str:
    match action.kind:
        case ActionKind.DELAY:
            prefix = f"delay@{_rate(action.rate)}"
        case ActionKind.OUTPUT:
            prefix = f"!{action.channel}"
            if action.payload:
                prefix += f"({','.join(action.payload)})"
            if action.weight is not None:
                prefix += f"*{_rate(action.weight)}"
        case ActionKind.INPUT:
            prefix = f"?{action.channel}"
            if action.payload:
                prefix += f"({','.join(action.payload)})"
    return f"{prefix}; {_call(action.continuation)}"


def _body(definition: ProcessDef) -> str:
    if not definition.body:
        return "()"
    parts = [_decl(decl) for decl in definition.locals]
    if len(definition.body) == 1:
        parts.append(_action(definition.body[0]))
    else:
        parts.append("do " + " or ".join(_action(a) for a in definition.body))
    return "( " + " ".join(parts) + " )"


def _definition(definition: ProcessDef) -> str:
    params = ",".join(f"{p}:chan" for p in definition.params)
    return f"{definition.name}({params}) = {_body(definition)}"


def render(program: PiProgram) -> str:
    """
    Renders a program as SPiM text, one declaration or definition per line.

    Output is deterministic: the same program always gives the same text.
    """
    lines = [f"directive sample {_rate(program.sample_time)}"]
    if program.plot:
        lines.append("directive plot " + "; ".join(f"{name}()" for name in program.plot))
    lines.extend(_decl(decl) for decl in program.globals)
    for group in program.groups:
        for index, definition in enumerate(group.definitions):
            keyword = "let" if index == 0 else "and"
            lines.append(f"{keyword} {_definition(definition)}")
    lines.extend(f"run {run.count} of {run.process}()" for run in program.runs)
    return "\n".join(lines) + "\n"
