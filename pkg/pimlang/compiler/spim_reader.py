"""Reader for the SPiM subset that `render` writes.

    Program    ::= Item*
    Item       ::= directive sample Float
                 | directive plot Call (; Call)*
                 | Decl
                 | let Def (and Def)*
                 | run Int of Name()
    Decl       ::= new Name@Float:chan[(chan(,chan)*)]
    Def        ::= Name([Name:chan(,Name:chan)*]) = Body
    Body       ::= () | ( Decl* Sum )
    Sum        ::= Action | do Action (or Action)*
    Action     ::= !Name[(Names)][*Float]; Cont | ?Name[(Names)]; Cont | delay@Float; Cont
    Cont       ::= () | Name(Names)
"""

import re
from pathlib import Path
from typing import NamedTuple

from pimlang.exc import SpimSyntaxError
from pimlang.log import get_logger
from pimlang.schemas.pi import (
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

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<comment>\(\*.*?\*\))
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()!?;*@:,=])
    """,
    re.VERBOSE | re.DOTALL,
)


class _Tok(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Tok]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise SpimSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind, lexeme = match.lastgroup, match.group()
        if kind not in ("space", "comment"):
            tokens.append(_Tok(kind, lexeme, line, pos - line_start + 1))
        if "\n" in lexeme:
            line += lexeme.count("\n")
            line_start = pos + lexeme.rfind("\n") + 1
        pos = match.end()
    return tokens


def _species(process: str) -> str:
    return process.rstrip("0123456789") or process


class _Reader:
    def __init__(self, tokens: list[_Tok]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> _Tok | None:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def fail(self, expected: str) -> SpimSyntaxError:
        token = self.peek()
        if token is None:
            last = self.tokens[-1] if self.tokens else _Tok("", "", 1, 1)
            return SpimSyntaxError(
                f"expected {expected}, found end of input", last.line, last.column
            )
        return SpimSyntaxError(
            f"expected {expected}, found {token.value!r}", token.line, token.column
        )

    def at(self, value: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token is not None and token.value == value

    def expect(self, value: str) -> _Tok:
        if not self.at(value):
            raise self.fail(repr(value))
        return self.next()

    def next(self) -> _Tok:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def name(self) -> str:
        token = self.peek()
        if token is None or token.kind != "name":
            raise self.fail("a name")
        return self.next().value

    def number(self) -> float:
        token = self.peek()
        if token is None or token.kind != "number":
            raise self.fail("a number")
        return float(self.next().value)

    def names(self) -> tuple[str, ...]:
        self.expect("(")
        found = []
        while not self.at(")"):
            if found:
                self.expect(",")
            found.append(self.name())
        self.expect(")")
        return tuple(found)

    def decl(self, scope: Scope) -> ChannelDecl:
        self.expect("new")
        name = self.name()
        self.expect("@")
        rate = self.number()
        self.expect(":")
        self.expect("chan")
        arity = len(self.names()) if self.at("(") else 0
        return ChannelDecl(name=name, rate=rate, arity=arity, scope=scope)

    def call(self) -> Call | None:
        if self.at("(") and self.at(")", 1):
            self.pos += 2
            return None
        process = self.name()
        return Call(process=process, args=self.names())

    def action(self) -> Action:
        if self.at("delay"):
            self.next()
            self.expect("@")
            rate = self.number()
            self.expect(";")
            return Action(kind=ActionKind.DELAY, rate=rate, continuation=self.call())
        if self.at("!") or self.at("?"):
            output = self.next().value == "!"
            channel = self.name()
            payload = self.names() if self.at("(") else ()
            weight = None
            if output and self.at("*"):
                self.next()
                weight = self.number()
            self.expect(";")
            return Action(
                kind=ActionKind.OUTPUT if output else ActionKind.INPUT,
                channel=channel,
                payload=payload,
                weight=weight,
                continuation=self.call(),
            )
        raise self.fail("an action")

    def body(self) -> tuple[tuple[ChannelDecl, ...], tuple[Action, ...]]:
        self.expect("(")
        if self.at(")"):
            self.next()
            return (), ()
        decls = []
        while self.at("new"):
            decls.append(self.decl(Scope.LOCAL))
        actions = [self.action()] if not self.at("do") else []
        if not actions:
            self.next()
            actions.append(self.action())
            while self.at("or"):
                self.next()
                actions.append(self.action())
        self.expect(")")
        return tuple(decls), tuple(actions)

    def definition(self) -> ProcessDef:
        name = self.name()
        self.expect("(")
        params = []
        while not self.at(")"):
            if params:
                self.expect(",")
            params.append(self.name())
            self.expect(":")
            self.expect("chan")
        self.expect(")")
        self.expect("=")
        decls, actions = self.body()
        return ProcessDef(name=name, params=tuple(params), locals=decls, body=actions)

    def program(self) -> PiProgram:
        sample_time = None
        plot: list[str] = []
        globals_: list[ChannelDecl] = []
        groups: list[DefinitionGroup] = []
        runs: list[RunStatement] = []
        while self.peek() is not None:
            if self.at("directive"):
                self.next()
                if self.at("sample"):
                    self.next()
                    sample_time = self.number()
                elif self.at("plot"):
                    self.next()
                    plot.append(self.name())
                    self.names()
                    while self.at(";"):
                        self.next()
                        plot.append(self.name())
                        self.names()
                else:
                    raise self.fail("'sample' or 'plot'")
            elif self.at("new"):
                globals_.append(self.decl(Scope.GLOBAL))
            elif self.at("let"):
                self.next()
                definitions = [self.definition()]
                while self.at("and"):
                    self.next()
                    definitions.append(self.definition())
                groups.append(
                    DefinitionGroup(
                        species=_species(definitions[0].name),
                        definitions=tuple(definitions),
                    )
                )
            elif self.at("run"):
                self.next()
                token = self.peek()
                count = self.number()
                if count != int(count) or count < 0:
                    raise SpimSyntaxError(
                        f"expected a non-negative integer count, found {token.value!r}",
                        token.line,
                        token.column,
                    )
                self.expect("of")
                process = self.name()
                self.expect("(")
                self.expect(")")
                runs.append(RunStatement(count=int(count), process=process))
            else:
                raise self.fail("'directive', 'new', 'let' or 'run'")
        if sample_time is None:
            raise SpimSyntaxError("missing 'directive sample'", 1, 1)
        return PiProgram(
            sample_time=sample_time,
            plot=tuple(plot),
            globals=tuple(globals_),
            groups=tuple(groups),
            runs=tuple(runs),
        )


def read_spim(text: str) -> PiProgram:
    """
    Reads SPiM text in the subset written by `render`.

    Args:
        text (str): Program text.

    Returns:
        PiProgram: The program; `new` lines outside definitions are global.

    Raises:
        SpimSyntaxError: With the line and column of the first offending token.
    """
    program = _Reader(_tokenize(text)).program()
    log.debug(
        "read %d definitions and %d run statements",
        len(program.definitions),
        len(program.runs),
    )
    return program


def load_spim(path: Path) -> PiProgram:
    with open(path, encoding="utf-8") as f:
        return read_spim(f.read())
