"""Recursive descent parser for the narrative model language.

    Model          ::= Sentence+
    Sentence       ::= Site on Species associates Site on Species Tail
                     | Site on Species dissociates Site on Species Tail
                     | Site on Species gets phosphorylated Tail
                     | Site on Species gets dephosphorylated Tail
                     | Species becomes Species [with rate Float]
                     | Species decays [with rate Float]
    Tail           ::= [with rate Float] [if Condition (and Condition)*]
    Condition      ::= Site on Species is (bound | unbound)
    Site           ::= site String
"""

import math
from pathlib import Path

from pimlang.core.desugar import complete_model, desugar
from pimlang.exc import LexError, ParseError, ReservedSpeciesError
from pimlang.log import get_logger
from pimlang.parser.lexer import FLOAT, IDENT, Token, tokenize
from pimlang.schemas.diagnostics import Diagnostic
from pimlang.schemas.model import Condition, Model, SourceSpan, SurfaceSentence

log = get_logger(__name__)

_INNER_SITE_PREDECESSORS = ("associates", "dissociates", "if", "and")


class _SyntaxError(Exception):
    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def _join(first: SourceSpan, last: SourceSpan) -> SourceSpan:
    end = last.column_end if last.line == first.line else first.column_end
    return SourceSpan(line=first.line, column_start=first.column_start, column_end=end)


def _describe(token: Token | None) -> str:
    if token is None:
        return "end of input"
    if token.kind == FLOAT:
        return f"number {token.value}"
    return repr(token.value)


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token | None:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def error(self, expected: str) -> _SyntaxError:
        token = self.peek()
        span = token.span if token is not None else self.tokens[-1].span
        return _SyntaxError(
            Diagnostic(message=f"expected {expected}, found {_describe(token)}", span=span)
        )

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def keyword(self, *words: str) -> Token:
        token = self.peek()
        if token is None or not token.is_keyword(*words):
            raise self.error(" or ".join(repr(w) for w in words))
        return self.advance()

    def identifier(self, what: str) -> Token:
        token = self.peek()
        if token is None or token.kind != IDENT:
            raise self.error(what)
        return self.advance()

    def at_sentence_start(self) -> bool:
        token = self.peek()
        if token is None:
            return False
        if token.is_keyword("site"):
            previous = self.tokens[self.pos - 1] if self.pos else None
            return previous is None or not previous.is_keyword(*_INNER_SITE_PREDECESSORS)
        following = self.peek(1)
        return (
            token.kind == IDENT
            and following is not None
            and following.is_keyword("becomes", "decays")
        )

    def recover(self) -> None:
        self.pos += 1
        while self.pos < len(self.tokens) and not self.at_sentence_start():
            self.pos += 1

    def site_on_species(self) -> tuple[str, str]:
        self.keyword("site")
        site = self.identifier("a site name")
        self.keyword("on")
        species = self.identifier("a species name")
        return site.value, species.value

    def rate(self) -> float | None:
        token = self.peek()
        if token is None or not token.is_keyword("with"):
            return None
        self.advance()
        self.keyword("rate")
        literal = self.peek()
        if literal is None or literal.kind != FLOAT:
            raise self.error("a rate")
        self.advance()
        if not math.isfinite(literal.value) or literal.value <= 0:
            raise _SyntaxError(
                Diagnostic(
                    message=f"rate must be a positive number, got {literal.value}",
                    span=literal.span,
                )
            )
        return literal.value

    def conditions(self) -> tuple[Condition, ...]:
        token = self.peek()
        if token is None or not token.is_keyword("if"):
            return ()
        self.advance()
        found = [self.condition()]
        while (token := self.peek()) is not None and token.is_keyword("and"):
            self.advance()
            found.append(self.condition())
        return tuple(found)

    def condition(self) -> Condition:
        first = self.peek()
        site, species = self.site_on_species()
        self.keyword("is")
        state = self.keyword("bound", "unbound")
        return Condition(
            site=site,
            species=species,
            bound=state.value == "bound",
            span=_join(first.span, state.span),
        )

    def sentence(self) -> SurfaceSentence:
        first = self.peek()
        if first is None:
            raise self.error("a sentence")
        if first.is_keyword("site"):
            fields = self.site_led()
        elif first.kind == IDENT:
            fields = self.species_led()
        else:
            raise self.error("'site' or a species name")
        last = self.tokens[self.pos - 1]
        return SurfaceSentence(span=_join(first.span, last.span), **fields)

    def site_led(self) -> dict:
        left_site, left_species = self.site_on_species()
        verb = self.keyword("associates", "dissociates", "gets")
        fields: dict = {"left_site": left_site, "left_species": left_species}
        if verb.value == "gets":
            sugar = self.keyword("phosphorylated", "dephosphorylated")
            fields["production"] = (
                "phosphorylation"
                if sugar.value == "phosphorylated"
                else "dephosphorylation"
            )
        else:
            right_site, right_species = self.site_on_species()
            fields["production"] = (
                "association" if verb.value == "associates" else "dissociation"
            )
            fields["right_site"] = right_site
            fields["right_species"] = right_species
        fields["rate"] = self.rate()
        fields["conditions"] = self.conditions()
        return fields

    def species_led(self) -> dict:
        species = self.identifier("a species name")
        verb = self.keyword("becomes", "decays")
        fields: dict = {"left_species": species.value}
        if verb.value == "becomes":
            fields["production"] = "transformation"
            fields["right_species"] = self.identifier("a species name").value
        else:
            fields["production"] = "decay"
        fields["rate"] = self.rate()
        return fields

    def model(self) -> tuple[list[SurfaceSentence], list[Diagnostic]]:
        sentences: list[SurfaceSentence] = []
        diagnostics: list[Diagnostic] = []
        while self.peek() is not None:
            try:
                sentences.append(self.sentence())
            except _SyntaxError as err:
                diagnostics.append(err.diagnostic)
                self.recover()
        return sentences, diagnostics


def parse_surface(text: str) -> list[SurfaceSentence]:
    """
    Parses model text into surface sentences without desugaring.

    Raises:
        ParseError: With every diagnostic found.
    """
    try:
        tokens = tokenize(text)
    except LexError as err:
        raise ParseError([err.diagnostic]) from err
    if not tokens:
        raise ParseError(
            [
                Diagnostic(
                    message="a model needs at least one sentence",
                    span=SourceSpan(line=1, column_start=1, column_end=1),
                )
            ]
        )
    sentences, diagnostics = _Parser(tokens).model()
    if diagnostics:
        raise ParseError(diagnostics)
    return sentences


def parse(text: str) -> Model:
    """
    Parses and desugars a model.

    Args:
        text (str): Model source in the narrative language.

    Returns:
        Model: Core sentences in textual order, with source spans.

    Raises:
        ParseError: On lexical or syntax errors, an empty model or a reserved
            species name; `err.diagnostics` lists them all.
    """
    surface = parse_surface(text)
    core, diagnostics = [], []
    for sentence in surface:
        try:
            core.append(desugar(sentence))
        except ReservedSpeciesError as err:
            diagnostics.append(Diagnostic(message=str(err), span=sentence.span))
    if diagnostics:
        raise ParseError(diagnostics)
    log.debug("parsed %d sentences", len(core))
    return complete_model(core, [s.span for s in surface])


def load_model(path: Path | str) -> Model:
    """Reads and parses a `.pim` file (UTF-8)."""
    return parse(Path(path).read_text(encoding="utf-8"))
