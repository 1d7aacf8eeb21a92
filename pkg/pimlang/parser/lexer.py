import re
from typing import NamedTuple

from pimlang.exc import LexError
from pimlang.log import get_logger
from pimlang.schemas.diagnostics import Diagnostic
from pimlang.schemas.model import SourceSpan

log = get_logger(__name__)

KEYWORDS = frozenset(
    {
        "site",
        "on",
        "associates",
        "dissociates",
        "gets",
        "phosphorylated",
        "dephosphorylated",
        "becomes",
        "decays",
        "with",
        "rate",
        "if",
        "and",
        "is",
        "bound",
        "unbound",
    }
)

KEYWORD = "KEYWORD"
IDENT = "IDENT"
FLOAT = "FLOAT"

_TOKEN_RE = re.compile(
    r"""
    (?P<space>[ \t\r\n]+)
  | (?P<comment>\(\*)
  | (?P<float>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    value: str | float
    span: SourceSpan

    def is_keyword(self, *words: str) -> bool:
        return self.kind == KEYWORD and self.value in words


class _Cursor:
    """Tracks line and column while scanning."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.line = 1
        self.line_start = 0

    @property
    def column(self) -> int:
        return self.pos - self.line_start + 1

    def span(self, length: int) -> SourceSpan:
        return SourceSpan(
            line=self.line,
            column_start=self.column,
            column_end=self.column + max(length, 1) - 1,
        )

    def advance(self, length: int) -> None:
        chunk = self.text[self.pos : self.pos + length]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.line_start = self.pos + chunk.rfind("\n") + 1
        self.pos += length


def tokenize(text: str) -> list[Token]:
    """
    Splits model text into keyword, identifier and float tokens.

    Whitespace and newlines only separate tokens; `(* ... *)` comments are skipped.

    Args:
        text (str): Model source.

    Returns:
        list[Token]: Tokens in source order.

    Raises:
        LexError: On a character outside the token classes or an unclosed comment.
    """
    cursor = _Cursor(text)
    tokens: list[Token] = []
    while cursor.pos < len(text):
        match = _TOKEN_RE.match(text, cursor.pos)
        if match is None:
            raise LexError(
                Diagnostic(
                    message=f"unexpected character {text[cursor.pos]!r}",
                    span=cursor.span(1),
                )
            )
        lexeme = match.group()
        kind = match.lastgroup
        if kind == "comment":
            end = text.find("*)", cursor.pos + 2)
            if end < 0:
                raise LexError(
                    Diagnostic(message="unterminated comment", span=cursor.span(2))
                )
            cursor.advance(end + 2 - cursor.pos)
            continue
        if kind == "float":
            tokens.append(Token(FLOAT, float(lexeme), cursor.span(len(lexeme))))
        elif kind == "word":
            word_kind = KEYWORD if lexeme in KEYWORDS else IDENT
            tokens.append(Token(word_kind, lexeme, cursor.span(len(lexeme))))
        cursor.advance(len(lexeme))
    log.debug("tokenized %d characters into %d tokens", len(text), len(tokens))
    return tokens
