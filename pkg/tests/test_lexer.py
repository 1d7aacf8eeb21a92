import pytest

from pimlang.exc import LexError
from pimlang.parser.lexer import FLOAT, IDENT, KEYWORD, tokenize


def test_tokenize_association_sentence():
    tokens = tokenize("site f on FcR associates site i on IgG with rate 2.0")
    assert len(tokens) == 12
    assert tokens[-1].kind == FLOAT
    assert tokens[-1].value == 2.0
    assert [t.kind for t in tokens[:4]] == [KEYWORD, IDENT, KEYWORD, IDENT]


def test_tokenize_empty_text():
    assert tokenize("") == []


def test_illegal_character_reports_column():
    with pytest.raises(LexError) as err:
        tokenize("site @ on A")
    assert err.value.diagnostic.span.line == 1
    assert err.value.diagnostic.span.column_start == 6


@pytest.mark.parametrize(
    "text, value",
    [
        ("3", 3.0),
        ("0.5", 0.5),
        ("1e-2", 0.01),
        ("2.5E1", 25.0),
    ],
)
def test_numbers_are_floats(text, value):
    (token,) = tokenize(text)
    assert token.kind == FLOAT
    assert token.value == value


def test_keywords_are_case_sensitive():
    tokens = tokenize("site Site")
    assert tokens[0].kind == KEYWORD
    assert tokens[1].kind == IDENT


def test_newlines_only_separate_tokens():
    tokens = tokenize("site f\n  on A")
    assert [t.value for t in tokens] == ["site", "f", "on", "A"]
    assert tokens[2].span.line == 2
    assert tokens[2].span.column_start == 3


def test_comments_are_skipped():
    tokens = tokenize("(* receptor *) A decays (* gone\n *) with rate 1.0")
    assert [t.value for t in tokens] == ["A", "decays", "with", "rate", 1.0]
    assert tokens[2].span.line == 2


def test_unterminated_comment():
    with pytest.raises(LexError) as err:
        tokenize("A decays (* oops")
    assert err.value.diagnostic.span.column_start == 10
