import pytest

from pimlang.exc import ParseError
from pimlang.parser import format_model, format_sentence, load_model, parse
from pimlang.parser.parser import parse_surface
from pimlang.schemas.model import SentenceKind
from tests.utils import (
    FCR_MODEL,
    FCR_SRC_MODEL,
    M2_MODEL,
    MOCKED_MODELS,
    _m2_model,
    _ref,
    _write_model,
)


def test_parse_fcr_model():
    model = parse(FCR_MODEL)
    assert len(model.sentences) == 3
    binding, y, z = model.sentences
    assert binding.kind is SentenceKind.ASSOCIATION
    assert binding.rate == 2.0
    for sentence, site in ((y, "y"), (z, "z")):
        assert sentence.kind is SentenceKind.ASSOCIATION
        assert sentence.left == _ref("FcR", site)
        assert sentence.right == _ref("Phosph", "phosph")
        assert sentence.pos == {_ref("FcR", "f")}
        assert sentence.rate == 1.0


def test_parse_fcr_src_model():
    model = parse(FCR_SRC_MODEL)
    assert len(model.sentences) == 5
    last = model.sentences[-1]
    assert last.kind is SentenceKind.DISSOCIATION
    assert (last.left, last.right) == (_ref("FcR", "s"), _ref("Src", "sr"))
    assert last.pos == {_ref("FcR", "s"), _ref("Src", "sr")}


def test_parse_transformation():
    (sentence,) = parse("A becomes B with rate 3.0").sentences
    assert sentence.kind is SentenceKind.TRANSFORMATION
    assert (sentence.left, sentence.right) == (_ref("A"), _ref("B"))
    assert sentence.rate == 3.0


def test_parse_matches_core_sentences():
    assert parse(M2_MODEL).sentences == _m2_model().sentences


def test_parse_keeps_spans():
    model = parse(FCR_MODEL)
    assert [model.span_of(i).line for i in range(3)] == [1, 2, 3]
    assert model.span_of(0).column_start == 1
    assert model.span_of(0).column_end == len(FCR_MODEL.splitlines()[0])


def test_parse_ignores_layout():
    text = "site f on\nFcR associates site i\n   on IgG with rate 2.0 site y on FcR gets phosphorylated"
    assert len(parse(text).sentences) == 2


@pytest.mark.parametrize("text", ["", "   \n", "(* nothing *)"])
def test_empty_model_is_an_error(text):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "at least one sentence" in err.value.diagnostics[0].message


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("site f on FcR binds site i on IgG", 1, 15),
        ("site f on FcR associates site i on IgG\nsite y on FcR gets bound\nA decays", 2, 20),
        ("A decays with rate 0", 1, 20),
        ("site @ on A", 1, 6),
    ],
)
def test_syntax_error_diagnostics(text, line, column):
    with pytest.raises(ParseError) as err:
        parse(text)
    first = err.value.diagnostics[0]
    assert (first.span.line, first.span.column_start) == (line, column)
    assert first.render().startswith("error: ")


def test_parser_recovers_and_reports_every_sentence():
    text = "site y on FcR gets bound\nA decays\nB vanishes\nC decays"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert [d.span.line for d in err.value.diagnostics] == [1, 3]


def test_reserved_species_is_a_diagnostic():
    with pytest.raises(ParseError) as err:
        parse("site a on A associates site p on Phosph")
    assert "reserved" in err.value.diagnostics[0].message


def test_parse_surface_keeps_productions():
    surface = parse_surface(FCR_SRC_MODEL + "A decays\n")
    assert [s.production for s in surface] == [
        "association",
        "phosphorylation",
        "phosphorylation",
        "association",
        "dissociation",
        "decay",
    ]
    assert surface[1].conditions[0].bound is True


@pytest.mark.parametrize("name", sorted(MOCKED_MODELS))
def test_format_then_parse_gives_same_sentences(name):
    model = parse(MOCKED_MODELS[name])
    assert parse(format_model(model)).sentences == model.sentences


def test_format_sentence_canonical_text():
    model = parse(FCR_SRC_MODEL)
    assert format_sentence(model.sentences[1]) == (
        "site y on FcR gets phosphorylated with rate 1.0 if site s on FcR is bound"
    )
    assert format_sentence(model.sentences[4]) == (
        "site s on FcR dissociates site sr on Src with rate 1.0"
    )


def test_load_model(tmp_path):
    path = _write_model(tmp_path, FCR_MODEL)
    assert load_model(path).sentences == parse(FCR_MODEL).sentences
