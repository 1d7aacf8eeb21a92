import pytest

from pimlang.compiler.compile_map import build_compile_map, dump_compile_map
from pimlang.core.sites import enumerate_states, sentence_states, site_table
from pimlang.exc import InvalidModelError, StateCapExceeded
from pimlang.parser import parse
from pimlang.schemas.compile_map import Partner, Transform
from tests.utils import FCR_SRC_MODEL, MOCKED_MODELS, _m1_model, _partner_entries

EMPTY = frozenset({frozenset()})


def _state(*sites: str) -> frozenset[str]:
    return frozenset(sites)


def _partner(species, site, states, rate, label) -> Partner:
    return Partner(
        species=species,
        site=site,
        states=frozenset(frozenset(s) for s in states),
        rate=rate,
        label=label,
    )


@pytest.mark.parametrize(
    "species, state, assoc, dissoc",
    [
        (
            "A",
            _state(),
            {
                "a1": (_partner("B", "b", [()], 1.0, 1),),
                "a2": (_partner("C", "c", [()], 1.0, 2),),
            },
            {},
        ),
        (
            "A",
            _state("a1"),
            {"a2": (_partner("C", "c", [()], 1.0, 2),)},
            {"a1": (_partner("B", "b", [("b",)], 4.0, 4),)},
        ),
        ("A", _state("a2"), {"a1": (_partner("B", "b", [()], 1.0, 1),)}, {}),
        (
            "A",
            _state("a1", "a2"),
            {},
            {"a1": (_partner("B", "b", [("b",)], 2.0, 3),)},
        ),
        (
            "B",
            _state(),
            {"b": (_partner("A", "a1", [(), ("a2",)], 1.0, 1),)},
            {},
        ),
        (
            "B",
            _state("b"),
            {},
            {
                "b": (
                    _partner("A", "a1", [("a1", "a2")], 2.0, 3),
                    _partner("A", "a1", [("a1",)], 4.0, 4),
                )
            },
        ),
        ("C", _state(), {"c": (_partner("A", "a2", [(), ("a1",)], 1.0, 2),)}, {}),
        ("C", _state("c"), {}, {}),
    ],
)
def test_m2_compile_map(m2_cmap, species, state, assoc, dissoc):
    actions = m2_cmap[species].at(state)
    assert actions.assoc == assoc
    assert actions.dissoc == dissoc
    assert actions.transform == ()


def test_state_without_actions_is_empty(m2_cmap):
    assert m2_cmap["C"].at(_state("c")).is_empty


def test_transformation_only_model():
    cmap = build_compile_map(parse("A becomes B"))
    (only,) = cmap["A"].actions
    assert only.transform == (Transform(target="B", rate=1.0, label=1),)
    assert only.assoc == {} and only.dissoc == {}
    assert len(cmap["B"].actions) == 1
    assert cmap["B"].actions[0].is_empty


def test_transformations_only_at_the_empty_state():
    cmap = build_compile_map(parse("site a on A associates site b on B\nA decays"))
    assert cmap["A"].at(_state()).transform == (Transform(target=None, rate=1.0, label=2),)
    assert cmap["A"].at(_state("a")).transform == ()


@pytest.mark.parametrize("name", sorted(MOCKED_MODELS))
def test_all_states_in_graded_lexicographic_order(name):
    cmap = build_compile_map(parse(MOCKED_MODELS[name]))
    for entry in cmap.species.values():
        assert tuple(a.state for a in entry.actions) == enumerate_states(entry.sites)
        assert len(entry.actions) == 2 ** len(entry.sites)


@pytest.mark.parametrize("name", sorted(MOCKED_MODELS))
def test_partner_entries_count(name):
    model = parse(MOCKED_MODELS[name])
    sites = site_table(model)
    expected = sum(
        len(left) + len(right)
        for left, right in (
            sentence_states(sites, s) for s in model.sentences if s.is_binding
        )
    )
    assert _partner_entries(MOCKED_MODELS[name]) == expected


def test_partners_are_symmetric(fcr_src_cmap):
    for species, entry in fcr_src_cmap.species.items():
        for actions in entry.actions:
            for site, partners in actions.assoc.items():
                for partner in partners:
                    for other_state in partner.states:
                        mirrored = fcr_src_cmap[partner.species].at(other_state)
                        assert any(
                            p.species == species and p.site == site and p.label == partner.label
                            for p in mirrored.assoc[partner.site]
                        )


def test_rates_are_sentence_rates(fcr_src_cmap):
    (partner,) = fcr_src_cmap["FcR"].at(_state("f", "s")).dissoc["s"]
    assert partner.rate == 1.0


def test_invalid_model_is_rejected():
    with pytest.raises(InvalidModelError) as err:
        build_compile_map(_m1_model())
    assert len(err.value.violations) == 7


def test_state_cap():
    with pytest.raises(StateCapExceeded):
        build_compile_map(parse(FCR_SRC_MODEL), state_cap=16)


def test_dump_compile_map(m2_cmap):
    lines = dump_compile_map(m2_cmap).splitlines()
    assert lines[0] == "<A, {"
    assert "  <{a1}, {(a2, {(C,c,{{}},1.0)})}, {(a1, {(B,b,{{b}},4.0)})}, {}>" in lines
    assert "  <{}, {(b, {(A,a1,{{},{a2}},1.0)})}, {}, {}>" in lines
    assert lines.count("}>") == 3
