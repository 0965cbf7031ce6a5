"""Corpus data: shipped records agree with regeneration and known tables."""

import pytest

from jonescope import corpus
from jonescope.diagram import braid_to_morse, morse_stats, pd_stats
from jonescope.qlaurent import QLaurent
from jonescope.statesum import alexander_poly, colored_jones, jones_via_bracket

# color-2 Jones values as commonly tabulated, quarter-exponent grid
PUBLISHED_JONES2 = {
    "3_1": {-16: -1, -12: 1, -4: 1},
    "4_1": {-8: 1, -4: -1, 0: 1, 4: -1, 8: 1},
    "5_2": {-24: -1, -20: 1, -16: -1, -12: 2, -8: -1, -4: 1},
    "6_1": {-16: 1, -12: -1, -8: 1, -4: -2, 0: 2, 4: -1, 8: 1},
}

PUBLISHED_ALEXANDER = {
    "3_1": {-4: 1, 0: -1, 4: 1},
    "4_1": {-4: -1, 0: 3, 4: -1},
    "5_2": {-4: 2, 0: -3, 4: 2},
    "6_1": {-4: -2, 0: 5, 4: -2},
}

MINIMAL_CROSSINGS = {"3_1": 3, "4_1": 4, "5_2": 5, "6_1": 6}


def test_names_ordered_by_crossing_count():
    assert corpus.names() == ["3_1", "4_1", "5_2", "6_1"]


def test_unknown_name_raises():
    with pytest.raises(KeyError):
        corpus.knot("7_1")
    with pytest.raises(KeyError):
        corpus.build_record("0_1")


def test_twist_word_validation():
    with pytest.raises(ValueError):
        corpus.twist_plat_word(0)
    assert corpus.twist_plat_word(1) == [-2, 1, -2]


@pytest.mark.parametrize("name", corpus.names())
def test_published_jones_and_alexander(name):
    rec = corpus.knot(name)
    assert rec.jones2 == QLaurent(PUBLISHED_JONES2[name])
    assert rec.alexander == QLaurent(PUBLISHED_ALEXANDER[name])


@pytest.mark.parametrize("name", corpus.names())
def test_layouts_have_minimal_crossing_number(name):
    rec = corpus.knot(name)
    assert rec.crossing_count == MINIMAL_CROSSINGS[name]
    stats = morse_stats(list(rec.morse))
    assert stats.crossing_count == rec.crossing_count
    assert stats.writhe == rec.writhe
    pstats = pd_stats(list(rec.pd))
    assert (pstats.crossing_count, pstats.writhe) == (rec.crossing_count, rec.writhe)


@pytest.mark.parametrize("name", corpus.names())
def test_shipped_matches_regenerated(name):
    assert corpus.record_to_json_obj(corpus.knot(name)) == \
        corpus.record_to_json_obj(corpus.build_record(name))


@pytest.mark.parametrize("name", corpus.names())
def test_bracket_route_agrees(name):
    rec = corpus.knot(name)
    assert jones_via_bracket(list(rec.pd)) == rec.jones2


@pytest.mark.parametrize("name", corpus.names())
@pytest.mark.parametrize("color", [2, 3])
def test_braid_realization_same_knot(name, color):
    """The independent braid closure yields the same invariant."""
    rec = corpus.knot(name)
    braid = braid_to_morse(rec.braid_word, rec.braid_strands)
    assert colored_jones(braid, color) == colored_jones(list(rec.morse), color)


def test_braid_realization_same_alexander():
    from jonescope.diagram import braid_to_pd

    for name in corpus.names():
        rec = corpus.knot(name)
        pd = braid_to_pd(rec.braid_word, rec.braid_strands)
        assert alexander_poly(pd) == rec.alexander


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_unknot_diagrams_trivial(idx):
    events = corpus.unknot_diagrams()[idx]
    for n in range(1, 7):
        assert colored_jones(events, n) == QLaurent.one()
