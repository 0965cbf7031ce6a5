"""Morse tangle and planar diagram parsing, validation, and conversion."""

import pytest

from jonescope.diagram import (
    Cap,
    ConversionError,
    CrossNeg,
    CrossPos,
    Cup,
    DiagramError,
    PDCrossing,
    braid_to_morse,
    braid_to_pd,
    build_walk,
    format_morse,
    format_pd,
    morse_mirror,
    morse_stats,
    parse_morse,
    parse_pd,
    pd_mirror,
    pd_stats,
    pd_to_morse,
    pd_validate,
    pd_walk_arcs,
)

WAVE = [Cup(1), Cap(0)]
KINK_POS = [Cup(1), CrossPos(0), Cap(1)]
KINK_NEG = [Cup(1), CrossNeg(0), Cap(1)]
TREFOIL = braid_to_morse([1, 1, 1], 2)
FIG8 = braid_to_morse([1, -2, 1, -2], 3)


def test_parse_morse_roundtrip():
    text = "# a kink\ncup 1\n\nx+ 0  # crossing\ncap 1\n"
    events = parse_morse(text)
    assert events == KINK_POS
    assert parse_morse(format_morse(events)) == events


def test_parse_morse_rejects_garbage():
    with pytest.raises(DiagramError):
        parse_morse("cup one")
    with pytest.raises(DiagramError):
        parse_morse("cross 0")
    with pytest.raises(DiagramError):
        parse_morse("cup -1")


def test_morse_mirror_involution():
    assert morse_mirror(morse_mirror(TREFOIL)) == TREFOIL
    assert morse_mirror(KINK_POS) == KINK_NEG


def test_wave_walk_trivial():
    walk = build_walk(WAVE)
    assert walk.crossing_count == 0
    assert walk.writhe == 0
    assert walk.passages == ()
    # the +2 cap and -2 cup cancel on the same arc
    assert walk.arc_sigma == {}


def test_trefoil_walk_alternates_roles():
    walk = build_walk(TREFOIL)
    assert walk.signs == (1, 1, 1)
    roles = [p.is_over for p in walk.passages]
    assert roles == [True, False, True, False, True, False]
    assert walk.passages[0].crossing == walk.passages[3].crossing
    pairs = walk.passage_pairs()
    assert sorted(a for a, _ in pairs) == [0, 1, 2]
    assert all(a < b for a, b in pairs)


def test_converted_layouts_start_over_end_under():
    # pd_to_morse cuts the walk so the tangle meets its first crossing on
    # the over strand and its last on the under strand
    for word, strands in ([1, 1, 1], 2), ([1, -2, 1, -2], 3):
        walk = build_walk(pd_to_morse(braid_to_pd(word, strands)))
        assert walk.passages[0].is_over
        assert not walk.passages[-1].is_over


def test_walk_width_errors():
    with pytest.raises(DiagramError):
        build_walk([Cup(3)])
    with pytest.raises(DiagramError):
        build_walk([Cap(0)])
    with pytest.raises(DiagramError):
        build_walk([Cup(1), CrossPos(2), Cap(0)])
    with pytest.raises(DiagramError):
        build_walk([Cup(0)])  # ends with width 3


def test_walk_rejects_downward_crossing():
    with pytest.raises(DiagramError, match="downward"):
        build_walk([Cup(1), CrossPos(1), Cap(0)])


def test_walk_rejects_split_component():
    with pytest.raises(DiagramError, match="components"):
        build_walk([Cup(0), Cap(0)])


def test_morse_stats_trefoil():
    stats = morse_stats(TREFOIL)
    assert stats.crossing_count == 3
    assert stats.writhe == 3
    assert stats.c == 1
    assert morse_stats(WAVE).c == 0


def test_parse_pd_roundtrip():
    text = "# trefoil closure\nX+[1,4,2,5]\nX+[3, 6, 4, 1]\nX+[5,2,6,3]\n"
    code = parse_pd(text)
    assert code[0] == PDCrossing(1, 1, 4, 2, 5)
    assert parse_pd(format_pd(code)) == code


def test_parse_pd_rejects_garbage():
    with pytest.raises(DiagramError):
        parse_pd("X[1,2,3,4]")
    with pytest.raises(DiagramError):
        parse_pd("X+[1,2,3]")


def test_pd_validate_errors():
    with pytest.raises(DiagramError, match="twice"):
        pd_validate([PDCrossing(1, 1, 2, 3, 1)])
    with pytest.raises(DiagramError, match="enters two"):
        pd_validate([PDCrossing(1, 1, 1, 2, 2)])
    with pytest.raises(DiagramError, match="component"):
        pd_validate([PDCrossing(1, 1, 2, 1, 2)])
    with pytest.raises(DiagramError, match="component"):
        pd_validate(
            [PDCrossing(1, 1, 2, 2, 1), PDCrossing(1, 3, 4, 4, 3)]
        )
    with pytest.raises(DiagramError):
        pd_validate([])


def test_pd_stats_and_walk():
    pd = braid_to_pd([1, 1, 1], 2)
    stats = pd_stats(pd)
    assert stats.crossing_count == 3
    assert stats.writhe == 3
    assert len(pd_walk_arcs(pd)) == 6


def test_pd_mirror_involution():
    pd = braid_to_pd([1, -2, 1, -2], 3)
    assert pd_mirror(pd_mirror(pd)) == pd
    assert [x.sign for x in pd_mirror(pd)] == [-x.sign for x in pd]
    pd_validate(pd_mirror(pd))


def test_braid_input_validation():
    with pytest.raises(DiagramError):
        braid_to_morse([2], 2)
    with pytest.raises(DiagramError):
        braid_to_morse([1], 1)
    with pytest.raises(DiagramError):
        braid_to_pd([], 2)
    with pytest.raises(DiagramError):
        braid_to_pd([3], 3)
    with pytest.raises(DiagramError, match="component"):
        # closure of a single positive crossing on 3 strands is a link
        build_walk(braid_to_morse([1], 3))


def test_braid_routes_agree_on_stats():
    for word, strands in ([1, 1, 1], 2), ([1, -2, 1, -2], 3):
        pd = braid_to_pd(word, strands)
        mo = braid_to_morse(word, strands)
        assert pd_stats(pd) == morse_stats(mo)


def test_pd_to_morse_trefoil():
    pd = braid_to_pd([1, 1, 1], 2)
    events = pd_to_morse(pd)
    walk = build_walk(events)
    assert walk.crossing_count == 3
    assert walk.writhe == 3
    assert walk.passages[0].is_over
    assert not walk.passages[-1].is_over


def test_pd_to_morse_figure_eight():
    pd = braid_to_pd([1, -2, 1, -2], 3)
    walk = build_walk(pd_to_morse(pd))
    assert walk.crossing_count == 4
    assert walk.writhe == 0
