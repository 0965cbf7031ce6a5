"""State-sum colored Jones values against independent oracles."""

import pytest

from jonescope.diagram import (
    Cap,
    CrossNeg,
    CrossPos,
    Cup,
    PDCrossing,
    braid_to_morse,
    braid_to_pd,
    morse_mirror,
    pd_mirror,
    pd_to_morse,
)
from jonescope.qlaurent import QLaurent, ev_root_of_unity
from jonescope.statesum import (
    alexander_poly,
    colored_jones,
    colored_jones_framed,
    jones3_via_cabling,
    jones_via_bracket,
    kauffman_bracket_raw,
    r_weight,
    rhat_matrix,
)

WAVE = [Cup(1), Cap(0)]
KINK_POS = [Cup(1), CrossPos(0), Cap(1)]
KINK_NEG = [Cup(1), CrossNeg(0), Cap(1)]
TREFOIL_W = [1, 1, 1]
FIG8_W = [1, -2, 1, -2]

# value of the two-variable invariant at color 2 for the closure of three
# positive half twists, in quarter exponents of q
JONES_TREFOIL = QLaurent({-4: 1, -12: 1, -16: -1})
JONES_FIG8 = QLaurent({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})

ALEX_TREFOIL = QLaurent({4: 1, 0: -1, -4: 1})
ALEX_FIG8 = QLaurent({4: -1, 0: 3, -4: -1})


def compose(m1, m2, n):
    """Entries of the operator product m1 m2 on the color grid."""
    out = {}
    for (tl, tr, a, b), w1 in m1.items():
        for (c, d, bl, br), w2 in m2.items():
            if (a, b) == (c, d):
                key = (tl, tr, bl, br)
                out[key] = out.get(key, QLaurent.zero()) + w1 * w2
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_crossings_are_inverse_operators(n):
    plus = rhat_matrix(1, n)
    minus = rhat_matrix(-1, n)
    ident = {
        (x, y, x, y): QLaurent.one() for x in range(n) for y in range(n)
    }
    assert compose(plus, minus, n) == ident
    assert compose(minus, plus, n) == ident


def test_r_weight_out_of_range_vanishes():
    assert r_weight(1, 3, 1, 1, 2).is_zero  # over strand would go negative
    assert r_weight(1, 3, 2, 2, 1).is_zero  # under strand would exceed n-1
    assert r_weight(-1, 3, 0, 0, -1).is_zero
    assert r_weight(1, 3, 3, 0, 0).is_zero  # color outside the grid


@pytest.mark.parametrize("n", [5, 7])
def test_crossing_weights_share_magnitudes_at_roots(n):
    # the signed crossing weights differ only by a phase at q = e^(2 pi i/n)
    for a in range(n):
        for b in range(n):
            for k in range(n):
                wp = ev_root_of_unity(r_weight(1, n, a, b, k), n)
                wm = ev_root_of_unity(r_weight(-1, n, a, b, k), n)
                assert abs(abs(wp) - abs(wm)) < 1e-9


@pytest.mark.parametrize("n", range(1, 11))
def test_unknot_diagrams_normalize_to_one(n):
    for events in (WAVE, KINK_POS, KINK_NEG):
        assert colored_jones(events, n) == QLaurent.one()


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_framed_kink_is_a_twist_monomial(n):
    assert colored_jones_framed(KINK_POS, n) == QLaurent.monomial(1, n * n - 1)
    assert colored_jones_framed(KINK_NEG, n) == QLaurent.monomial(1, -(n * n - 1))


def test_trefoil_color_two_frozen():
    assert colored_jones(braid_to_morse(TREFOIL_W, 2), 2) == JONES_TREFOIL


def test_figure_eight_color_two_frozen():
    assert colored_jones(braid_to_morse(FIG8_W, 3), 2) == JONES_FIG8


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_mirror_inverts_q(n):
    mo = braid_to_morse(TREFOIL_W, 2)
    assert colored_jones(morse_mirror(mo), n) == colored_jones(mo, n).substitute_q_inverse()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_figure_eight_amphichiral(n):
    j = colored_jones(braid_to_morse(FIG8_W, 3), n)
    assert j.substitute_q_inverse() == j


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_value_at_one_is_one(n):
    for word, strands in (TREFOIL_W, 2), (FIG8_W, 3):
        assert colored_jones(braid_to_morse(word, strands), n).value_at_one() == 1


def test_color_one_is_trivial():
    for word, strands in (TREFOIL_W, 2), (FIG8_W, 3):
        assert colored_jones(braid_to_morse(word, strands), 1) == QLaurent.one()


def test_bracket_oracle_color_two():
    for word, strands in (TREFOIL_W, 2), (FIG8_W, 3):
        pd = braid_to_pd(word, strands)
        mo = braid_to_morse(word, strands)
        assert jones_via_bracket(pd) == colored_jones(mo, 2)
        assert jones_via_bracket(pd_mirror(pd)) == colored_jones(morse_mirror(mo), 2)


def test_bracket_kink_normalizes_away():
    assert jones_via_bracket([PDCrossing(1, 1, 2, 2, 1)]) == QLaurent.one()
    assert jones_via_bracket([PDCrossing(-1, 2, 1, 1, 2)]) == QLaurent.one()


def test_bracket_raw_positive_curl():
    raw = kauffman_bracket_raw([PDCrossing(1, 1, 2, 2, 1)])
    # A * delta + 1/A collapses to the curl factor -A^3
    assert raw == QLaurent({3: -1})


def test_cabling_oracle_color_three():
    for word, strands in (TREFOIL_W, 2), (FIG8_W, 3):
        pd = braid_to_pd(word, strands)
        mo = braid_to_morse(word, strands)
        assert jones3_via_cabling(pd) == colored_jones(mo, 3)


def test_cabling_kink_is_unknot():
    assert jones3_via_cabling([PDCrossing(1, 1, 2, 2, 1)]) == QLaurent.one()


def test_pd_to_morse_preserves_invariant():
    for word, strands in (TREFOIL_W, 2), (FIG8_W, 3):
        pd = braid_to_pd(word, strands)
        mo = braid_to_morse(word, strands)
        for n in (2, 3):
            assert colored_jones(pd_to_morse(pd), n) == colored_jones(mo, n)


def test_alexander_frozen_values():
    assert alexander_poly(braid_to_pd(TREFOIL_W, 2)) == ALEX_TREFOIL
    assert alexander_poly(braid_to_pd(FIG8_W, 3)) == ALEX_FIG8


def test_alexander_mirror_invariant():
    pd = braid_to_pd(TREFOIL_W, 2)
    assert alexander_poly(pd_mirror(pd)) == ALEX_TREFOIL


def test_alexander_kink_trivial():
    assert alexander_poly([PDCrossing(1, 1, 2, 2, 1)]) == QLaurent.one()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_coefficient_norm_growth_bound(n):
    # || J ||_1 <= n^c 4^(c n) with c = crossings - 2
    for word, strands, c in (TREFOIL_W, 2, 1), (FIG8_W, 3, 2):
        j = colored_jones(braid_to_morse(word, strands), n)
        assert j.l1() <= n**c * 4 ** (c * n)


def test_check_bounds_unknot_diagrams():
    from jonescope.corpus import unknot_diagrams
    from jonescope.statesum import check_bounds

    for diagram in unknot_diagrams():
        report = check_bounds(diagram, 6)
        assert report.ok
        assert all(l1 == 1 for _, l1, *_ in report.rows)


def test_check_bounds_corpus():
    from jonescope.corpus import knot, names
    from jonescope.statesum import check_bounds

    for name in names()[:3]:
        report = check_bounds(list(knot(name).morse), 8)
        assert report.l1_ok and report.deg_ok
        # the quadratic leading coefficient of deg+ stays under (c+2)/4
        n, _, _, degp, cap, _, _ = report.rows[-1]
        assert degp <= cap


def test_check_bounds_envelope_is_tight_at_fit_points():
    from jonescope.corpus import knot
    from jonescope.statesum import check_bounds

    report = check_bounds(list(knot("4_1").morse), 6)
    tight = [n for n, _, _, dp, cap, _, _ in report.rows if n > 1 and dp == cap]
    assert 2 in tight or 3 in tight
