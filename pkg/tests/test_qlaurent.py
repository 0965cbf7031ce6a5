"""Exact arithmetic layer: Laurent polynomials, series, evaluation."""

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jonescope.qlaurent import (
    EvalPoint,
    InexactDivisionError,
    QLaurent,
    QSeries,
    ZeroDegreeError,
    eval_with_error,
    ev_root_of_unity,
    exact_div,
    exp_series,
    measures,
    qbinom,
    qfact,
    qfalling,
    qint,
    to_series,
)
from jonescope import qlaurent as _ql

term_maps = st.dictionaries(
    st.integers(min_value=-300, max_value=300),
    st.integers(min_value=-10**6, max_value=10**6),
    max_size=40,
)
polys = term_maps.map(QLaurent)


def test_zero_and_one():
    z = QLaurent.zero()
    assert z.is_zero and len(z) == 0
    assert QLaurent.one().value_at_one() == 1
    assert QLaurent({3: 0, 5: 2}) == QLaurent({5: 2})


def test_degree_of_zero_raises():
    with pytest.raises(ZeroDegreeError):
        QLaurent.zero().deg_plus()
    with pytest.raises(ZeroDegreeError):
        QLaurent.zero().deg_minus()


def test_qint_values():
    # {2} = q + 1/q... no: {2} = q^1 - q^-1 in balanced convention
    assert qint(2) == QLaurent({4: 1, -4: -1})
    assert qint(0).is_zero
    assert qint(-3) == -qint(3)
    # {n} at q=1 vanishes; derivative information via series
    s = to_series(qint(5), 3)
    assert s.coeffs[0] == 0 and s.coeffs[1] == 5


def test_qfact_frozen():
    # {3}! = {1}{2}{3} expanded by hand:
    # (q^{1/2}-q^{-1/2})(q-q^{-1})(q^{3/2}-q^{-3/2})
    expected = QLaurent({12: 1, 4: -1, -4: -1, 12 - 8: -1, -12 + 8: 1, -12: -1})
    # direct expansion: q^3 - q^2 - q^1 + q^-1 + q^-2 - q^-3
    expected = QLaurent({12: 1, 8: -1, 4: -1, -4: 1, -8: 1, -12: -1})
    assert qfact(3) == expected
    assert qfact(0) == QLaurent.one()
    with pytest.raises(ValueError):
        qfact(-1)


def test_qbinom_matches_classical_binomial():
    for a in range(0, 14):
        for b in range(0, a + 1):
            f = qbinom(a, b)
            assert f.l1() == math.comb(a, b)
            assert f.value_at_one() == math.comb(a, b)
            assert all(c > 0 for _, c in f.terms())
    assert qbinom(5, -1).is_zero
    assert qbinom(5, 6).is_zero


def test_qbinom_symmetry_and_pascal():
    for a in range(0, 10):
        for b in range(0, a + 1):
            assert qbinom(a, b) == qbinom(a, a - b)
    # balanced Pascal rule: C(a,b) = q^{b/2} C(a-1,b) + q^{-(a-b)/2} C(a-1,b-1)
    for a in range(1, 9):
        for b in range(1, a):
            lhs = qbinom(a, b)
            rhs = qbinom(a - 1, b).shift(2 * b) + qbinom(a - 1, b - 1).shift(-2 * (a - b))
            assert lhs == rhs, (a, b)


def test_falling_factorial_l1_bound():
    for a in range(1, 16):
        for k in range(0, min(a, 9) + 1):
            f = qfalling(a, k)
            if not f.is_zero:
                assert f.l1() <= 2**k


def test_qbinom_l1_bound():
    for a in range(0, 16):
        for b in range(0, a + 1):
            assert qbinom(a, b).l1() <= 2**a


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_mul_commutes_and_distributes(a, b):
    assert a * b == b * a
    c = QLaurent({1: 2, -5: 3})
    assert (a + b) * c == a * c + b * c


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_exact_div_inverts_mul(a, b):
    if a.is_zero or b.is_zero:
        return
    assert exact_div(a * b, b) == a


@given(term_maps, term_maps)
@settings(max_examples=40, deadline=None)
def test_kronecker_matches_schoolbook(a, b):
    a = {e: c for e, c in a.items() if c}
    b = {e: c for e, c in b.items() if c}
    if not a or not b:
        return
    assert _ql._mul_kronecker(a, b) == _ql._mul_dicts(a, b)


def test_inexact_division_raises():
    with pytest.raises(InexactDivisionError):
        exact_div(qint(3), qint(2))
    with pytest.raises(InexactDivisionError):
        exact_div(QLaurent({0: 3}), QLaurent({0: 2}))
    with pytest.raises(ZeroDivisionError):
        exact_div(qint(1), QLaurent.zero())
    assert exact_div(QLaurent.zero(), qint(2)).is_zero


def test_measures():
    m = measures(qint(2))
    assert (m.l1, m.deg_plus, m.deg_minus) == (2, 4, -4)
    assert m.deg_plus_q == 1 and m.deg_minus_q == -1


def test_mirror_involution():
    f = qbinom(6, 2) - qint(3).shift(1)
    g = f.substitute_q_inverse()
    assert g.substitute_q_inverse() == f
    assert qbinom(6, 2).substitute_q_inverse() == qbinom(6, 2)


def test_series_orders_must_match():
    a = QSeries.constant(1, 4)
    b = QSeries.constant(1, 5)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * b


def test_series_expansion_of_quantum_integer():
    # {1}(e^h) = e^{h/2} - e^{-h/2} = h + h^3/24 + h^5/1920 + ...
    s = to_series(qint(1), 6)
    assert s.coeffs[:6] == [
        Fraction(0),
        Fraction(1),
        Fraction(0),
        Fraction(1, 24),
        Fraction(0),
        Fraction(1, 1920),
    ]


def test_series_inverse_and_exp():
    f = to_series(qbinom(4, 2), 8)
    one = QSeries.constant(1, 8)
    assert f * f.inverse() == one
    e = exp_series(Fraction(3, 2), 4)
    assert e.coeffs == [Fraction(1), Fraction(3, 2), Fraction(9, 8), Fraction(9, 16), Fraction(27, 128)]


def test_root_of_unity_magnitudes():
    for n in (2, 3, 5, 8, 13):
        for k in range(1, n):
            v = ev_root_of_unity(qint(k), n)
            assert abs(abs(v) - 2 * math.sin(k * math.pi / n)) < 1e-12


def test_sine_product_identity():
    # prod_{j=1}^{n-1} |{j}(zeta_n)| = n
    for n in (3, 7, 12, 25):
        p = 1.0
        for j in range(1, n):
            p *= abs(ev_root_of_unity(qint(j), n))
        assert abs(p - n) < 1e-8 * n


def test_ev_uses_exact_bucketing():
    # q^{4n/4} contributions a full period apart must cancel exactly
    n = 6
    f = QLaurent({0: 1, 4 * n: -1})
    assert ev_root_of_unity(f, n) == 0


def test_eval_point_validation():
    with pytest.raises(ValueError):
        EvalPoint(kind="root_of_unity")
    with pytest.raises(ValueError):
        EvalPoint(kind="general")
    with pytest.raises(ValueError):
        EvalPoint(kind="nope", n=3)


def test_eval_with_error_general():
    pt = EvalPoint(kind="general", alpha=0.3 + 0.1j, precision_bits=200)
    v, err = eval_with_error(qint(2), pt)
    ref = cmath.exp(0.3 + 0.1j) - cmath.exp(-(0.3 + 0.1j))
    assert abs(v - ref) < 1e-13
    assert err < 1e-13
    assert eval_with_error(QLaurent.zero(), pt) == (0j, 0.0)


def test_eval_error_bound_is_honest():
    pt53 = EvalPoint(kind="root_of_unity", n=7, precision_bits=53)
    pt300 = EvalPoint(kind="root_of_unity", n=7, precision_bits=300)
    f = qfact(6)
    v53, e53 = eval_with_error(f, pt53)
    v300, e300 = eval_with_error(f, pt300)
    assert abs(v53 - v300) <= e53 + e300


def test_json_roundtrip():
    f = qbinom(9, 4) - qint(3)
    assert QLaurent.from_json_obj(f.to_json_obj()) == f
    obj = f.to_json_obj()
    exps = [t[0] for t in obj["terms"]]
    assert exps == sorted(exps)
    assert all(isinstance(t[1], str) for t in obj["terms"])
    with pytest.raises(ValueError):
        QLaurent.from_json_obj({"terms": [[0, "1"], [0, "2"]]})


def test_integrality_predicates():
    assert QLaurent.q_power(-3).is_integral()
    assert not qint(1).is_integral()
    assert qint(1).is_half_integral()
    assert not QLaurent({1: 1}).is_half_integral()
