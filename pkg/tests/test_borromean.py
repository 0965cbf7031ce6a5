"""Borromean rings: exact Habiro sum, reduced root-of-unity sum, volume limit."""

import math

import pytest

from jonescope.borromean import (
    EXACT_LIMIT,
    borromean_eval,
    habiro_borromean,
    log_gamma,
    reduced_eval,
    volume_scan,
)
from jonescope.hypervol import V8, sine_log_sums
from jonescope.qlaurent import QLaurent, exact_div, ev_root_of_unity, qint
from jonescope.statesum import r_weight


def _habiro_reference(n):
    # direct transcription: per-term products, denominators cleared with
    # plain polynomial arithmetic, factorial square divided out factor by
    # factor through the generic long division
    if n == 1:
        return QLaurent.one()
    sq = [qint(j) * qint(j) for j in range(2 * n)]
    suffix = [QLaurent.one()] * (2 * n + 1)
    for m in range(2 * n - 1, 0, -1):
        suffix[m] = sq[m] * suffix[m + 1]
    total = QLaurent.zero()
    cubes = QLaurent.one()
    fact2 = QLaurent.one()
    for l in range(n):
        if l:
            pair = qint(n + l) * qint(n - l)
            cubes = cubes * (pair * pair * pair)
            fact2 = fact2 * sq[l]
        term = sq[n] * cubes * fact2 * suffix[2 * l + 2]
        total = total - term if l % 2 else total + term
    out = total
    for j in range(2 * n - 1, 0, -1):
        out = exact_div(out, qint(j))
        out = exact_div(out, qint(j))
    return out


# exact polynomial ---------------------------------------------------------


def test_color_one_is_trivial():
    assert habiro_borromean(1) == QLaurent.one()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_value_at_one_counts_components(n):
    # three components at color n leave n^2 after one normalization
    assert habiro_borromean(n).value_at_one() == n * n


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_integral_and_amphichiral(n):
    j = habiro_borromean(n)
    assert j.is_integral()
    assert j.substitute_q_inverse() == j


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_packed_pipeline_matches_plain_arithmetic(n):
    assert habiro_borromean(n) == _habiro_reference(n)


def test_exact_limit_enforced():
    with pytest.raises(ValueError):
        habiro_borromean(EXACT_LIMIT + 1)
    with pytest.raises(ValueError):
        habiro_borromean(0)


# reduced evaluation -------------------------------------------------------


def test_reflection_identity():
    # products of 2 sin(j pi / n) pair up to n itself
    for n in range(2, 201):
        sums = sine_log_sums(n)
        for k in range(n):
            assert abs(math.exp(sums[k] + sums[n - 1 - k]) - n) < 1e-9 * n


@pytest.mark.parametrize("n", [6, 9, 11])
def test_gamma_is_a_braiding_weight_magnitude(n):
    # the surviving summand at the dominant index is a single positive
    # crossing weight evaluated at the root of unity
    l = (3 * n - 3) // 4
    entry = r_weight(1, n, l, n - 1 - l, 2 * l + 1 - n)
    weight = abs(ev_root_of_unity(entry, n))
    assert abs(math.exp(log_gamma(n, l)) - weight) < 1e-9 * max(1.0, weight)


def test_log_gamma_range_check():
    with pytest.raises(ValueError):
        log_gamma(10, 4)
    with pytest.raises(ValueError):
        log_gamma(10, 10)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12, 20, 28, 40])
def test_exact_matches_reduced(n):
    exact = abs(ev_root_of_unity(habiro_borromean(n), n))
    reduced = math.exp(reduced_eval(n))
    assert abs(exact - reduced) <= 1e-8 * reduced


def test_reduced_positive_and_finite():
    for n in (2, 17, 100, 1234, 5000):
        value = reduced_eval(n)
        assert math.isfinite(value)
        assert value > 0
    with pytest.raises(ValueError):
        reduced_eval(1)


@pytest.mark.parametrize("n", [9, 40, 150])
def test_sandwich_bounds(n):
    value = reduced_eval(n)
    dominant = (3 * n - 3) // 4
    lower = 2 * math.log(n) + 2 * log_gamma(n, dominant)
    peak = max(log_gamma(n, l) for l in range((n - 2) // 2 + 1, n))
    upper = 3 * math.log(n) + 2 * peak
    assert lower <= value <= upper


# volume limit -------------------------------------------------------------


def test_eval_bundle():
    small = borromean_eval(12)
    assert small.exact is not None
    assert abs(abs(ev_root_of_unity(small.exact, 12)) - math.exp(small.reduced)) < 1e-6
    assert small.normalized == 2 * math.pi * small.reduced / 12
    big = borromean_eval(500)
    assert big.exact is None
    assert big.normalized > 0


def test_volume_scan_converges():
    rows = volume_scan([250, 500, 1000, 2000])
    residuals = [abs(r[2]) for r in rows]
    assert all(b < a for a, b in zip(residuals, residuals[1:]))
    n, normalized, residual = rows[-1]
    assert n == 2000
    assert abs(residual) <= 0.05 * 2 * V8
    assert abs(normalized - 7.3277247534) < 0.2
