"""Hyperbolic geometry of quantum factorial growth rates.

Quantum factorials evaluated at a primitive root of unity grow like
exp(-(n/pi) * Lambda(pi * alpha)) where Lambda is the Lobachevsky
function, so the braiding weights of the state sum, ratios of five such
factorials, have growth rates given by five-term Lambda combinations.
The maximal rate is the volume of the regular ideal octahedron over
2 pi.  Volumes are computed along two independent routes, the closed
Lambda combination and a Bloch-Wigner dilogarithm sum over an ideal
triangulation, and the two are kept as separate code paths so one can
check the other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath

__all__ = [
    "V3",
    "V8",
    "INFINITY",
    "lobachevsky",
    "QFactAsym",
    "qfact_asym",
    "plus_admissible",
    "minus_admissible",
    "r_plus",
    "r_minus",
    "cross_ratio",
    "tetra_volume",
    "octahedron_volume",
    "ContinuumMax",
    "maximize_r",
    "sine_log_sums",
    "predicted_argmax",
    "DiscreteMax",
    "discrete_rmax",
]


def _lob_coefficients(count: int = 28) -> tuple[float, ...]:
    # zeta(2k) / (k (2k+1) pi^(2k)); after symmetry reduction the series
    # argument is at most pi/2, so each term loses a factor of 4
    with mpmath.workdps(40):
        return tuple(
            float(mpmath.zeta(2 * k) / (k * (2 * k + 1) * mpmath.pi ** (2 * k)))
            for k in range(1, count + 1)
        )


_LOB_COEFF = _lob_coefficients()


def lobachevsky(theta: float) -> float:
    """Lobachevsky function, odd and pi-periodic, to 1e-13 absolute.

    The defining Fourier series (1/2) sum sin(2 n z)/n^2 converges too
    slowly at the endpoints, so it is resummed: the endpoint singularity
    z - z log(2z) comes out in closed form and the remainder is an even
    zeta series in (z/pi)^2.
    """
    z = math.fmod(float(theta), math.pi)
    if z < 0.0:
        z += math.pi
    sign = 1.0
    if z > 0.5 * math.pi:
        z = math.pi - z
        sign = -1.0
    if z == 0.0:
        return 0.0
    acc = z - z * math.log(2.0 * z)
    zz = z * z
    p = z
    for c in _LOB_COEFF:
        p *= zz
        acc += c * p
    return sign * acc


V8 = 8 * lobachevsky(math.pi / 4)
V3 = 2 * lobachevsky(math.pi / 6)


@dataclass(frozen=True)
class QFactAsym:
    """Log magnitude of a quantum factorial at a primitive root of unity."""

    alpha: float
    n: int
    index: int
    value: float
    residual: float


def qfact_asym(alpha: float, n: int, shift: int = 0) -> QFactAsym:
    """log |{floor(alpha n) + shift}!| at q = e^(2 pi i / n), with residual.

    The value is the plain log-domain sum of log(2 sin(k pi / n)); the
    residual is what is left after removing the leading linear term
    -(n/pi) Lambda(pi alpha), and stays O(log n) uniformly in alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    if n < 2:
        raise ValueError("need n >= 2")
    index = math.floor(alpha * n) + shift
    if not 0 <= index <= n - 1:
        raise ValueError("factorial index outside the representation range")
    step = math.pi / n
    value = math.fsum(math.log(2.0 * math.sin(k * step)) for k in range(1, index + 1))
    residual = value + (n / math.pi) * lobachevsky(math.pi * alpha)
    return QFactAsym(float(alpha), n, index, value, residual)


_ADMISSIBLE_TOL = 1e-12


def plus_admissible(alpha: float, beta: float, kappa: float) -> bool:
    """Whether the triple is in the domain of the positive growth rate."""
    lo, hi = -_ADMISSIBLE_TOL, 1.0 + _ADMISSIBLE_TOL
    return (
        lo <= alpha <= hi
        and lo <= beta <= hi
        and lo <= kappa <= hi
        and lo <= beta + kappa <= hi
        and lo <= alpha - kappa <= hi
    )


def minus_admissible(alpha: float, beta: float, kappa: float) -> bool:
    return plus_admissible(beta, alpha, kappa)


def r_plus(alpha: float, beta: float, kappa: float) -> float:
    """Growth rate of the positive braiding weight at colors (alpha, beta) n.

    Five-term Lobachevsky combination over pi; the limit of
    (1/n) log |ev_n R_+(n; floor(n alpha), floor(n beta), floor(n kappa))|.
    """
    if not plus_admissible(alpha, beta, kappa):
        raise ValueError("triple outside the admissible region")
    return (
        -lobachevsky(math.pi * (beta + kappa))
        + lobachevsky(math.pi * beta)
        + lobachevsky(math.pi * kappa)
        - lobachevsky(math.pi * alpha)
        + lobachevsky(math.pi * (alpha - kappa))
    ) / math.pi


def r_minus(alpha: float, beta: float, kappa: float) -> float:
    """Growth rate of the negative braiding weight; the mirror of r_plus."""
    if not minus_admissible(alpha, beta, kappa):
        raise ValueError("triple outside the admissible region")
    return r_plus(beta, alpha, kappa)


INFINITY = complex(math.inf, 0.0)


def _at_infinity(z) -> bool:
    z = complex(z)
    return math.isinf(z.real) or math.isinf(z.imag)


def cross_ratio(z0, z1, z2, z3) -> complex:
    """Shape parameter (z0-z3)(z1-z2) / ((z0-z2)(z1-z3)) of ordered vertices.

    A vertex at INFINITY is handled symbolically: it appears in exactly
    one numerator and one denominator factor, whose ratio tends to 1, so
    both factors drop out.  Coincident vertices are rejected.
    """
    pts = [None if _at_infinity(z) else complex(z) for z in (z0, z1, z2, z3)]
    if sum(p is None for p in pts) > 1:
        raise ValueError("coincident vertices at infinity")
    finite = [p for p in pts if p is not None]
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            if finite[i] == finite[j]:
                raise ValueError("coincident vertices")

    def factor(u, v) -> complex:
        if u is None or v is None:
            return complex(1.0)
        return u - v

    a, b, c, d = pts
    return factor(a, d) * factor(b, c) / (factor(a, c) * factor(b, d))


def tetra_volume(z) -> float:
    """Signed volume of the ideal tetrahedron of shape z.

    Bloch-Wigner value D(z) = Im(Li2(z)) + arg(1-z) log|z|.  Positive
    for positively oriented shapes (Im z > 0), zero on the degenerate
    real locus; the shape must avoid 0 and 1.
    """
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError("shape must avoid 0 and 1")
    if z.imag == 0.0:
        return 0.0
    with mpmath.workdps(30):
        li2 = mpmath.polylog(2, mpmath.mpc(z.real, z.imag))
        im_li2 = float(mpmath.im(li2))
    return im_li2 + cmath.phase(1.0 - z) * math.log(abs(z))


def octahedron_volume(alpha: float, beta: float, kappa: float) -> float:
    """Volume of the ideal octahedron with vertices 0, 1, oo, and three
    unit-circle points determined by the triple.

    With z_x = exp(2 pi i x), the six ideal vertices are
    (A, B, C, D, E, F) = (0, 1, oo, z_kappa, (z_beta z_kappa - 1)/(z_beta - 1),
    z_alpha).  The octahedron splits into five ideal tetrahedra spanning
    ABDE, BDCE, ABCD, ABCF, ACDF; each is listed below with its vertex
    order arranged so the five signed Bloch-Wigner volumes add coherently
    (two of the naive orders are orientation-reversed).
    """
    if not plus_admissible(alpha, beta, kappa):
        raise ValueError("triple outside the admissible region")
    z_a = cmath.exp(2j * math.pi * alpha)
    z_b = cmath.exp(2j * math.pi * beta)
    z_k = cmath.exp(2j * math.pi * kappa)
    if z_b == 1:
        raise ValueError("degenerate vertex configuration")
    A, B, C = complex(0.0), complex(1.0), INFINITY
    D = z_k
    E = (z_b * z_k - 1.0) / (z_b - 1.0)
    F = z_a
    verts = (A, B, C, D, E, F)
    for i in range(6):
        for j in range(i + 1, 6):
            if verts[i] == verts[j]:
                raise ValueError("degenerate vertex configuration")
    pieces = (
        (A, B, E, D),
        (B, D, C, E),
        (A, B, D, C),
        (A, B, C, F),
        (A, C, D, F),
    )
    return math.fsum(tetra_volume(cross_ratio(*p)) for p in pieces)


@dataclass(frozen=True)
class ContinuumMax:
    """Maximum of the continuum growth rate over the admissible region."""

    argmax: tuple[float, float, float]
    value: float
    grid_step: float


def maximize_r(step: int = 64) -> ContinuumMax:
    """Locate the maximum of r_plus by coarse grid plus local refinement.

    The coarse pass walks the admissible lattice with spacing 1/step
    using a shared Lobachevsky table; the winner is then polished by a
    pattern search with the box shrinking to 1e-9.
    """
    if step < 4:
        raise ValueError("grid too coarse")
    lam = [lobachevsky(math.pi * j / step) for j in range(step + 1)]
    best_v = -math.inf
    best = (0, 0, 0)
    for ka in range(step + 1):
        for be in range(step + 1 - ka):
            base = lam[be] + lam[ka] - lam[be + ka]
            for al in range(ka, step + 1):
                v = base - lam[al] + lam[al - ka]
                if v > best_v:
                    best_v = v
                    best = (al, be, ka)
    a, b, k = (c / step for c in best)
    val = r_plus(a, b, k)
    h = 1.0 / step
    while h > 1e-9:
        h *= 0.5
        moved = True
        while moved:
            moved = False
            for da, db, dk in (
                (h, 0, 0), (-h, 0, 0), (0, h, 0), (0, -h, 0), (0, 0, h), (0, 0, -h),
            ):
                ca, cb, ck = a + da, b + db, k + dk
                if not plus_admissible(ca, cb, ck):
                    continue
                cv = r_plus(ca, cb, ck)
                if cv > val:
                    a, b, k, val = ca, cb, ck, cv
                    moved = True
    return ContinuumMax((a, b, k), val, 1.0 / step)


def sine_log_sums(n: int) -> list[float]:
    """Cumulative logs of 2 sin(j pi / n); entry j is the log of the
    j-fold product, the log magnitude of the evaluated factorial {j}!."""
    if n < 2:
        raise ValueError("need n >= 2")
    out = [0.0] * n
    acc = 0.0
    step = math.pi / n
    for j in range(1, n):
        acc += math.log(2.0 * math.sin(j * step))
        out[j] = acc
    return out


def predicted_argmax(n: int, kind: str = "plus") -> tuple[int, int, int]:
    """Closed-form location of the maximal braiding weight at a primitive
    root of unity: a = floor(3n/4), b = floor((n-1)/4), k = a - b, with a
    and b swapped for the negative weight.

    Exhaustive search confirms this for every 5 <= n <= 60.  The naive
    rounding floor((3n-3)/4) for a undershoots by one whenever
    n != 1 mod 4: the step ratio of the window maximum stays above 1 for
    one extra step past n/2.
    """
    a = (3 * n) // 4
    b = (n - 1) // 4
    if kind == "plus":
        return (a, b, a - b)
    if kind == "minus":
        return (b, a, a - b)
    raise ValueError("kind must be 'plus' or 'minus'")


@dataclass(frozen=True)
class DiscreteMax:
    """Maximum braiding-weight magnitude at a primitive root of unity."""

    n: int
    kind: str
    argmax: tuple[int, int, int]
    logmax: float
    predicted: tuple[int, int, int]
    matches: bool
    searched: str


def _plus_scan(L: list[float], n: int) -> tuple[float, tuple[int, int, int]]:
    # log |ev R_+(n;a,b,k)| = L[b+k] + L[a] - L[b] - L[k] - L[a-k]; for a
    # fixed k the objective splits into identical windows over b and over
    # d = a - k, so one window scan per k covers the whole triple grid
    best_v = -math.inf
    best = (0, 0, 0)
    for k in range(n):
        w = -math.inf
        wb = 0
        for b in range(n - k):
            cur = L[b + k] - L[b]
            if cur > w:
                w = cur
                wb = b
        v = 2.0 * w - L[k]
        if v > best_v:
            best_v = v
            best = (wb + k, wb, k)
    return best_v, best


def _box_scan(L: list[float], n: int, center: tuple[int, int, int], halfwidth: int = 3):
    pa, pb, pk = center
    best_v = -math.inf
    best = center
    for da in range(-halfwidth, halfwidth + 1):
        for db in range(-halfwidth, halfwidth + 1):
            for dk in range(-halfwidth, halfwidth + 1):
                a, b, k = pa + da, pb + db, pk + dk
                if not (0 <= k <= a <= n - 1 and 0 <= b and b + k <= n - 1):
                    continue
                v = L[b + k] + L[a] - L[b] - L[k] - L[a - k]
                if v > best_v:
                    best_v = v
                    best = (a, b, k)
    return best_v, best


def discrete_rmax(n: int, kind: str = "plus", brute: bool | None = None) -> DiscreteMax:
    """Maximize log |ev_n R(n;a,b,k)| over all valid discrete triples.

    Valid triples for the positive weight satisfy 0 <= k <= a <= n-1 and
    0 <= b with b + k <= n-1; the negative weight mirrors them with a and
    b swapped and has the same magnitudes, so one scan serves both.  Up
    to n = 500 the search is exhaustive; past that (or with brute=False)
    only a neighborhood of the predicted argmax is examined.
    """
    if n < 5:
        raise ValueError("need n >= 5")
    pred = predicted_argmax(n, kind)
    L = sine_log_sums(n)
    if brute is None:
        brute = n <= 500
    if brute:
        logmax, plus_arg = _plus_scan(L, n)
        searched = "exhaustive"
    else:
        plus_center = pred if kind == "plus" else (pred[1], pred[0], pred[2])
        logmax, plus_arg = _box_scan(L, n, plus_center)
        searched = "neighborhood"
    if kind == "plus":
        arg = plus_arg
    else:
        arg = (plus_arg[1], plus_arg[0], plus_arg[2])
    return DiscreteMax(n, kind, arg, logmax, pred, arg == pred, searched)
