"""Cyclotomic expansion of the colored Jones function.

The colored Jones polynomials of a knot collapse onto a short sequence
of Laurent polynomials H_k through a triangular linear system: J_n is
the sum over k of C_{n,k} H_k, where the kernel C_{n,k} vanishes once
k reaches n.  The H_k live in Z[q, 1/q] even though the intermediate
arithmetic runs over quarter powers, which makes their integrality a
sharp end-to-end check on the crossing weights: perturbing a single
monomial of any J_n destroys it.

Also here: empirical fits of the quadratic degree envelope and the
exponential l1 envelope of the H_k, and the symmetry principle for
evaluations at roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .corpus import jones, resolve
from .qlaurent import (
    QLaurent,
    ev_root_of_unity,
    exact_div,
    qbinom,
    qfact,
    qint,
)

__all__ = [
    "CyclotomicExpansion",
    "ReconstructionReport",
    "BoundCReport",
    "SymmetryReport",
    "kernel_c",
    "habiro_from_jones",
    "habiro_h",
    "reconstruct",
    "check_boundC",
    "symmetry_eval",
]


def kernel_c(n: int, k: int) -> QLaurent:
    """Kernel polynomial: product of (q^n + q^-n - q^j - q^-j), j = 1..k."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if k < 0:
        raise ValueError("k must be nonnegative")
    base = QLaurent.q_power(n) + QLaurent.q_power(-n)
    out = QLaurent.one()
    for j in range(1, k + 1):
        out = out * (base - QLaurent.q_power(j) - QLaurent.q_power(-j))
    return out


def habiro_from_jones(source_j: Sequence[QLaurent]) -> list[QLaurent]:
    """Solve the triangular system for H_0..H_m given J_1..J_{m+1}.

    source_j[k-1] holds J_k.  Each H_n is assembled as a single exact
    quotient by {2n+2}!; an inexact division means the inputs are not
    colored Jones values of any knot and raises immediately.
    """
    out: list[QLaurent] = []
    for n in range(len(source_j)):
        acc = QLaurent.zero()
        for k in range(1, n + 2):
            term = qint(2 * k) * qint(k) * qbinom(2 * n + 2, n + 1 - k)
            term = term * source_j[k - 1]
            acc = acc + (term if (n + 1 - k) % 2 == 0 else -term)
        out.append(exact_div(acc, qfact(2 * n + 2)))
    return out


@dataclass(frozen=True)
class CyclotomicExpansion:
    """H_0..H_m of one knot, with the J values they were solved from.

    source_J[k-1] is J_{K,k} for colors 1..m+1.
    """

    knot: str
    H: tuple[QLaurent, ...]
    source_J: tuple[QLaurent, ...]

    def integral(self) -> bool:
        """True when every H_k has whole q powers and integer coefficients."""
        return all(h.is_integral() for h in self.H)


def habiro_h(knot, m: int) -> CyclotomicExpansion:
    """Extract H_{K,0..m} from exact state-sum values of J_{K,1..m+1}."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    name, morse = resolve(knot)
    js = tuple(jones(morse, k) for k in range(1, m + 2))
    return CyclotomicExpansion(knot=name, H=tuple(habiro_from_jones(js)), source_J=js)


@dataclass(frozen=True)
class ReconstructionReport:
    knot: str
    n: int
    ok: bool
    # difference (sum_k C_{n,k} H_k) - J_n; its terms are the mismatches
    mismatch: QLaurent


def reconstruct(expansion: CyclotomicExpansion, n: int) -> ReconstructionReport:
    """Check J_n == sum_{k<n} C_{n,k} H_k exactly, term by term."""
    if n < 1:
        raise ValueError("color must be a positive integer")
    if n > len(expansion.source_J):
        raise ValueError(f"expansion holds colors up to {len(expansion.source_J)}")
    total = QLaurent.zero()
    for k in range(n):
        total = total + kernel_c(n, k) * expansion.H[k]
    diff = total - expansion.source_J[n - 1]
    return ReconstructionReport(expansion.knot, n, diff.is_zero, diff)


@dataclass(frozen=True)
class BoundCReport:
    """Minimal envelope constants over the computed range of colors.

    a0 is the least constant with max(|deg+|, |deg-|) <= a0 n^2 in whole
    q units, a1 the least with l1-norm <= a1^n, both over 1 <= n <= m.
    Slack tuples give the per-n gap under the fitted envelope.
    """

    knot: str
    m: int
    a0: Fraction
    a1: float
    deg_abs: tuple[Fraction, ...]
    l1: tuple[int, ...]
    deg_slack: tuple[Fraction, ...]
    l1_slack: tuple[float, ...]


def check_boundC(expansion: CyclotomicExpansion, m: int | None = None) -> BoundCReport:
    """Fit minimal quadratic-degree and exponential-norm envelopes to H."""
    if m is None:
        m = len(expansion.H) - 1
    if m >= len(expansion.H):
        raise ValueError(f"expansion holds H up to index {len(expansion.H) - 1}")
    deg_abs: list[Fraction] = []
    norms: list[int] = []
    for h in expansion.H[: m + 1]:
        if h.is_zero:
            deg_abs.append(Fraction(0))
        else:
            deg_abs.append(Fraction(max(h.deg_plus(), -h.deg_minus()), 4))
        norms.append(h.l1())
    a0 = max((d / (n * n) for n, d in enumerate(deg_abs) if n >= 1), default=Fraction(0))
    a1 = max((norms[n] ** (1.0 / n) for n in range(1, m + 1)), default=1.0)
    a1 = max(a1, 1.0)
    deg_slack = tuple(a0 * n * n - deg_abs[n] for n in range(m + 1))
    l1_slack = tuple(a1**n - norms[n] for n in range(m + 1))
    return BoundCReport(
        knot=expansion.knot,
        m=m,
        a0=a0,
        a1=a1,
        deg_abs=tuple(deg_abs),
        l1=tuple(norms),
        deg_slack=deg_slack,
        l1_slack=l1_slack,
    )


@dataclass(frozen=True)
class SymmetryReport:
    knot: str
    n: int
    m: int
    m_prime: int
    lhs: complex
    rhs: complex
    delta: float
    tolerance: float


def symmetry_eval(knot, n: int, m: int, m_prime: int) -> SymmetryReport:
    """Evaluate J_m and J_m' at q = e^(2 pi i / n) and compare.

    Requires m == +-m' mod n; the two values must then agree.  The
    tolerance scales with the larger l1 norm because the evaluation is
    a massive cancellation, and the working precision is raised to 200
    digits once the norms pass 1e12.  Disagreement beyond tolerance
    raises, since it falsifies the evaluation convention itself.
    """
    if n < 1:
        raise ValueError("root order must be a positive integer")
    if m < 1 or m_prime < 1:
        raise ValueError("colors must be positive integers")
    if (m - m_prime) % n != 0 and (m + m_prime) % n != 0:
        raise ValueError("colors must agree up to sign mod the root order")
    name, morse = resolve(knot)
    jm = jones(morse, m)
    jmp = jones(morse, m_prime)
    scale = max(jm.l1(), jmp.l1(), 1)
    bits = 665 if scale > 10**12 else 0  # 200 decimal digits
    lhs = ev_root_of_unity(jm, n, bits)
    rhs = ev_root_of_unity(jmp, n, bits)
    delta = abs(lhs - rhs)
    tolerance = 1e-9 * scale
    if delta > tolerance:
        raise ArithmeticError(
            f"symmetry violated for {name}: |{lhs} - {rhs}| = {delta} > {tolerance}"
        )
    return SymmetryReport(name, n, m, m_prime, lhs, rhs, delta, tolerance)
