"""q-difference equations: exact unrolling and constructive growth bounds.

A sequence of Laurent polynomials is q-holonomic when it satisfies
sum_{j=0}^d a_j(q^n, q) f_{n+j} = 0 with bivariate integer polynomial
coefficients; it is integral when the leading coefficient is 1.  Such
sequences have at most quadratic degree growth, and integral ones have
at most exponential l1-norm growth.  Both constants are constructive:
they come straight off the recurrence and the initial terms, and the
verifier replays the induction that proves them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .qlaurent import QLaurent, exact_div

__all__ = [
    "QDiffEq",
    "generate",
    "bound_constants",
    "verify_bounds",
    "sharpness_example",
    "parse_recurrence",
    "format_recurrence",
]

Triple = tuple[int, int, int]


def _normalize(poly: Iterable[Sequence[int]]) -> tuple[Triple, ...]:
    acc: dict[tuple[int, int], int] = {}
    for entry in poly:
        u_exp, v_exp, coeff = (int(x) for x in entry)
        if u_exp < 0 or v_exp < 0:
            raise ValueError("coefficient polynomials live in nonnegative powers")
        if coeff:
            key = (u_exp, v_exp)
            acc[key] = acc.get(key, 0) + coeff
    return tuple(
        (u, v, c) for (u, v), c in sorted(acc.items()) if c
    )


@dataclass(frozen=True)
class QDiffEq:
    """Recurrence sum_j a_j(q^n, q) f_{n+j} = 0, coefficients as
    (u_exponent, v_exponent, coefficient) triples with u = q^n, v = q."""

    coeffs: tuple[tuple[Triple, ...], ...]

    def __init__(self, coeffs: Sequence[Iterable[Sequence[int]]]):
        if len(coeffs) < 2:
            raise ValueError("need at least order one")
        normalized = tuple(_normalize(p) for p in coeffs)
        if not normalized[-1]:
            raise ValueError("leading coefficient must not vanish")
        object.__setattr__(self, "coeffs", normalized)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def integral(self) -> bool:
        return self.coeffs[-1] == ((0, 0, 1),)

    def coefficient_at(self, j: int, n: int) -> QLaurent:
        """a_j with q^n substituted for u, as an exact polynomial in q."""
        terms: dict[int, int] = {}
        for u_exp, v_exp, coeff in self.coeffs[j]:
            e = 4 * (u_exp * n + v_exp)
            s = terms.get(e, 0) + coeff
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        return QLaurent(terms)

    def l1_coefficients(self) -> list[int]:
        """c_j = sum of absolute integer coefficients of a_j."""
        return [sum(abs(c) for _, _, c in poly) for poly in self.coeffs]

    def degree_slope(self) -> int:
        """Bound s with deg of any a_j(q^n, q) at most s n for n >= 1."""
        slope = 0
        for poly in self.coeffs:
            for u_exp, v_exp, _ in poly:
                slope = max(slope, u_exp + v_exp)
        return slope


def generate(eq: QDiffEq, initials: Sequence[QLaurent], N: int) -> list[QLaurent]:
    """f_0..f_N by unrolling the recurrence exactly.

    Needs exactly order-many initial terms.  When the leading coefficient
    is not 1 each step divides by a_d(q^n, q), and the division must come
    out exact or the sequence has left the Laurent ring.
    """
    d = eq.order
    if len(initials) != d:
        raise ValueError(f"need exactly {d} initial terms")
    out = list(initials[: N + 1])
    integral = eq.integral
    for n in range(N - d + 1):
        acc = QLaurent.zero()
        for j in range(d):
            acc = acc - eq.coefficient_at(j, n) * out[n + j]
        if not integral:
            acc = exact_div(acc, eq.coefficient_at(d, n))
        out.append(acc)
    return out


def _abs_degrees(f: QLaurent) -> tuple[Fraction, Fraction]:
    """Magnitudes of both degrees, in powers of q."""
    if f.is_zero:
        return Fraction(0), Fraction(0)
    return abs(Fraction(f.deg_plus(), 4)), abs(Fraction(f.deg_minus(), 4))


def bound_constants(eq: QDiffEq, initials: Sequence[QLaurent]) -> dict:
    """Constructive constants from the growth proof.

    Cprime exceeds every coefficient degree slope and every initial-term
    degree, and the induction then keeps deg within Cprime n^2.  For an
    integral recurrence, C is the smallest power of two with
    C^d >= c_{d-1} C^{d-1} + ... + c_0 that also dominates the initial
    norms, giving l1 of f_n at most C^n.
    """
    d = eq.order
    prefix = generate(eq, initials, d)
    degree_cap = 0
    for f in prefix:
        plus, minus = _abs_degrees(f)
        degree_cap = max(degree_cap, plus, minus)
    cprime = int(max(eq.degree_slope(), degree_cap)) + 1
    if not eq.integral:
        return {"Cprime": cprime, "C": None}
    norms = [f.l1() for f in prefix[:d]]
    if norms[0] > 1:
        raise ValueError("the l1 induction needs the first term to have norm 1")
    c_list = eq.l1_coefficients()[:d]
    C = 1
    while True:
        if C**d >= sum(c * C**j for j, c in enumerate(c_list)) and all(
            norm <= C**n for n, norm in enumerate(norms)
        ):
            return {"Cprime": cprime, "C": C}
        C *= 2


def verify_bounds(eq: QDiffEq, initials: Sequence[QLaurent], N: int) -> dict:
    """Replay the growth bounds against the actual sequence up to f_N.

    Degrees are checked against Cprime max(n,1)^2 and, for an integral
    recurrence, norms against C^n.  A violation raises: it would falsify
    the constants, not merely a tolerance.
    """
    constants = bound_constants(eq, initials)
    cprime = constants["Cprime"]
    C = constants["C"]
    seq = generate(eq, initials, N)
    for n, f in enumerate(seq):
        cap = cprime * max(n, 1) ** 2
        plus, minus = _abs_degrees(f)
        if plus > cap or minus > cap:
            raise AssertionError(f"degree bound fails at n={n}")
        if C is not None and f.l1() > C**n:
            raise AssertionError(f"l1 bound fails at n={n}")
    return {
        "order": eq.order,
        "integral": eq.integral,
        "Cprime": cprime,
        "C": C,
        "N": N,
        "checked": len(seq),
    }


def sharpness_example() -> tuple[QDiffEq, list[QLaurent]]:
    """The family f_n = (1+q)(1+q^2)...(1+q^n) attaining both bounds.

    Satisfies f_{n+1} - (1 + q q^n) f_n = 0, so deg_+ f_n = n(n+1)/2 is
    quadratic and l1 of f_n is exactly 2^n.
    """
    eq = QDiffEq([[(0, 0, -1), (1, 1, -1)], [(0, 0, 1)]])
    return eq, [QLaurent.one()]


def parse_recurrence(text: str) -> QDiffEq:
    """Recurrence from text: first the order d, then one line per a_j
    (j = 0..d) of whitespace-separated u,v,coeff triples, with a bare 0
    for a vanishing coefficient.  # starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty recurrence")
    d = int(lines[0])
    if d < 1:
        raise ValueError("order must be positive")
    if len(lines) != d + 2:
        raise ValueError(f"expected {d + 1} coefficient lines after the order")
    coeffs = []
    for line in lines[1:]:
        if line == "0":
            coeffs.append([])
            continue
        poly = []
        for token in line.split():
            parts = token.split(",")
            if len(parts) != 3:
                raise ValueError(f"bad triple {token!r}")
            poly.append(tuple(int(p) for p in parts))
        coeffs.append(poly)
    return QDiffEq(coeffs)


def format_recurrence(eq: QDiffEq) -> str:
    lines = [str(eq.order)]
    for poly in eq.coeffs:
        if not poly:
            lines.append("0")
        else:
            lines.append(" ".join(f"{u},{v},{c}" for u, v, c in poly))
    return "\n".join(lines) + "\n"
