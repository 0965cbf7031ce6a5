"""Exact Laurent polynomials in q**(1/4) and truncated exponential series.

Exponents are stored as integers counting quarter powers of q, so the
monomial q**(e/4) is stored under the key ``e``.  Coefficients are
arbitrary-precision Python integers and the zero polynomial is the empty
term map.  Everything here is exact; numerical evaluation happens only in
:func:`eval_complex` / :func:`ev_root_of_unity`, which report conservative
error bounds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import mpmath

__all__ = [
    "QLaurent",
    "QSeries",
    "EvalPoint",
    "InexactDivisionError",
    "ZeroDegreeError",
    "Measures",
    "qint",
    "qfact",
    "qfalling",
    "qbinom",
    "exact_div",
    "to_series",
    "eval_complex",
    "eval_with_error",
    "ev_root_of_unity",
]


class InexactDivisionError(ArithmeticError):
    """Raised when a quotient of Laurent polynomials is not a Laurent polynomial."""


class ZeroDegreeError(ValueError):
    """Raised when a degree of the zero polynomial is requested."""


# Dict products below this size use the plain schoolbook loop; larger ones
# go through Kronecker packing, where the work happens inside big-integer
# multiplication.
_KRONECKER_CUTOFF = 6000


def _gcd_step(exponents: Iterable[int], base: int) -> int:
    g = 0
    for e in exponents:
        g = math.gcd(g, e - base)
        if g == 1:
            return 1
    return g if g else 1


def _mul_dicts(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    if len(a) > len(b):
        a, b = b, a
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def _pack(coeffs: list[int], slot_bytes: int) -> tuple[int, int]:
    """Pack nonnegative parts of ``coeffs`` into two little-endian integers."""
    n = len(coeffs)
    pos = bytearray(n * slot_bytes)
    neg = bytearray(n * slot_bytes)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * slot_bytes : i * slot_bytes + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
        elif c < 0:
            c = -c
            neg[i * slot_bytes : i * slot_bytes + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
    return int.from_bytes(bytes(pos), "little"), int.from_bytes(bytes(neg), "little")


def _mul_kronecker(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    amin = min(a)
    bmin = min(b)
    step = _gcd_step(a, amin)
    step = math.gcd(step, _gcd_step(b, bmin))
    if step == 0:
        step = 1
    na = (max(a) - amin) // step + 1
    nb = (max(b) - bmin) // step + 1
    max_a = max(abs(c) for c in a.values())
    max_b = max(abs(c) for c in b.values())
    bits = max_a.bit_length() + max_b.bit_length() + min(len(a), len(b)).bit_length() + 2
    slot_bytes = (bits + 7) // 8
    ca = [0] * na
    for e, c in a.items():
        ca[(e - amin) // step] = c
    cb = [0] * nb
    for e, c in b.items():
        cb[(e - bmin) // step] = c
    pa, nega = _pack(ca, slot_bytes)
    pb, negb = _pack(cb, slot_bytes)
    x = pa * pb + nega * negb
    y = pa * negb + nega * pb
    n_out = na + nb - 1
    base = amin + bmin
    out: dict[int, int] = {}
    size = n_out * slot_bytes
    xb = x.to_bytes(size + slot_bytes, "little")
    yb = y.to_bytes(size + slot_bytes, "little")
    for i in range(n_out):
        lo = i * slot_bytes
        hi = lo + slot_bytes
        c = int.from_bytes(xb[lo:hi], "little") - int.from_bytes(yb[lo:hi], "little")
        if c:
            out[base + i * step] = c
    return out


class QLaurent:
    """Sparse Laurent polynomial in q**(1/4) with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms is None:
            self._terms: dict[int, int] = {}
        else:
            self._terms = {int(e): int(c) for e, c in terms.items() if c}

    @staticmethod
    def zero() -> "QLaurent":
        return QLaurent()

    @staticmethod
    def one() -> "QLaurent":
        return QLaurent({0: 1})

    @staticmethod
    def monomial(coeff: int, exp_quarter: int) -> "QLaurent":
        return QLaurent({exp_quarter: coeff} if coeff else {})

    @staticmethod
    def q_power(j: int) -> "QLaurent":
        """The monomial q**j."""
        return QLaurent({4 * j: 1})

    def terms(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def term_map(self) -> dict[int, int]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QLaurent):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "QLaurent(0)"
        bits = []
        for e, c in self.terms():
            bits.append(f"{c}*q^({e}/4)")
        return "QLaurent(" + " + ".join(bits) + ")"

    def __add__(self, other: "QLaurent") -> "QLaurent":
        if not isinstance(other, QLaurent):
            return NotImplemented
        small, big = self._terms, other._terms
        if len(small) > len(big):
            small, big = big, small
        out = dict(big)
        for e, c in small.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        r = QLaurent.__new__(QLaurent)
        r._terms = out
        return r

    def __neg__(self) -> "QLaurent":
        r = QLaurent.__new__(QLaurent)
        r._terms = {e: -c for e, c in self._terms.items()}
        return r

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "QLaurent") -> "QLaurent":
        if not isinstance(other, QLaurent):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return QLaurent()
        if len(a) * len(b) > _KRONECKER_CUTOFF:
            out = _mul_kronecker(a, b)
        else:
            out = _mul_dicts(a, b)
        r = QLaurent.__new__(QLaurent)
        r._terms = out
        return r

    def scale(self, coeff: int, exp_quarter: int = 0) -> "QLaurent":
        """Multiply by the monomial coeff * q**(exp_quarter/4)."""
        if coeff == 0:
            return QLaurent()
        r = QLaurent.__new__(QLaurent)
        r._terms = {e + exp_quarter: c * coeff for e, c in self._terms.items()}
        return r

    def shift(self, exp_quarter: int) -> "QLaurent":
        return self.scale(1, exp_quarter)

    def substitute_q_inverse(self) -> "QLaurent":
        """The image under q -> 1/q (mirror involution)."""
        r = QLaurent.__new__(QLaurent)
        r._terms = {-e: c for e, c in self._terms.items()}
        return r

    def coeff(self, exp_quarter: int) -> int:
        return self._terms.get(exp_quarter, 0)

    def l1(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def deg_plus(self) -> int:
        """Maximal exponent in quarter units."""
        if not self._terms:
            raise ZeroDegreeError("degree of the zero polynomial is undefined")
        return max(self._terms)

    def deg_minus(self) -> int:
        if not self._terms:
            raise ZeroDegreeError("degree of the zero polynomial is undefined")
        return min(self._terms)

    def value_at_one(self) -> int:
        return sum(self._terms.values())

    def is_integral(self) -> bool:
        """True when the polynomial lies in Z[q, 1/q] (whole q powers only)."""
        return all(e % 4 == 0 for e in self._terms)

    def is_half_integral(self) -> bool:
        return all(e % 2 == 0 for e in self._terms)

    # serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"terms": [[e, str(c)] for e, c in self.terms()]}

    @staticmethod
    def from_json_obj(obj: Mapping) -> "QLaurent":
        terms = obj["terms"]
        out: dict[int, int] = {}
        for pair in terms:
            if len(pair) != 2:
                raise ValueError("each term must be [exponent, coefficient]")
            e, c = int(pair[0]), int(str(pair[1]))
            if e in out:
                raise ValueError(f"duplicate exponent {e}")
            if c:
                out[e] = c
        return QLaurent(out)


@dataclass(frozen=True)
class Measures:
    """Size measures of a Laurent polynomial.

    Degrees are reported in quarter units; ``deg_plus_q``/``deg_minus_q``
    convert to powers of q as exact fractions.
    """

    l1: int
    deg_plus: int
    deg_minus: int

    @property
    def deg_plus_q(self) -> Fraction:
        return Fraction(self.deg_plus, 4)

    @property
    def deg_minus_q(self) -> Fraction:
        return Fraction(self.deg_minus, 4)


def measures(f: QLaurent) -> Measures:
    return Measures(l1=f.l1(), deg_plus=f.deg_plus(), deg_minus=f.deg_minus())


# quantum combinatorics ---------------------------------------------------


def qint(n: int) -> QLaurent:
    """The balanced quantum integer {n} = q**(n/2) - q**(-n/2)."""
    if n == 0:
        return QLaurent()
    return QLaurent({2 * n: 1, -2 * n: -1})


def qfact(n: int) -> QLaurent:
    """{n}! = {1}{2}...{n}; {0}! = 1."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    out = QLaurent.one()
    for i in range(1, n + 1):
        out = out * qint(i)
    return out


def qfalling(a: int, b: int) -> QLaurent:
    """{a}_b = {a}{a-1}...{a-b+1}, a product of b descending quantum integers."""
    if b < 0:
        raise ValueError("falling factorial length must be nonnegative")
    out = QLaurent.one()
    for j in range(a - b + 1, a + 1):
        out = out * qint(j)
    return out


def qbinom(a: int, b: int) -> QLaurent:
    """Balanced Gaussian binomial {a}! / ({b}! {a-b}!); zero for b outside [0, a]."""
    if b < 0 or b > a:
        return QLaurent()
    b = min(b, a - b)
    return exact_div(qfalling(a, b), qfact(b))


# exact division ----------------------------------------------------------


def exact_div(f: QLaurent, g: QLaurent) -> QLaurent:
    """Quotient f/g when it exists in Z[q**(1/4), q**(-1/4)].

    Raises InexactDivisionError otherwise (including nonzero remainders and
    coefficient ratios outside Z).
    """
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return QLaurent()
    rem = f.term_map()
    gmap = g.term_map()
    glead = max(gmap)
    gcoef = gmap[glead]
    # Any exact quotient q satisfies deg_minus(q) = deg_minus(f) - deg_minus(g),
    # which bounds how far the long division may descend.
    qmin = f.deg_minus() - g.deg_minus()
    out: dict[int, int] = {}
    while rem:
        rlead = max(rem)
        e = rlead - glead
        if e < qmin:
            raise InexactDivisionError("remainder does not vanish")
        c, r = divmod(rem[rlead], gcoef)
        if r:
            raise InexactDivisionError("leading coefficient is not divisible")
        out[e] = c
        for ge, gc in gmap.items():
            k = ge + e
            s = rem.get(k, 0) - gc * c
            if s:
                rem[k] = s
            elif k in rem:
                del rem[k]
    return QLaurent(out)


# truncated exponential series -------------------------------------------


class QSeries:
    """Truncated series sum_{k<=order} c_k h**k with exact rational c_k."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Fraction]):
        self.order = int(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != self.order + 1:
            raise ValueError("coefficient list must have length order+1")
        self.coeffs = cs

    @staticmethod
    def constant(value, order: int) -> "QSeries":
        cs = [Fraction(0)] * (order + 1)
        cs[0] = Fraction(value)
        return QSeries(order, cs)

    def _check(self, other: "QSeries") -> None:
        if self.order != other.order:
            raise ValueError(
                f"truncation orders differ: {self.order} != {other.order}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"QSeries(order={self.order}, coeffs={self.coeffs})"

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "QSeries":
        return QSeries(self.order, [-a for a in self.coeffs])

    def __mul__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(n, out)

    def scalar(self, value) -> "QSeries":
        v = Fraction(value)
        return QSeries(self.order, [v * c for c in self.coeffs])

    def inverse(self) -> "QSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has no multiplicative inverse")
        n = self.order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / self.coeffs[0]
        for k in range(1, n + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                s += self.coeffs[j] * inv[k - j]
            inv[k] = -s / self.coeffs[0]
        return QSeries(n, inv)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(order, self.coeffs[: order + 1])


def to_series(f: QLaurent, order: int) -> QSeries:
    """Taylor expansion of f(e**h) = sum c_e e**(e h / 4) through h**order."""
    coeffs = [Fraction(0)] * (order + 1)
    for e, c in f.term_map().items():
        x = Fraction(e, 4)
        p = Fraction(1)
        fact = 1
        for k in range(order + 1):
            coeffs[k] += c * p / fact
            p *= x
            fact *= k + 1
    return QSeries(order, coeffs)


def exp_series(rate: Fraction, order: int) -> QSeries:
    """The series of e**(rate * h) through h**order."""
    rate = Fraction(rate)
    cs = [Fraction(0)] * (order + 1)
    p = Fraction(1)
    fact = 1
    for k in range(order + 1):
        cs[k] = p / fact
        p *= rate
        fact *= k + 1
    return QSeries(order, cs)


# numerical evaluation ----------------------------------------------------


@dataclass(frozen=True)
class EvalPoint:
    """Where and how precisely to evaluate a Laurent polynomial.

    kind "root_of_unity" fixes q**(1/4) = exp(i pi / (2 n)), so q is the
    primitive n-th root e**(2 pi i / n).  kind "general" evaluates at
    q = exp(alpha) for a complex alpha.  precision_bits is the working
    mantissa size; 53 means hardware floats.
    """

    kind: str
    n: int | None = None
    alpha: complex | None = None
    precision_bits: int = 53

    def __post_init__(self):
        if self.kind == "root_of_unity":
            if not self.n or self.n < 1:
                raise ValueError("root_of_unity point needs n >= 1")
        elif self.kind == "general":
            if self.alpha is None:
                raise ValueError("general point needs alpha with q = exp(alpha)")
        else:
            raise ValueError(f"unknown evaluation kind {self.kind!r}")


def _round_complex(z) -> complex:
    return complex(float(z.real), float(z.imag))


def ev_root_of_unity(f: QLaurent, n: int, precision_bits: int = 0) -> complex:
    """Evaluate f at q = exp(2 pi i / n), i.e. q**(1/4) = exp(i pi / (2 n)).

    Terms are first combined exactly per residue of the exponent mod 4n, so
    the only roundoff comes from at most 4n root multiplications.
    """
    if n < 1:
        raise ValueError("n must be positive")
    period = 4 * n
    buckets: dict[int, int] = {}
    for e, c in f.term_map().items():
        r = e % period
        buckets[r] = buckets.get(r, 0) + c
    if not precision_bits:
        l1 = sum(abs(v) for v in buckets.values())
        precision_bits = max(53, l1.bit_length() + 64)
    if precision_bits <= 53:
        total = 0j
        for r, c in buckets.items():
            if c:
                total += c * cmath.exp(1j * math.pi * r / (2 * n))
        return total
    with mpmath.workprec(precision_bits):
        total = mpmath.mpc(0)
        ipi = mpmath.mpc(0, mpmath.pi)
        for r, c in buckets.items():
            if c:
                total += c * mpmath.exp(ipi * r / (2 * n))
        return _round_complex(total)


def eval_with_error(f: QLaurent, point: EvalPoint) -> tuple[complex, float]:
    """Evaluate at ``point`` and return (value, conservative error bound)."""
    if f.is_zero:
        return 0j, 0.0
    prec = point.precision_bits
    if point.kind == "root_of_unity":
        value = ev_root_of_unity(f, point.n, prec)
        mag = float(f.l1())
        err = mag * (len(f) + 8) * 2.0 ** (1 - max(prec, 53))
        return value, err
    alpha = complex(point.alpha)
    if prec <= 53:
        w = alpha / 4.0
        total = 0j
        mag = 0.0
        for e, c in f.term_map().items():
            t = c * cmath.exp(e * w)
            total += t
            mag += abs(t)
        return total, mag * (len(f) + 8) * 2.0 ** (1 - 53)
    with mpmath.workprec(prec):
        w = mpmath.mpc(alpha.real, alpha.imag) / 4
        total = mpmath.mpc(0)
        mag = mpmath.mpf(0)
        for e, c in f.term_map().items():
            t = c * mpmath.exp(e * w)
            total += t
            mag += abs(t)
        err = float(mag) * (len(f) + 8) * 2.0 ** (1 - prec)
        return _round_complex(total), err


def eval_complex(f: QLaurent, point: EvalPoint) -> complex:
    return eval_with_error(f, point)[0]
