"""Runnable acceptance checks for the library's headline guarantees.

Every exact identity, finite-size inequality, and convergence envelope the
package promises is collected here as a zero-argument criterion returning
(ok, detail).  The registry drives both the test suite (one assertion per
criterion) and the command line ``verify`` subcommand, so the two report
identical verdicts.  Criteria with a stated runtime budget fail when the
budget is exceeded even if every numeric check passed.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass
from typing import Callable

from .asymptotics import (
    check_upper_bound,
    compare_loop_cyclotomic,
    mmr_check,
    near1_scan,
    near2_scan,
)
from .borromean import EXACT_LIMIT, borromean_eval, volume_scan
from .corpus import jones, knot, names, unknot_diagrams
from .cyclotomic import habiro_h, reconstruct, symmetry_eval
from .hypervol import (
    V8,
    discrete_rmax,
    lobachevsky,
    maximize_r,
    octahedron_volume,
    qfact_asym,
    r_plus,
    tetra_volume,
)
from .qholo import QDiffEq, bound_constants, generate, sharpness_example, verify_bounds
from .qlaurent import QLaurent, ev_root_of_unity
from .statesum import (
    check_bounds,
    colored_jones,
    jones3_via_cabling,
    jones_via_bracket,
)

RATE_MAX = V8 / (2 * math.pi)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    ok: bool
    detail: str
    elapsed: float


def _check_state_sum() -> tuple[bool, str]:
    problems = []
    diagrams = unknot_diagrams()
    if len(diagrams) < 3:
        problems.append(f"only {len(diagrams)} unknot diagrams")
    for idx, events in enumerate(diagrams):
        for n in range(1, 11):
            if colored_jones(list(events), n) != QLaurent.one():
                problems.append(f"unknot diagram {idx} color {n}")
    for name in ("3_1", "4_1", "5_2"):
        if jones_via_bracket(list(knot(name).pd)) != jones(name, 2):
            problems.append(f"bracket oracle {name}")
    if jones3_via_cabling(list(knot("3_1").pd)) != jones("3_1", 3):
        problems.append("cabling oracle 3_1")
    detail = (
        f"{len(diagrams)} unknot diagrams at colors <= 10; bracket oracle on"
        " 3_1 4_1 5_2; 2-cable oracle on 3_1"
    )
    return not problems, "; ".join(problems) or detail


def _check_cyclotomic() -> tuple[bool, str]:
    problems = []
    for name in ("3_1", "4_1", "5_2"):
        expansion = habiro_h(name, 6)
        for k, h in enumerate(expansion.H):
            if not h.is_integral():
                problems.append(f"H_{k} of {name} not integral")
        for n in range(1, 8):
            if not reconstruct(expansion, n).ok:
                problems.append(f"reconstruction of {name} at color {n}")
        if name == "4_1":
            for k in range(6):
                if expansion.H[k] != QLaurent.one():
                    problems.append(f"H_{k} of 4_1 is not 1")
    detail = "coefficients k <= 6 integral, colors n <= 7 rebuilt, figure-eight flat"
    return not problems, "; ".join(problems) or detail


def _check_mmr() -> tuple[bool, str]:
    problems = []
    for name in ("3_1", "4_1"):
        if not mmr_check(name, 8).ok:
            problems.append(f"inverse-Alexander mismatch for {name}")
        for p in (0, 1):
            if not compare_loop_cyclotomic(name, p, 6).ok:
                problems.append(f"loop {p} vs resummed coefficients for {name}")
    detail = "0-loop exact through x^8, loop comparison exact through x^6, p <= 1"
    return not problems, "; ".join(problems) or detail


def _check_bounds() -> tuple[bool, str]:
    problems = []
    for name in names():
        report = check_bounds(knot(name).morse, 12)
        if not report.l1_ok:
            problems.append(f"l1 cap violated for {name}")
        if not report.deg_ok:
            problems.append(f"degree envelope violated for {name}")
    for name in ("3_1", "4_1"):
        for alpha in (1.0, 1 + 1j, 2j * math.pi):
            if not check_upper_bound(name, alpha, 30).ok:
                problems.append(f"growth bound at alpha = {alpha} for {name}")
    detail = (
        f"norm caps and degree envelopes, colors <= 12, {len(names())} knots;"
        " evaluation growth at three alpha, colors <= 30"
    )
    return not problems, "; ".join(problems) or detail


def _check_lobachevsky() -> tuple[bool, str]:
    anchor = 3.6638623767088760602
    err = abs(8 * lobachevsky(math.pi / 4) - anchor)
    if err >= 1e-12:
        return False, f"octahedron anchor off by {err:.2e}"
    rng = random.Random(308)
    worst = 0.0
    for _ in range(1000):
        t = rng.uniform(-8.0, 8.0)
        worst = max(worst, abs(lobachevsky(-t) + lobachevsky(t)))
        dup = lobachevsky(2 * t) - 2 * (lobachevsky(t) + lobachevsky(t + math.pi / 2))
        worst = max(worst, abs(dup))
    ok = worst < 1e-12
    return ok, f"anchor within {err:.1e}; worst of 1000 identity draws {worst:.1e}"


def _check_rates() -> tuple[bool, str]:
    problems = []
    central = abs(r_plus(0.75, 0.25, 0.5) - RATE_MAX)
    if central >= 1e-12:
        problems.append(f"central rate off by {central:.2e}")
    located = maximize_r()
    drift = max(abs(a - b) for a, b in zip(located.argmax, (0.75, 0.25, 0.5)))
    if drift >= 1e-6:
        problems.append(f"maximizer drifted by {drift:.2e}")
    rng = random.Random(37)
    checked = 0
    worst_oct = 0.0
    while checked < 100:
        kappa = rng.uniform(0.02, 0.96)
        beta = rng.uniform(0.02, 0.98 - kappa)
        alpha = rng.uniform(kappa + 0.02, 0.98)
        try:
            vol = octahedron_volume(alpha, beta, kappa)
        except ValueError:
            continue
        worst_oct = max(worst_oct, abs(vol - 2 * math.pi * r_plus(alpha, beta, kappa)))
        checked += 1
    if worst_oct >= 1e-9:
        problems.append(f"octahedron vs rate disagreed by {worst_oct:.2e}")
    worst_tet = 0.0
    for _ in range(100):
        theta = rng.uniform(0.05, 2 * math.pi - 0.05)
        if abs(theta - math.pi) < 0.05:
            continue
        gap = abs(tetra_volume(cmath.exp(1j * theta)) - 2 * lobachevsky(theta / 2))
        worst_tet = max(worst_tet, gap)
    if worst_tet >= 1e-10:
        problems.append(f"unit-circle tetrahedra disagreed by {worst_tet:.2e}")
    detail = (
        f"central value, maximizer, 100 octahedra (worst {worst_oct:.1e}),"
        f" unit-circle tetrahedra (worst {worst_tet:.1e})"
    )
    return not problems, "; ".join(problems) or detail


def _check_discrete_max() -> tuple[bool, str]:
    problems = []
    for n in range(5, 61):
        for kind in ("plus", "minus"):
            if not discrete_rmax(n, kind).matches:
                problems.append(f"{kind} argmax formula fails at n = {n}")
    residuals = []
    for n in (200, 500, 1000, 2000):
        found = discrete_rmax(n, "plus")
        residuals.append(abs(found.logmax / n - RATE_MAX))
    if residuals[-1] > 2e-2:
        problems.append(f"residual {residuals[-1]:.3e} at n = 2000")
    if not all(a > b for a, b in zip(residuals, residuals[1:])):
        problems.append(f"residuals not decreasing: {residuals}")
    detail = (
        "argmax formulas exhaustive for 5 <= n <= 60, both signs;"
        f" residual {residuals[-1]:.2e} at n = 2000, decreasing from n = 200"
    )
    return not problems, "; ".join(problems) or detail


def _check_qfactorial() -> tuple[bool, str]:
    fitted = 0.0
    for tenths in range(1, 10):
        for n in (10, 30, 100, 300, 1000, 2000, 5000):
            report = qfact_asym(tenths / 10, n)
            fitted = max(fitted, abs(report.residual) / math.log(n))
    ok = fitted <= 2.0
    return ok, f"fitted C = {fitted:.3f} over alpha 0.1..0.9, n <= 5000 (cap 2.0)"


def _check_borromean() -> tuple[bool, str]:
    problems = []
    worst = 0.0
    for n in range(2, EXACT_LIMIT + 1):
        bundle = borromean_eval(n)
        exact = abs(ev_root_of_unity(bundle.exact, n))
        reduced = math.exp(bundle.reduced)
        worst = max(worst, abs(exact - reduced) / reduced)
    if worst > 1e-8:
        problems.append(f"exact vs reduced drifted to {worst:.2e}")
    rows = volume_scan((250, 500, 1000, 2000))
    residuals = [abs(r) for _, _, r in rows]
    if not all(a > b for a, b in zip(residuals, residuals[1:])):
        problems.append(f"volume residuals not decreasing: {residuals}")
    if residuals[-1] > 0.05 * 2 * V8:
        problems.append(f"volume residual {residuals[-1]:.3f} at n = 2000")
    detail = (
        f"exact vs reduced within {worst:.1e} for n <= {EXACT_LIMIT};"
        f" volume residual {residuals[-1]:.3f} at n = 2000, decreasing"
    )
    return not problems, "; ".join(problems) or detail


def _check_symmetry() -> tuple[bool, str]:
    problems = []
    pairs = 0
    for name in ("3_1", "4_1"):
        for n in range(1, 13):
            for m_prime in range(1, 2 * n + 1):
                for m in range(m_prime, 2 * n + 1):
                    if (m - m_prime) % n and (m + m_prime) % n:
                        continue
                    symmetry_eval(name, n, m, m_prime)  # raises on violation
                    pairs += 1
        scan = near1_scan(name, 1, 15)
        flat = max(abs(v) for _, v in scan.rows)
        if flat > 1e-9 or not scan.ok:
            problems.append(f"first-order scan of {name} not flat ({flat:.2e})")
    scan = near2_scan("3_1", 9, 10, 12)
    if not scan.ok:
        problems.append("second-order scan of 3_1 unbounded")
    for n, value in scan.rows:
        direct = ev_root_of_unity(jones("3_1", 9 * n), 10 * n)
        if abs(direct - value) > 1e-9 * max(1.0, abs(value)):
            problems.append(f"second-order reduction differs at n = {n}")
    detail = (
        f"{pairs} color pairs agreed at roots of order <= 12;"
        " first-order scans flat; second-order scan bounded and equal to the"
        " unreduced route"
    )
    return not problems, "; ".join(problems) or detail


def _random_recurrence(rng) -> tuple[QDiffEq, list[QLaurent]]:
    order = rng.randint(1, 3)
    coeffs = []
    for _ in range(order):
        coeffs.append(
            [
                (rng.randint(0, 2), rng.randint(0, 2), rng.randint(-3, 3))
                for _ in range(rng.randint(1, 3))
            ]
        )
    coeffs.append([(0, 0, 1)])
    if not any(any(c for _, _, c in poly) for poly in coeffs[:-1]):
        return _random_recurrence(rng)
    initials = [QLaurent.one()]
    for _ in range(order - 1):
        terms: dict[int, int] = {}
        for _ in range(2):
            e, c = rng.randint(-2, 2), rng.randint(-2, 2)
            terms[4 * e] = terms.get(4 * e, 0) + c
        initials.append(QLaurent(terms))
    return QDiffEq(coeffs), initials


def _check_qholo() -> tuple[bool, str]:
    problems = []
    eq, initials = sharpness_example()
    constants = bound_constants(eq, initials)
    if constants["C"] != 2:
        problems.append(f"sharp norm base {constants['C']} instead of 2")
    report = verify_bounds(eq, initials, 40)
    if report["checked"] != 41:
        problems.append("sharp family not checked through n = 40")
    for n, f in enumerate(generate(eq, initials, 40)):
        if f.l1() != 2**n or f.deg_plus() != 4 * (n * (n + 1) // 2):
            problems.append(f"sharp family closed form fails at n = {n}")
            break
    rng = random.Random(2024)
    for idx in range(20):
        random_eq, random_init = _random_recurrence(rng)
        try:
            verify_bounds(random_eq, random_init, 30)
        except (AssertionError, ValueError) as exc:
            problems.append(f"random recurrence {idx}: {exc}")
    detail = (
        "sharp family attains both bounds through n = 40;"
        " 20 random integral recurrences verified to N = 30"
    )
    return not problems, "; ".join(problems) or detail


# name -> (criterion, runtime budget in seconds or None)
CRITERIA: dict[str, tuple[Callable[[], tuple[bool, str]], float | None]] = {
    "state-sum": (_check_state_sum, 10.0),
    "cyclotomic": (_check_cyclotomic, 60.0),
    "mmr": (_check_mmr, None),
    "bounds": (_check_bounds, None),
    "lobachevsky": (_check_lobachevsky, None),
    "rates": (_check_rates, None),
    "discrete-max": (_check_discrete_max, None),
    "qfactorial": (_check_qfactorial, 60.0),
    "borromean": (_check_borromean, 30.0),
    "symmetry": (_check_symmetry, None),
    "qholo": (_check_qholo, None),
}


def run_criterion(name: str) -> CriterionResult:
    """Run one named criterion, folding exceptions and budget overruns into ok."""
    func, budget = CRITERIA[name]
    start = time.perf_counter()
    try:
        ok, detail = func()
    except Exception as exc:  # a falsified identity raises deep in the library
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if ok and budget is not None and elapsed > budget:
        ok = False
        detail += f"; exceeded the {budget:.0f} s budget ({elapsed:.1f} s)"
    return CriterionResult(name=name, ok=ok, detail=detail, elapsed=elapsed)


def run_suite(selected=None) -> list[CriterionResult]:
    """Run the requested criteria (all by default) in registry order."""
    if selected is None:
        chosen = list(CRITERIA)
    else:
        chosen = list(selected)
        unknown = [name for name in chosen if name not in CRITERIA]
        if unknown:
            raise KeyError(f"unknown criteria: {', '.join(unknown)}")
    return [run_criterion(name) for name in chosen]
