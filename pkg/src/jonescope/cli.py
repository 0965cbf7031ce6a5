"""Command line front end: one binary, one subcommand per area of the library.

Every JSON document carries {"config", "version", "result"} so a run is
reproducible from its own output; CSV artifacts open with comment lines
embedding the same config, and scan commands that write CSV render a PNG
chart next to the file.  Floats are printed with a fixed number of
significant digits (the --precision flag, or the JONESCOPE_PRECISION
environment variable, default 17); exact integers and rationals are always
emitted as strings.

Polynomial terms everywhere use the library schema: [exponent, coefficient]
pairs where the exponent counts quarter powers of q, so 4 means q^1.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .acceptance import CRITERIA, run_criterion, run_suite
from .asymptotics import (
    check_upper_bound,
    compare_loop_cyclotomic,
    loop_p,
    mmr_check,
    near1_scan,
    near2_scan,
)
from .borromean import EXACT_LIMIT, borromean_eval, volume_scan
from .corpus import jones, knot, names, resolve
from .cyclotomic import habiro_h, reconstruct
from .diagram import morse_stats
from .hypervol import V8, discrete_rmax, lobachevsky, octahedron_volume, r_plus
from .qholo import bound_constants, generate, parse_recurrence, verify_bounds
from .qlaurent import QLaurent
from .statesum import check_bounds, colored_jones

RATE_MAX = V8 / (2 * math.pi)


@dataclass(frozen=True)
class RunConfig:
    command: str
    flags: dict
    precision: int
    threads: int
    out_path: str | None
    out_format: str

    def to_json_obj(self) -> dict:
        return {
            "command": self.command,
            "flags": self.flags,
            "precision": self.precision,
            "threads": self.threads,
            "out_path": self.out_path,
            "out_format": self.out_format,
        }


def _default_precision() -> int:
    raw = os.environ.get("JONESCOPE_PRECISION", "17")
    try:
        digits = int(raw)
    except ValueError:
        digits = 17
    return max(1, min(digits, 17))


def _config(args, out_path: str | None, out_format: str) -> RunConfig:
    skip = {"func", "command", "precision", "threads"}
    flags = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        flags[key] = value if isinstance(value, (str, int, float, bool)) else str(value)
    return RunConfig(
        command=args.command,
        flags=flags,
        precision=args.precision,
        threads=args.threads,
        out_path=out_path,
        out_format=out_format,
    )


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}g}"


def _cell(value, precision: int) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return _fmt(value, precision)
    if isinstance(value, (int, Fraction)):
        return str(value)
    return str(value)


def _emit_json(config: RunConfig, result, path: str | None) -> None:
    doc = {"config": config.to_json_obj(), "version": __version__, "result": result}
    text = json.dumps(doc, indent=2)
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _write_csv(path: str, config: RunConfig, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"# jonescope {__version__}\n")
        fh.write(f"# config {json.dumps(config.to_json_obj(), sort_keys=True)}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(cell, config.precision) for cell in row])


def _render_chart(png_path: str, title: str, xlabel: str, ylabel: str, curves) -> None:
    """curves: iterable of (label, xs, ys, style)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for label, xs, ys, style in curves:
        ax.plot(xs, ys, style, label=label)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def _chart_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".png"


def _poly_text(poly: QLaurent) -> str:
    pieces = []
    for e, c in poly.terms():
        exponent = Fraction(e, 4)
        if exponent == 0:
            body = str(abs(c))
        else:
            power = f"q^{exponent}" if exponent.denominator == 1 else f"q^({exponent})"
            body = power if abs(c) == 1 else f"{abs(c)}*{power}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    head_sign, head = pieces[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _parse_alpha(text: str) -> complex:
    cleaned = text.strip().lower().replace(" ", "").replace("*", "")
    if cleaned in ("2pii", "2pij"):
        return 2j * math.pi
    try:
        return complex(cleaned.replace("i", "j"))
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a complex number") from None


# subcommand handlers ------------------------------------------------------


def _cmd_jones(args) -> int:
    config = _config(args, args.path, args.out)
    name, morse = resolve(args.knot)
    stats: dict = {}
    poly = colored_jones(list(morse), args.n, stats=stats)
    diagram = morse_stats(morse)
    result = {
        "knot": name,
        "color": args.n,
        **poly.to_json_obj(),
        "crossings": diagram.crossing_count,
        "writhe": diagram.writhe,
        "states_visited": stats["states_visited"],
        "distinct_weights": stats["distinct_weights"],
    }
    if args.out == "text":
        lines = [
            f"{name} color {args.n}: {_poly_text(poly)}",
            f"crossings {diagram.crossing_count}, writhe {diagram.writhe},"
            f" states visited {stats['states_visited']}",
        ]
        text = "\n".join(lines)
        if args.path:
            with open(args.path, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        _emit_json(config, result, args.path)
    return 0


def _cmd_cyclotomic(args) -> int:
    config = _config(args, args.path, "json")
    expansion = habiro_h(args.knot, args.max_k)
    result = {
        "knot": expansion.knot,
        "max_k": args.max_k,
        "H": [h.to_json_obj() for h in expansion.H],
    }
    status = 0
    if args.verify:
        integral = all(h.is_integral() for h in expansion.H)
        rebuilt = [reconstruct(expansion, n).ok for n in range(1, args.max_k + 2)]
        result["verify"] = {
            "integral": integral,
            "reconstructed_colors": args.max_k + 1,
            "reconstructed": all(rebuilt),
        }
        if not (integral and all(rebuilt)):
            status = 1
    _emit_json(config, result, args.path)
    return status


def _cmd_mmr(args) -> int:
    config = _config(args, args.path, "json")
    report = mmr_check(args.knot, args.order)
    result = {
        "knot": report.knot,
        "order": report.D,
        "ok": report.ok,
        "mismatches": [str(m) for m in report.mismatches],
    }
    _emit_json(config, result, args.path)
    return 0 if report.ok else 1


def _cmd_loop(args) -> int:
    config = _config(args, args.path, "json")
    series = loop_p(args.knot, args.p, args.order)
    result = {
        "knot": resolve(args.knot)[0],
        "p": args.p,
        "order": series.order,
        "coeffs": [str(c) for c in series.coeffs],
    }
    status = 0
    if args.verify:
        report = compare_loop_cyclotomic(args.knot, args.p, args.order)
        result["verify"] = {
            "ok": report.ok,
            "mismatches": [str(m) for m in report.mismatches],
        }
        if not report.ok:
            status = 1
    _emit_json(config, result, args.path)
    return status


def _cmd_scan_near1(args) -> int:
    config = _config(args, args.csv, "csv" if args.csv else "json")
    scan = near1_scan(args.knot, args.m, args.N)
    rows = [(n, value, 0.0, scan.envelope / n) for n, value in scan.rows]
    result = {
        "knot": scan.knot,
        "m": args.m,
        "N": args.N,
        "envelope": scan.envelope,
        "ok": scan.ok,
        "rows": [[n, v] for n, v in scan.rows],
    }
    if args.csv:
        _write_csv(args.csv, config, ("n", "value_re", "value_im", "envelope"), rows)
        ns = [n for n, _ in scan.rows]
        _render_chart(
            _chart_path(args.csv),
            f"{scan.knot}: color n+{args.m} at the n-th root of unity",
            "n",
            "(1/n) log |J|",
            [
                ("scan", ns, [v for _, v in scan.rows], "o-"),
                ("envelope", ns, [scan.envelope / n for n in ns], "--"),
            ],
        )
        result["artifacts"] = [args.csv, _chart_path(args.csv)]
    _emit_json(config, result, None if args.csv else args.path)
    return 0 if scan.ok else 1


def _cmd_scan_near2(args) -> int:
    config = _config(args, args.csv, "csv" if args.csv else "json")
    scan = near2_scan(args.knot, args.p, args.m, args.N)
    bound = 3 * max(1.0, abs(scan.limit))
    rows = [(n, value.real, value.imag, bound) for n, value in scan.rows]
    result = {
        "knot": scan.knot,
        "p": args.p,
        "m": args.m,
        "N": args.N,
        "limit": [scan.limit.real, scan.limit.imag],
        "peak": scan.envelope,
        "ok": scan.ok,
        "rows": [[n, v.real, v.imag] for n, v in scan.rows],
    }
    if args.csv:
        _write_csv(args.csv, config, ("n", "value_re", "value_im", "envelope"), rows)
        ns = [n for n, _ in scan.rows]
        _render_chart(
            _chart_path(args.csv),
            f"{scan.knot}: values near 2 pi i at p/m = {args.p}/{args.m}",
            "n",
            "|value|",
            [
                ("scan", ns, [abs(v) for _, v in scan.rows], "o-"),
                ("bound", ns, [bound] * len(ns), "--"),
                ("|limit|", ns, [abs(scan.limit)] * len(ns), ":"),
            ],
        )
        result["artifacts"] = [args.csv, _chart_path(args.csv)]
    _emit_json(config, result, None if args.csv else args.path)
    return 0 if scan.ok else 1


def _cmd_bound_check(args) -> int:
    config = _config(args, args.csv or args.path, "csv" if args.csv else "json")
    if args.alpha is not None:
        alpha = _parse_alpha(args.alpha)
        n_max = args.N if args.N is not None else 30
        report = check_upper_bound(args.knot, alpha, n_max)
        result = {
            "knot": report.knot,
            "alpha": [alpha.real, alpha.imag],
            "N": report.N,
            "reduced_crossings": report.reduced_crossings,
            "writhe": report.writhe,
            "margin": report.margin,
            "ok": report.ok,
            "rows": [[n, lhs, rhs] for n, lhs, rhs in report.rows],
        }
        rows = [(n, lhs, rhs) for n, lhs, rhs in report.rows]
        header = ("n", "lhs", "bound")
        chart = [
            ("(1/n) log |J|", [r[0] for r in rows], [r[1] for r in rows], "o-"),
            ("bound", [r[0] for r in rows], [r[2] for r in rows], "--"),
        ]
        title = f"{report.knot}: evaluation growth at alpha = {args.alpha}"
        ok = report.ok
    else:
        n_max = args.N if args.N is not None else 12
        report = check_bounds(resolve(args.knot)[1], n_max)
        result = {
            "knot": resolve(args.knot)[0],
            "n_max": report.n_max,
            "reduced_crossings": report.c,
            "writhe": report.writhe,
            "l1_ok": report.l1_ok,
            "deg_ok": report.deg_ok,
            "ok": report.l1_ok and report.deg_ok,
            "rows": [
                [n, str(l1), str(cap), str(dp), str(dpc), str(dm), str(dmc)]
                for n, l1, cap, dp, dpc, dm, dmc in report.rows
            ],
        }
        rows = [
            (n, str(l1), str(cap), dp, dpc, dm, dmc)
            for n, l1, cap, dp, dpc, dm, dmc in report.rows
        ]
        header = ("n", "l1", "l1_cap", "deg_plus", "deg_plus_cap", "deg_minus", "deg_minus_cap")
        ns = [r[0] for r in rows]
        chart = [
            ("log l1", ns, [math.log(int(r[1])) for r in rows], "o-"),
            ("log cap", ns, [math.log(int(r[2])) for r in rows], "--"),
        ]
        title = f"{result['knot']}: norm growth against the crossing-number cap"
        ok = result["ok"]
    if args.csv:
        _write_csv(args.csv, config, header, rows)
        _render_chart(_chart_path(args.csv), title, "n", "", chart)
        result["artifacts"] = [args.csv, _chart_path(args.csv)]
    _emit_json(config, result, None if args.csv else args.path)
    return 0 if ok else 1


def _cmd_lob(args) -> int:
    config = _config(args, args.path, "json")
    result = {
        "theta": args.theta,
        "value": lobachevsky(args.theta),
        "octahedron_volume": V8,
        "max_rate": RATE_MAX,
    }
    _emit_json(config, result, args.path)
    return 0


def _cmd_rmax(args) -> int:
    if (args.n is None) == (args.scan is None):
        raise ValueError("give exactly one of --n or --scan")
    config = _config(args, args.csv or args.path, "csv" if args.csv else "json")
    if args.n is not None:
        found = discrete_rmax(args.n, args.kind, brute=True if args.brute else None)
        rate = found.logmax / found.n
        result = {
            "n": found.n,
            "kind": found.kind,
            "argmax": list(found.argmax),
            "predicted": list(found.predicted),
            "matches": found.matches,
            "logmax": found.logmax,
            "rate": rate,
            "residual": rate - RATE_MAX,
            "searched": found.searched,
        }
        _emit_json(config, result, args.path)
        return 0 if found.matches else 1
    colors = [int(part) for part in args.scan.split(",") if part]
    rows = []
    for n in colors:
        found = discrete_rmax(n, args.kind)
        rate = found.logmax / n
        rows.append((n, rate, abs(rate - RATE_MAX)))
    decreasing = all(a[2] > b[2] for a, b in zip(rows, rows[1:]))
    result = {
        "kind": args.kind,
        "colors": colors,
        "rows": [[n, rate, resid] for n, rate, resid in rows],
        "limit": RATE_MAX,
        "decreasing": decreasing,
    }
    if args.csv:
        _write_csv(args.csv, config, ("n", "rate", "residual"), rows)
        ns = [r[0] for r in rows]
        _render_chart(
            _chart_path(args.csv),
            f"discrete {args.kind} maximum: rate against the volume limit",
            "n",
            "logmax / n",
            [
                ("rate", ns, [r[1] for r in rows], "o-"),
                ("v8 / 2 pi", ns, [RATE_MAX] * len(ns), "--"),
            ],
        )
        result["artifacts"] = [args.csv, _chart_path(args.csv)]
    _emit_json(config, result, None if args.csv else args.path)
    return 0 if decreasing else 1


def _cmd_octa(args) -> int:
    config = _config(args, args.path, "json")
    volume = octahedron_volume(args.alpha, args.beta, args.kappa)
    scaled = 2 * math.pi * r_plus(args.alpha, args.beta, args.kappa)
    result = {
        "alpha": args.alpha,
        "beta": args.beta,
        "kappa": args.kappa,
        "volume": volume,
        "scaled_rate": scaled,
        "difference": volume - scaled,
    }
    _emit_json(config, result, args.path)
    return 0


def _cmd_borromean(args) -> int:
    if (args.exact is None) == (args.scan is None):
        raise ValueError("give exactly one of --exact or --scan")
    config = _config(args, args.csv or args.path, "csv" if args.csv else "json")
    if args.exact is not None:
        bundle = borromean_eval(args.exact)
        if bundle.exact is None:
            raise ValueError(f"exact evaluation is limited to colors <= {EXACT_LIMIT}")
        result = {
            "n": bundle.n,
            **bundle.exact.to_json_obj(),
            "reduced": bundle.reduced,
            "normalized": bundle.normalized,
        }
        _emit_json(config, result, args.path)
        return 0
    colors = [int(part) for part in args.scan.split(",") if part]
    rows = volume_scan(colors)
    decreasing = all(abs(a[2]) > abs(b[2]) for a, b in zip(rows, rows[1:]))
    result = {
        "colors": colors,
        "rows": [[n, normalized, residual] for n, normalized, residual in rows],
        "limit": 2 * V8,
        "decreasing": decreasing,
    }
    if args.csv:
        _write_csv(args.csv, config, ("n", "normalized", "residual"), rows)
        ns = [r[0] for r in rows]
        _render_chart(
            _chart_path(args.csv),
            "Borromean rings: normalized growth against twice the octahedron volume",
            "n",
            "(2 pi / n) log J",
            [
                ("scan", ns, [r[1] for r in rows], "o-"),
                ("2 v8", ns, [2 * V8] * len(ns), "--"),
            ],
        )
        result["artifacts"] = [args.csv, _chart_path(args.csv)]
    _emit_json(config, result, None if args.csv else args.path)
    return 0 if decreasing else 1


def _load_initials(path: str) -> list[QLaurent]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("the initials file must hold a JSON array of polynomials")
    return [QLaurent.from_json_obj(obj) for obj in data]


def _cmd_qholo(args) -> int:
    config = _config(args, args.path, "json")
    with open(args.eq) as fh:
        eq = parse_recurrence(fh.read())
    initials = _load_initials(args.init)
    result = {
        "order": eq.order,
        "integral": eq.integral,
        "N": args.N,
    }
    status = 0
    sequence = generate(eq, initials, args.N)
    result["profile"] = [
        [n, str(Fraction(f.deg_plus(), 4)) if not f.is_zero else "0", str(f.l1())]
        for n, f in enumerate(sequence)
    ]
    if args.verify:
        constants = bound_constants(eq, initials)
        result["constants"] = {
            "Cprime": constants["Cprime"],
            "C": constants["C"],
        }
        try:
            report = verify_bounds(eq, initials, args.N)
            result["verify"] = {"ok": True, "checked": report["checked"]}
        except AssertionError as exc:
            result["verify"] = {"ok": False, "reason": str(exc)}
            status = 1
    if args.knot is not None:
        matches = []
        for n, f in enumerate(sequence):
            matches.append([n + 1, f == jones(args.knot, n + 1)])
        agreed = sum(1 for _, m in matches if m)
        result["knot_experiment"] = {
            "knot": resolve(args.knot)[0],
            "colors": [1, args.N + 1],
            "matches": matches,
            "agreed": agreed,
        }
    _emit_json(config, result, args.path)
    return status


def _cmd_verify(args) -> int:
    config = _config(args, args.json, "json" if args.json else "text")
    if args.knot is not None or args.order is not None:
        if args.suite != "mmr":
            raise ValueError("--knot/--order focus is only supported for --suite mmr")
        report = mmr_check(args.knot or "3_1", args.order or 8)
        flag = "PASS" if report.ok else "FAIL"
        print(f"{flag} mmr {report.knot} order {report.D}")
        if args.json:
            _emit_json(
                config,
                {"criteria": [{"name": "mmr", "ok": report.ok}], "ok": report.ok},
                args.json,
            )
        return 0 if report.ok else 1
    selected = None if args.suite == "all" else [args.suite]
    results = run_suite(selected)
    for item in results:
        flag = "PASS" if item.ok else "FAIL"
        print(f"{flag} {item.name} ({item.elapsed:.2f} s) {item.detail}")
    overall = all(item.ok for item in results)
    if args.json:
        payload = {
            "criteria": [
                {
                    "name": item.name,
                    "ok": item.ok,
                    "detail": item.detail,
                    "elapsed": item.elapsed,
                }
                for item in results
            ],
            "ok": overall,
        }
        _emit_json(config, payload, args.json)
    return 0 if overall else 1


def _cmd_corpus(args) -> int:
    config = _config(args, args.path, args.out)
    table = [("0_1", 0, 0)]
    for name in names():
        record = knot(name)
        table.append((name, record.crossing_count, record.writhe))
    if args.out == "json":
        result = {
            "knots": [
                {"name": name, "crossings": crossings, "writhe": writhe}
                for name, crossings, writhe in table
            ]
        }
        _emit_json(config, result, args.path)
        return 0
    lines = [f"{'name':<6} {'crossings':>9} {'writhe':>6}"]
    for name, crossings, writhe in table:
        lines.append(f"{name:<6} {crossings:>9} {writhe:>6}")
    text = "\n".join(lines)
    if args.path:
        with open(args.path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


# parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jonescope",
        description="Colored Jones polynomials, their expansions, and the"
        " hyperbolic growth checks, behind one command.",
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        help="significant digits for printed floats (default JONESCOPE_PRECISION or 17)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker count recorded in the run config (scans here are sequential)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jones", help="colored Jones polynomial of a corpus knot")
    p.add_argument("--knot", required=True)
    p.add_argument("--n", type=int, required=True, help="color (dimension)")
    p.add_argument("--out", choices=("json", "text"), default="json")
    p.add_argument("--path", help="write output here instead of stdout")
    p.set_defaults(func=_cmd_jones)

    p = sub.add_parser("cyclotomic", help="cyclotomic expansion coefficients")
    p.add_argument("--knot", required=True)
    p.add_argument("--max-k", type=int, required=True, dest="max_k")
    p.add_argument("--verify", action="store_true", help="check integrality and rebuild colors")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_cyclotomic)

    p = sub.add_parser("mmr", help="0-loop part against the inverse Alexander polynomial")
    p.add_argument("--knot", required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--path")
    p.set_defaults(func=_cmd_mmr)

    p = sub.add_parser("loop", help="loop expansion coefficients")
    p.add_argument("--knot", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--verify", action="store_true", help="compare against the resummed route")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_loop)

    p = sub.add_parser("scan-near1", help="first-order scan at roots of unity")
    p.add_argument("--knot", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--csv", help="write rows here (a PNG chart lands next to it)")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_scan_near1)

    p = sub.add_parser("scan-near2", help="second-order scan near 2 pi i")
    p.add_argument("--knot", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--csv", help="write rows here (a PNG chart lands next to it)")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_scan_near2)

    p = sub.add_parser("bound-check", help="norm and degree envelopes, or evaluation growth")
    p.add_argument("--knot", required=True)
    p.add_argument(
        "--alpha",
        help="complex point, e.g. '1', '1+1j', or '2pii'; omit for the envelope report",
    )
    p.add_argument("--N", type=int, help="color range (default 30 with --alpha, else 12)")
    p.add_argument("--csv", help="write rows here (a PNG chart lands next to it)")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_bound_check)

    p = sub.add_parser("lob", help="Lobachevsky function value")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--path")
    p.set_defaults(func=_cmd_lob)

    p = sub.add_parser("rmax", help="discrete maximum of the evaluated weights")
    p.add_argument("--n", type=int, help="single color to maximize over")
    p.add_argument("--kind", choices=("plus", "minus"), default="plus")
    p.add_argument("--brute", action="store_true", help="force the exhaustive search")
    p.add_argument("--scan", help="comma list of colors for a convergence table")
    p.add_argument("--csv", help="write scan rows here (a PNG chart lands next to it)")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_rmax)

    p = sub.add_parser("octa", help="hyperbolic octahedron volume for a parameter triple")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--path")
    p.set_defaults(func=_cmd_octa)

    p = sub.add_parser("borromean", help="Borromean rings: exact value or volume scan")
    p.add_argument("--exact", type=int, help=f"exact evaluation at one color (<= {EXACT_LIMIT})")
    p.add_argument("--json", action="store_true", help="kept for symmetry; output is JSON")
    p.add_argument("--scan", help="comma list of colors for the volume scan")
    p.add_argument("--csv", help="write scan rows here (a PNG chart lands next to it)")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_borromean)

    p = sub.add_parser("qholo", help="drive a q-difference recurrence from files")
    p.add_argument("--eq", required=True, help="recurrence text file")
    p.add_argument("--init", required=True, help="JSON array of initial polynomials")
    p.add_argument("--N", type=int, default=40)
    p.add_argument("--verify", action="store_true", help="check the growth bounds")
    p.add_argument(
        "--knot",
        help="compare the generated sequence against state-sum values (reports, never asserts)",
    )
    p.add_argument("--path")
    p.set_defaults(func=_cmd_qholo)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--suite", choices=("all", *CRITERIA), default="all")
    p.add_argument("--knot", help="focus flag (mmr suite only)")
    p.add_argument("--order", type=int, help="focus flag (mmr suite only)")
    p.add_argument("--json", help="also write a JSON report here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("corpus", help="list the bundled knots")
    p.add_argument("--out", choices=("text", "json"), default="text")
    p.add_argument("--path")
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.precision is None:
        args.precision = _default_precision()
    else:
        args.precision = max(1, min(args.precision, 17))
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    try:
        return args.func(args)
    except (ValueError, KeyError, ArithmeticError, OSError, json.JSONDecodeError) as exc:
        diagnostic = {
            "version": __version__,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        print(json.dumps(diagnostic, indent=2), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
