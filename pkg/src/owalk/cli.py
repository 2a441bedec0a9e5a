"""Command line front end.

Subcommands: spectrum, support, cospectral, periodic, pst, mst, autos,
evolve, example.  Reports go to stdout as aligned text, or as JSON with
--json.  Exit codes: 0 success, 1 analysis-negative result under
--strict, 2 usage or input errors, 3 internal inconsistencies.

JSON is emitted by a deterministic serializer (fixed key order, floats
with 17 significant digits), so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .arithmetic import IntPolynomial, char_poly
from .autos import find_switching_automorphisms
from .cospectral import eigenvalue_support, strong_cospectrality
from .errors import (
    DisconnectedGraphError,
    InputError,
    InternalInconsistencyError,
    OwalkError,
    SearchBudgetExceededError,
    UnknownExampleError,
    VertexOutOfRangeError,
    VerificationFailedError,
)
from .graph import BUILTIN_NAMES, OrientedGraph, builtin_example, parse_graph, serialize_graph
from .periodicity import is_periodic, verify_period
from .spectral import DEFAULT_GROUPING_TOL, decompose, propagator_column
from .transfer import DEFAULT_PST_TOL, mst_search, scan_pst, verify_pst

__all__ = ["main"]

RATIONAL_DENOMINATOR_LIMIT = 10**6


# --- deterministic JSON ---------------------------------------------------


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise VerificationFailedError("report contains a non-finite number")
    return "%.17g" % x


def _emit_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, tuple, dict)) for v in obj):
            return "[" + ", ".join(_emit_json(v) for v in obj) + "]"
        body = ",\n".join(
            "  " * (indent + 1) + _emit_json(v, indent + 1) for v in obj
        )
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key, value in obj.items():
            assert isinstance(key, str), f"non-string JSON key {key!r}"
            items.append(
                "  " * (indent + 1) + json.dumps(key) + ": " + _emit_json(value, indent + 1)
            )
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__} into the report")


# --- shared report helpers ------------------------------------------------


def _sigma_multiple(t: float, sigma: float) -> Fraction | None:
    """Rational p/q with t = (p/q)*sigma, or None.

    Accepts only |t/sigma - p/q| <= 1e-8/q^2 with q bounded, which a
    continued-fraction coincidence for an irrational ratio cannot meet.
    """
    ratio = Fraction(t) / Fraction(sigma)
    frac = ratio.limit_denominator(RATIONAL_DENOMINATOR_LIMIT)
    if frac <= 0:
        return None
    if abs(ratio - frac) * frac.denominator**2 * 10**8 <= 1:
        return frac
    return None


def _time_with_sigma(t: float, sigma: float | None) -> tuple[str, str | None]:
    """Human note and JSON tag relating a time to the period sigma."""
    if sigma is None:
        return "(source vertex is not periodic)", None
    frac = _sigma_multiple(t, sigma)
    if frac is None:
        note = (
            f"not a rational multiple of sigma = {sigma!r} "
            f"(denominators up to 10^{round(math.log10(RATIONAL_DENOMINATOR_LIMIT))} fail)"
        )
        return note, None
    tag = f"{frac.numerator}/{frac.denominator}"
    return f"= ({tag})*sigma, sigma = {sigma!r}", tag


def _poly_str(p: IntPolynomial) -> str:
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            power = "x" if k == 1 else f"x^{k}"
            body = power if abs(c) == 1 else f"{abs(c)}*{power}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _load_graph(arg: str) -> tuple[OrientedGraph, str]:
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as handle:
            return parse_graph(handle.read()), arg
    if arg in BUILTIN_NAMES:
        return builtin_example(arg), arg
    raise UnknownExampleError(
        f"{arg!r} is neither a graph file nor a builtin example "
        f"(builtins: {', '.join(BUILTIN_NAMES)})"
    )


def _check_vertex(g: OrientedGraph, v: int, role: str) -> None:
    if not 0 <= v < g.n:
        raise VertexOutOfRangeError(f"{role} {v} out of range for n = {g.n}")


def _sigma_of(sd, vertex: int) -> float | None:
    """Minimum period of the vertex, or None when aperiodic."""
    try:
        cert = is_periodic(sd, eigenvalue_support(sd, vertex))
    except DisconnectedGraphError:
        return None
    return None if cert is None else cert.sigma


# --- subcommand handlers --------------------------------------------------
#
# Each handler fills report[<section>], appends text lines, and returns
# whether the analysis came back positive (negative + --strict exits 1).


def _cmd_spectrum(args, g, report, lines) -> bool:
    sd = decompose(g)
    poly = char_poly(g)
    report["spectrum"] = {
        "char_poly_coeffs_low_to_high": list(poly.coeffs),
        "eigenvalues": [
            {"y": float(y), "multiplicity": int(m)}
            for y, m in zip(sd.eigenvalues, sd.multiplicities)
        ],
    }
    lines.append(f"characteristic polynomial: {_poly_str(poly)}")
    lines.append("distinct eigenvalues theta_r = i*y_r:")
    for r, (y, m) in enumerate(zip(sd.eigenvalues, sd.multiplicities)):
        lines.append(f"  r={r}  y={float(y)!r}  multiplicity={m}")
    return True


def _cmd_support(args, g, report, lines) -> bool:
    _check_vertex(g, args.vertex, "vertex")
    sd = decompose(g)
    sup = eigenvalue_support(sd, args.vertex)
    report["supports"] = [
        {
            "vertex": args.vertex,
            "indices": list(sup.members),
            "eigenvalues": [float(sd.eigenvalues[r]) for r in sup.members],
            "threshold": float(sup.threshold),
        }
    ]
    lines.append(
        f"vertex {args.vertex} support: {len(sup.members)} of "
        f"{len(sd.eigenvalues)} eigenvalue classes"
    )
    for r in sup.members:
        lines.append(f"  r={r}  y={float(sd.eigenvalues[r])!r}")
    return True


def _cmd_cospectral(args, g, report, lines) -> bool:
    _check_vertex(g, args.a, "vertex a")
    _check_vertex(g, args.b, "vertex b")
    sd = decompose(g)
    cert = strong_cospectrality(sd, args.a, args.b, tol=args.eff_tol)
    section = {"a": args.a, "b": args.b, "strongly_cospectral": cert is not None}
    if cert is None:
        lines.append(f"vertices {args.a} and {args.b} are NOT strongly cospectral")
        report["cospectrality"] = section
        return False
    section["residual"] = float(cert.residual)
    section["quarrels"] = [
        {"index": r, "y": float(sd.eigenvalues[r]), "q": float(cert.quarrels[r])}
        for r in cert.support
    ]
    report["cospectrality"] = section
    lines.append(
        f"vertices {args.a} and {args.b} are strongly cospectral "
        f"(residual {cert.residual:.2e})"
    )
    lines.append("quarrels q_r with alpha_r = e^(i*pi*q_r):")
    for r in cert.support:
        lines.append(f"  r={r}  y={float(sd.eigenvalues[r])!r}  q={cert.quarrels[r]!r}")
    return True


def _cmd_periodic(args, g, report, lines) -> bool:
    _check_vertex(g, args.vertex, "vertex")
    sd = decompose(g)
    cert = is_periodic(sd, eigenvalue_support(sd, args.vertex))
    if cert is None:
        report["periodicity"] = [{"vertex": args.vertex, "periodic": False}]
        lines.append(f"vertex {args.vertex} is not periodic")
        return False
    if not verify_period(sd, cert):
        raise VerificationFailedError(
            f"periodicity certificate for vertex {args.vertex} failed the "
            f"numeric period check"
        )
    report["periodicity"] = [
        {
            "vertex": cert.vertex,
            "periodic": True,
            "delta": cert.delta,
            "b_coeffs": [
                {"index": r, "y": float(sd.eigenvalues[r]), "b": b}
                for r, b in sorted(cert.b_coeffs.items())
            ],
            "g": cert.g,
            "phase": cert.phase,
            "sigma": float(cert.sigma),
            "zero_in_support": cert.zero_in_support,
        }
    ]
    sigma_formula = "pi" if cert.phase == -1 else "2*pi"
    lines.append(f"vertex {cert.vertex} is periodic (verified numerically)")
    lines.append(f"  Delta = {cert.delta}")
    for r, b in sorted(cert.b_coeffs.items()):
        lines.append(f"  b[r={r}] = {b}  (y = {float(sd.eigenvalues[r])!r})")
    lines.append(f"  g = {cert.g}")
    lines.append(f"  phase = {cert.phase:+d}")
    lines.append(
        f"  sigma = {float(cert.sigma)!r}  "
        f"( = {sigma_formula}/({cert.g}*sqrt({cert.delta})) )"
    )
    lines.append(f"  zero in support: {'yes' if cert.zero_in_support else 'no'}")
    return True


def _cmd_pst(args, g, report, lines) -> bool:
    _check_vertex(g, args.a, "source")
    _check_vertex(g, args.b, "target")
    sd = decompose(g)
    if args.time is not None:
        cert = verify_pst(sd, args.a, args.b, args.time, tol=args.eff_tol)
        certs = [] if cert is None else [cert]
    else:
        certs = scan_pst(
            sd, args.a, args.b, t_max=args.t_max, grid=args.grid, tol=args.eff_tol
        )
    sigma = _sigma_of(sd, args.a)
    entries = []
    for cert in certs:
        note, tag = _time_with_sigma(cert.time, sigma)
        entries.append(
            {
                "source": cert.source,
                "target": cert.target,
                "time": float(cert.time),
                "phase": cert.phase,
                "residual": float(cert.residual),
                "method": cert.method,
                "sigma": sigma,
                "sigma_multiple": tag,
            }
        )
        lines.append(
            f"PST {cert.source} -> {cert.target} at t = {float(cert.time)!r} "
            f"(phase {cert.phase:+d}, residual {cert.residual:.2e}, {cert.method})"
        )
        lines.append(f"  t {note}")
    report["transfers"] = entries
    if not certs:
        if args.time is not None:
            lines.append(
                f"no perfect state transfer {args.a} -> {args.b} at t = {args.time!r}"
            )
        else:
            lines.append(
                f"no perfect state transfer {args.a} -> {args.b} "
                f"for t in (0, {float(args.t_max)!r}]"
            )
        return False
    return True


def _cmd_mst(args, g, report, lines) -> bool:
    if args.vertex is not None:
        _check_vertex(g, args.vertex, "vertex")
    sd = decompose(g)
    certs = mst_search(sd, vertex=args.vertex, tol=args.eff_tol)
    section = []
    for cert in certs:
        k = len(cert.orbit)
        sigma = cert.base_time * k
        pairs = []
        for (i, j), t in sorted(cert.pair_times.items()):
            pairs.append(
                {
                    "i": i,
                    "j": j,
                    "source": cert.orbit[i],
                    "target": cert.orbit[j],
                    "time": float(t),
                    "steps": round(t / cert.base_time),
                    "phase": cert.phases[(i, j)],
                    "residual": float(cert.residuals[(i, j)]),
                }
            )
        section.append(
            {
                "orbit": list(cert.orbit),
                "base_time": float(cert.base_time),
                "m": cert.m,
                "sigma": float(sigma),
                "automorphism": {
                    "perm": list(cert.automorphism.perm),
                    "signs": list(cert.automorphism.signs),
                    "order": cert.automorphism.order,
                },
                "pairs": pairs,
            }
        )
        lines.append(
            f"MST on orbit {cert.orbit}: {len(pairs)} verified ordered pairs"
        )
        lines.append(
            f"  base time {float(cert.base_time)!r} = (1/{k})*sigma, "
            f"sigma = {float(sigma)!r}, m = {cert.m}"
        )
        lines.append(
            f"  automorphism perm={list(cert.automorphism.perm)} "
            f"signs={list(cert.automorphism.signs)}"
        )
        for row in pairs:
            frac = Fraction(row["steps"], k)
            lines.append(
                f"  {row['source']} -> {row['target']}  "
                f"t = {row['time']!r} = ({frac})*sigma  "
                f"phase {row['phase']:+d}  residual {row['residual']:.2e}"
            )
    report["mst"] = section
    if not certs:
        lines.append("no multiple state transfer orbit found")
        return False
    return True


def _cmd_autos(args, g, report, lines) -> bool:
    autos = find_switching_automorphisms(g)
    report["automorphisms"] = [
        {"perm": list(p.perm), "signs": list(p.signs), "order": p.order}
        for p in autos
    ]
    lines.append(f"found {len(autos)} switching automorphisms")
    for p in autos:
        lines.append(f"  perm={list(p.perm)} signs={list(p.signs)} order={p.order}")
    return bool(autos)


def _cmd_evolve(args, g, report, lines) -> bool:
    _check_vertex(g, args.source, "source")
    if args.steps < 2:
        raise InputError(f"evolve needs --steps >= 2, got {args.steps}")
    if args.t_max <= 0:
        raise InputError(f"evolve needs --t-max > 0, got {args.t_max}")
    sd = decompose(g)
    times = np.linspace(0.0, args.t_max, args.steps)
    rows = []
    for t in times:
        col = propagator_column(sd, args.source, float(t))
        probs = (col.conjugate() * col).real
        total = float(probs.sum())
        if abs(total - 1.0) > 1e-9:
            raise VerificationFailedError(
                f"probabilities at t = {float(t)!r} sum to {total!r}, not 1"
            )
        rows.append([float(t)] + [float(p) for p in probs])
    report["evolution"] = {
        "source": args.source,
        "t_max": float(args.t_max),
        "steps": args.steps,
        "columns": ["t"] + [f"p_{i}" for i in range(g.n)],
        "rows": rows,
    }
    lines.append(",".join(["t"] + [f"p_{i}" for i in range(g.n)]))
    for row in rows:
        lines.append(",".join(_format_float(x) for x in row))
    return True


def _cmd_example(args, report, lines) -> bool:
    g = builtin_example(args.name)
    text = serialize_graph(g)
    report["graph"] = {
        "name": args.name,
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges],
    }
    report["graph_text"] = text
    lines.append(text.rstrip("\n"))
    return True


# --- argument parsing and dispatch ----------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="owalk",
        description="continuous quantum walks on oriented graphs: "
        "periodicity, strong cospectrality, perfect and multiple state transfer",
    )
    parser.add_argument("--version", action="version", version=f"owalk {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument(
        "--strict",
        action="store_true",
        help="exit 1 when the analysis comes back negative",
    )
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        metavar="X",
        help=f"verification tolerance (default {DEFAULT_PST_TOL})",
    )
    graphed = argparse.ArgumentParser(add_help=False)
    graphed.add_argument("graph", help="graph file path or builtin example name")

    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")
    sub.add_parser(
        "spectrum", parents=[common, graphed], help="eigenvalues and idempotent ranks"
    )
    p_support = sub.add_parser(
        "support", parents=[common, graphed], help="eigenvalue support of a vertex"
    )
    p_support.add_argument("vertex", type=int)
    p_cos = sub.add_parser(
        "cospectral",
        parents=[common, graphed],
        help="strong cospectrality certificate for a vertex pair",
    )
    p_cos.add_argument("a", type=int)
    p_cos.add_argument("b", type=int)
    p_per = sub.add_parser(
        "periodic", parents=[common, graphed], help="periodicity certificate of a vertex"
    )
    p_per.add_argument("vertex", type=int)
    p_pst = sub.add_parser(
        "pst",
        parents=[common, graphed],
        help="perfect state transfer between two vertices",
    )
    p_pst.add_argument("a", type=int)
    p_pst.add_argument("b", type=int)
    mode = p_pst.add_mutually_exclusive_group()
    mode.add_argument("--time", type=float, default=None, help="verify one time")
    mode.add_argument(
        "--scan", action="store_true", help="scan (0, t_max] for transfers (default)"
    )
    p_pst.add_argument("--t-max", type=float, default=20.0, help="scan horizon")
    p_pst.add_argument("--grid", type=int, default=200_000, help="scan grid points")
    p_mst = sub.add_parser(
        "mst",
        parents=[common, graphed],
        help="multiple state transfer search over automorphism orbits",
    )
    p_mst.add_argument("--vertex", type=int, default=None, help="restrict start vertex")
    sub.add_parser(
        "autos", parents=[common, graphed], help="enumerate switching automorphisms"
    )
    p_evo = sub.add_parser(
        "evolve", parents=[common, graphed], help="emit vertex probabilities over time"
    )
    p_evo.add_argument("--source", type=int, required=True)
    p_evo.add_argument("--t-max", type=float, required=True)
    p_evo.add_argument("--steps", type=int, required=True)
    p_ex = sub.add_parser(
        "example", parents=[common], help="print a builtin example graph file"
    )
    p_ex.add_argument("name", help=f"one of: {', '.join(BUILTIN_NAMES)}")
    return parser


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "support": _cmd_support,
    "cospectral": _cmd_cospectral,
    "periodic": _cmd_periodic,
    "pst": _cmd_pst,
    "mst": _cmd_mst,
    "autos": _cmd_autos,
    "evolve": _cmd_evolve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.eff_tol = args.tol if args.tol is not None else DEFAULT_PST_TOL
    report: dict = {
        "version": __version__,
        "graph": None,
        "tolerances": {
            "analysis": float(args.eff_tol),
            "grouping": float(DEFAULT_GROUPING_TOL),
        },
    }
    lines: list[str] = []
    try:
        if args.command == "example":
            found = _cmd_example(args, report, lines)
        else:
            g, label = _load_graph(args.graph)
            report["graph"] = {
                "name": label,
                "n": g.n,
                "edges": [[u, v] for u, v in g.edges],
            }
            if not args.json:
                lines.append(f"graph {label}: n = {g.n}, edges = {len(g.edges)}")
            found = _HANDLERS[args.command](args, g, report, lines)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (InternalInconsistencyError, SearchBudgetExceededError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OwalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(_emit_json(report))
    else:
        print("\n".join(lines))
    return 0 if found or not args.strict else 1


if __name__ == "__main__":
    sys.exit(main())
