"""Command-line front end.

Reports are ``key=value`` lines in a stable order; rationals print as ``p/q``.
Exit status: 0 success, 1 validation failure, 2 cap exceeded, 3 certificate
failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from . import syk
from .core import (
    ColoredGraph,
    GemFormatError,
    GraphError,
    degree_report,
    parse,
    serialize,
    to_dot,
    validate,
    zero_score,
)
from .enumerate import (
    GluingSpec,
    SeriesSpec,
    check_singular_point,
    count_gluings,
    empirical_tilde_a,
    maximal_set,
    series_solve,
    singular_point,
    verify_linear_bound,
)
from .pairings import (
    CapExceeded,
    coefficients,
    covering,
    enumerate_pairings,
    optimal_pairings,
    zero_score_of_covering,
)
from .stacked import psi, psi_color, stacked_to_dot
from .topology_moves import dipole_contract, dipole_insert, flip, rho_switch, switch_edges

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_CERT = 0, 1, 2, 3
THREADS_ENV = "GEMKIT_THREADS"


def fmt(value: object) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return " ".join(fmt(v) for v in value)
    return str(value)


def emit(rows: Iterable[tuple[str, object]]) -> None:
    for key, value in rows:
        print(f"{key}={fmt(value)}")


def load(path: str) -> ColoredGraph:
    return parse(Path(path).read_text())


def _pairing_by_index(b: ColoredGraph, index: str) -> tuple[tuple[int, int], ...]:
    if index == "optimal":
        return optimal_pairings(b)[1][0]
    k = int(index)
    for n, om in enumerate(enumerate_pairings(b)):
        if n == k:
            return om
    raise GraphError(f"pairing index {k} out of range")


# ---- subcommands ------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    g = load(args.file)
    emit(validate(g).items())
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    g = load(args.file)
    rows: list[tuple[str, object]] = list(validate(g).items())
    target = g
    if g.is_bubble():
        phi0_opt, opts = optimal_pairings(g, args.cap)
        n_pairings = sum(1 for _ in enumerate_pairings(g))
        rows += [("n_pairings", n_pairings), ("n_optimal", len(opts)), ("phi0_opt", phi0_opt)]
        target = covering(g, opts[0])
    rep = degree_report(target)
    rows.append(("score", rep.score - (rep.zero_score if g.is_bubble() else 0)))
    if g.is_closed():
        rows.append(("zero_score", rep.zero_score))
    rows.append(("gurau_degree", rep.gurau_degree if g.is_closed() else "n/a"))
    genera = sorted(gen for _, gen in rep.jacket_genera)
    rows.append(("jacket_genera" if g.is_closed() else "optimal_covering_jacket_genera", genera))
    emit(rows)
    return EXIT_OK


def cmd_pairings(args: argparse.Namespace) -> int:
    b = load(args.file)
    phi0_opt, opts = optimal_pairings(b, args.cap)
    optimal = set(opts)
    rows: list[tuple[str, object]] = []
    for k, om in enumerate(enumerate_pairings(b)):
        pairs = ",".join(f"{x}-{y}" for x, y in om)
        rows.append((f"pairing.{k}", f"{pairs} phi0={zero_score_of_covering(b, om)} optimal={fmt(om in optimal)}"))
    rows += [("phi0_opt", phi0_opt), ("n_optimal", len(opts))]
    emit(rows)
    return EXIT_OK


def cmd_coefficients(args: argparse.Namespace) -> int:
    b = load(args.file)
    if args.enumerate:
        rep = coefficients(b, mode="enumerated", b_max=args.enumerate, cap=args.cap)
    else:
        rep = coefficients(b, cap=args.cap)
    emit(rep.rows())
    if args.table:
        print()
        print(f"{'V':>4} {'Phi':>5} {'Phi0opt':>8} {'ta':>6} {'a':>8} {'s':>5} {'Delta':>8}")
        print(
            f"{rep.V:>4} {rep.score:>5} {rep.phi0_opt:>8} {fmt(rep.tilde_a):>6} "
            f"{fmt(rep.a):>8} {fmt(rep.s):>5} {fmt(rep.delta):>8}"
        )
    return EXIT_OK


def cmd_psi(args: argparse.Namespace) -> int:
    g = load(args.file)
    if g.is_bubble():
        gamma = psi(covering(g, _pairing_by_index(g, args.pairing)), _pairing_by_index(g, args.pairing))
    elif g.is_closed():
        gamma = psi_color(g, 0) if not g.marked else psi_color(g, 1)
    else:
        raise GraphError("psi needs a bubble or a closed graph")
    if args.dot:
        sys.stdout.write(stacked_to_dot(gamma))
        return EXIT_OK
    rows: list[tuple[str, object]] = [("n_white", gamma.n_white), ("circuit_rank", gamma.circuit_rank())]
    for c in gamma.colors:
        rows.append((f"stars.{c}", len(gamma.stars(c))))
    for i in gamma.colors:
        for j in gamma.colors:
            if i < j:
                rows.append((f"faces.{i}.{j}", gamma.faces(i, j)))
    rows.append(("score", gamma.score()))
    emit(rows)
    return EXIT_OK


def _apply_move(g: ColoredGraph, words: Sequence[str]) -> tuple[ColoredGraph, str]:
    kind, rest = words[0], words[1:]

    def ints(text: str) -> list[int]:
        return [int(x) for x in text.split(",") if x]

    if kind == "dipole-contract":
        out, rec = dipole_contract(g, (int(rest[0]), int(rest[1])), ints(rest[2]))
    elif kind == "dipole-insert":
        out, rec = dipole_insert(g, ints(rest[0]), ints(rest[1]))
    elif kind == "rho-switch":
        out, rec = rho_switch(g, int(rest[0]), int(rest[1]))
    elif kind == "flip":
        out = flip(g, int(rest[0]), int(rest[1]))
        return out, "flip"
    elif kind == "switch":
        out = switch_edges(g, int(rest[0]), int(rest[1]))
        return out, "switch"
    else:
        raise GraphError(f"unknown move {kind!r}")
    return out, f"{rec.kind} delta_score={rec.delta_score} delta_zero_score={rec.delta_zero_score} topology={rec.topology}"


def cmd_move(args: argparse.Namespace) -> int:
    g = load(args.file)
    rows: list[tuple[str, object]] = [("before.score", degree_report(g).score if g.is_closed() else "n/a")]
    for n, raw in enumerate(Path(args.script).read_text().splitlines()):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        g, note = _apply_move(g, line.split())
        rows.append((f"move.{n}", note))
    rows.append(("after.score", degree_report(g).score if g.is_closed() else "n/a"))
    if g.is_closed():
        rows.append(("after.zero_score", zero_score(g)))
    emit(rows)
    if args.out:
        Path(args.out).write_text(serialize(g))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    bubbles = [load(f) for f in args.files]
    rooting = "rooted-edge" if args.rooted else args.rooting
    spec = GluingSpec(bubbles, args.b, rooting=rooting, cap=args.cap)
    rows: list[tuple[str, object]] = [("D", spec.D), ("b_max", args.b), ("rooting", rooting)]
    if not (args.maximal or args.tilde_a or args.bound is not None):
        for b in range(1, args.b + 1):
            rows.append((f"count.{b}", count_gluings(spec, b)))
    if args.maximal:
        for b, lvl in maximal_set(spec).items():
            rows += [(f"phi0_max.{b}", lvl.phi0_max), (f"witnesses.{b}", len(lvl.witnesses))]
            if args.dump:
                out = Path(args.dump)
                out.mkdir(parents=True, exist_ok=True)
                for k, w in enumerate(lvl.witnesses):
                    (out / f"b{b}_{k}.gem").write_text(serialize(w))
    if args.tilde_a:
        est = empirical_tilde_a(spec)
        rows += [("tilde_a_estimate", est.estimate), ("attained_at", est.attained_at)]
        rows += [("tree_attained", est.tree_attained), ("upper_cap", est.upper_cap)]
        for b, phi, ratio in est.trace:
            rows.append((f"trace.{b}", f"{phi} {fmt(ratio)}"))
    if args.bound is not None:
        cert = verify_linear_bound(spec, Fraction(args.bound))
        rows += [("bound.tilde_a", cert.tilde_a), ("bound.passed", cert.passed), ("bound.checked", cert.checked)]
        rows.append(("bound.saturating", len(cert.saturating)))
        emit(rows)
        if not cert.passed:
            assert cert.counterexample is not None
            sys.stderr.write("certificate=fail\n" + serialize(cert.counterexample))
            return EXIT_CERT
        return EXIT_OK
    emit(rows)
    return EXIT_OK


def cmd_series(args: argparse.Namespace) -> int:
    spec = SeriesSpec.parse(args.equation)
    coeffs = series_solve(spec, args.order)
    print(" ".join(str(c) for c in coeffs))
    if args.singular:
        z_c, g_c = singular_point(spec)
        emit([("z_c", z_c), ("G_c", g_c), ("discriminant_ok", check_singular_point(spec, z_c, g_c))])
    return EXIT_OK


def cmd_syk(args: argparse.Namespace) -> int:
    if args.syk_cmd == "classify":
        g = load(args.file)
        if args.pairing == "color0":
            order = syk.order_of_covering(g)
        else:
            order = syk.classify_order(g, _pairing_by_index(g, args.pairing))
        emit([("delta0", order)])
    elif args.syk_cmd == "count":
        counts = syk.count_by_order(args.D, args.order, args.marks, args.vmax, args.first_color)
        emit((f"count.{p}", c) for p, c in counts.items())
    else:
        coeffs = syk.composite_gf(args.name, args.D, args.order)
        print(" ".join(str(c) for c in coeffs))
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    sys.stdout.write(to_dot(load(args.file)))
    return EXIT_OK


def regress_table() -> list[dict[str, str]]:
    data = resources.files("gemkit") / "data"
    lines = (data / "table.tsv").read_text().splitlines()
    head = lines[0].split("\t")
    return [dict(zip(head, line.split("\t"))) for line in lines[1:] if line.strip()]


def fixtures_regress() -> list[tuple[str, bool, str]]:
    """Recompute every stored row from the bundled bubbles."""
    data = resources.files("gemkit") / "data"
    out = []
    for row in regress_table():
        b = parse((data / row["file"]).read_text())
        rep = coefficients(b)
        got = {
            "phi0_opt": str(rep.phi0_opt),
            "tilde_a": fmt(rep.tilde_a),
            "a": fmt(rep.a),
            "s": fmt(rep.s),
            "Delta": fmt(rep.delta),
        }
        bad = [f"{k}: stored {row[k]} got {v}" for k, v in got.items() if row[k] != "-" and row[k] != v]
        out.append((row["name"], not bad, "; ".join(bad)))
    return out


def cmd_regress(args: argparse.Namespace) -> int:
    results = fixtures_regress()
    for name, ok, why in results:
        print(f"{name}={'pass' if ok else 'fail'}" + (f" ({why})" if why else ""))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_CERT


# ---- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gemkit", description=__doc__.splitlines()[0])
    p.add_argument("--cap", type=int, default=12, help="size cap (pairs or black vertices)")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name: str, func, help_text: str, file: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        if file:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check a .gem file")
    add("stats", cmd_stats, "scores, degree and pairing summary")
    add("pairings", cmd_pairings, "0-score of every pairing of a bubble")
    sp = add("coefficients", cmd_coefficients, "scaling coefficients of a bubble")
    sp.add_argument("--enumerate", type=int, metavar="B_MAX", help="estimate tilde a from gluings")
    sp.add_argument("--table", action="store_true", help="append a human-readable row")
    sp = add("psi", cmd_psi, "stacked map of a covering")
    sp.add_argument("--pairing", default="optimal", help="'optimal' or a pairing index")
    sp.add_argument("--dot", action="store_true")
    sp = add("move", cmd_move, "apply a move script")
    sp.add_argument("script")
    sp.add_argument("--out")
    sp = sub.add_parser("enumerate", help="gluings of bubbles")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--rooted", action="store_true")
    sp.add_argument("--rooting", choices=["labeled", "rooted-edge", "unlabeled"], default="labeled")
    sp.add_argument("--maximal", action="store_true")
    sp.add_argument("--tilde-a", action="store_true")
    sp.add_argument("--bound", help="check Phi_0 <= D + bound * b")
    sp.add_argument("--dump", help="directory for witness .gem files")
    sp.set_defaults(func=cmd_enumerate)
    sp = sub.add_parser("series", help="solve G = 1 + sum k z^m G^p")
    sp.add_argument("equation")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--singular", action="store_true")
    sp.set_defaults(func=cmd_series)
    sp = sub.add_parser("syk", help="orders of coverings and their counts")
    sp.set_defaults(func=cmd_syk)
    ssub = sp.add_subparsers(dest="syk_cmd", required=True)
    c = ssub.add_parser("classify")
    c.add_argument("file")
    c.add_argument("--pairing", default="color0")
    c = ssub.add_parser("count")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--marks", type=int, required=True)
    c.add_argument("--vmax", type=int, required=True)
    c.add_argument("--D", type=int, default=3)
    c.add_argument("--first-color", type=int)
    c = ssub.add_parser("gf")
    c.add_argument("name", choices=list(syk.COMPOSITES))
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--D", type=int, default=3)
    add("export-dot", cmd_export_dot, "DOT drawing of a graph")
    sub.add_parser("regress", help="recompute the bundled fixture table").set_defaults(func=cmd_regress)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap < 1:
        sys.stderr.write("error=caps must be positive\n")
        return EXIT_INVALID
    threads = os.environ.get(THREADS_ENV, "1")
    if not threads.isdigit() or int(threads) < 1:
        sys.stderr.write(f"error=invalid {THREADS_ENV} must be a positive integer\n")
        return EXIT_INVALID
    try:
        return args.func(args)
    except CapExceeded as exc:
        sys.stderr.write(f"error=cap-exceeded {exc}\n")
        return EXIT_CAP
    except (GemFormatError, GraphError, OSError, ValueError) as exc:
        sys.stderr.write(f"error=invalid {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
