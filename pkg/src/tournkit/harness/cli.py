"""Command line entry point: enumerate, verify, analyze, omega, gen."""

from __future__ import annotations

import argparse
import os
import sys

from ..core import ShapeTag, classify_shape, format_tk, read_tk, write_tk
from ..decomposition import gallai_partition, quotient, scc_order, tilde_partition
from ..diamonds import all_center_counts
from ..errors import TournamentError
from ..families import NAMES, enumerate_canonical, gen_named, omega, read_catalog, write_catalog
from ..hypomorphy import self_dual_profile
from .suites import SUITE_ORDER, SUITES, run_suite

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2

SHORT_SHAPES = {
    ShapeTag.THREE_CYCLE: "C3",
    ShapeTag.FOUR_CYCLE: "C4",
    ShapeTag.DIAMOND_POS: "delta_plus",
    ShapeTag.DIAMOND_NEG: "delta_minus",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def shape_name(t) -> str:
    tag = classify_shape(t)
    if tag == ShapeTag.TRANSITIVE:
        return f"O_{t.n}"
    if tag == ShapeTag.ALMOST_TRANSITIVE:
        # on three vertices the almost transitive tournament is the 3-cycle
        return "C3" if t.n == 3 else f"almost_transitive_{t.n}"
    return SHORT_SHAPES.get(tag, tag.value)


def analyze_lines(t) -> list[str]:
    lines = [format_tk(t), f"shape: {classify_shape(t).value}"]
    if t.n >= 2:
        p = gallai_partition(t)
        q = quotient(t, p)
        lines.append(f"P(T): {p}")
        lines.append(f"P~(T): {tilde_partition(t)}")
        lines.append(f"quotient: {shape_name(q)} ({format_tk(q)})")
    sccs = scc_order(t)
    lines.append("scc order: " + " > ".join(",".join(str(v) for v in sorted(c)) for c in sccs))
    lines.append("diamond centers (plus, minus):")
    for v, (plus, minus) in enumerate(all_center_counts(t)):
        lines.append(f"  {v}: ({plus}, {minus})")
    lines.append("self-duality:")
    lines.extend("  " + ln for ln in self_dual_profile(t, min(3, t.n)).lines())
    return lines


def _cmd_enumerate(args) -> int:
    cat = enumerate_canonical(args.n, jobs=args.jobs)
    write_catalog(args.out, cat)
    print(f"n={cat.n} count={len(cat)} -> {args.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.list:
        width = max(len(s) for s in SUITE_ORDER)
        for name in SUITE_ORDER:
            print(f"{name.ljust(width)}  {SUITES[name].statement}")
        return EXIT_OK
    if args.suite is None:
        raise UsageError("verify needs a suite name (or --list)")
    params = {"n": args.n, "seed": args.seed, "trials": args.trials, "mode": args.mode,
              "n_min": args.n_min, "n_max": args.n_max}
    report = run_suite(args.suite, params, catalog_path=args.catalog, jobs=args.jobs,
                       timing=not args.omit_timing)
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def _cmd_analyze(args) -> int:
    t = read_tk(args.input)
    print("\n".join(analyze_lines(t)))
    return EXIT_OK


def _cmd_omega(args) -> int:
    catalogs = {}
    for k in (args.m - 2, args.m - 1):
        path = os.path.join(args.catalog_dir, f"cat{k}.tkc")
        if not os.path.exists(path):
            raise UsageError(f"missing catalog {path} (create it with: enumerate --n {k} --out {path})")
        catalogs[k] = read_catalog(path)
        if catalogs[k].n != k:
            raise UsageError(f"{path} holds n={catalogs[k].n}, expected {k}")
    text = omega(args.m, catalogs).to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_gen(args) -> int:
    t = gen_named(args.name, args.n)
    if args.out:
        write_tk(args.out, t)
    else:
        print(format_tk(t))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tournkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="write the catalog of all classes on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", nargs="?")
    p.add_argument("--list", action="store_true", help="list the suites and what they check")
    p.add_argument("--n", type=int)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--mode", choices=["exhaustive", "random"])
    p.add_argument("--catalog")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out")
    p.add_argument("--omit-timing", action="store_true",
                   help="leave runtime_ms empty so reports compare byte for byte")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("analyze", help="describe the tournament in a .tk file")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("omega", help="compute Omega_m from the catalogs at m-2 and m-1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--catalog-dir", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_omega)

    p = sub.add_parser("gen", help="print a named tournament")
    p.add_argument("name", choices=NAMES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, TournamentError, OSError) as e:
        print(f"tournkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
