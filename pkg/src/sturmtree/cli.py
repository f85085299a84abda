"""Command-line front end.

Subcommands: census, classify, export, verify.  Output is machine-first
(TSV or JSON on stdout); DOT and matplotlib figures serve human inspection.
Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import example_catalog
from .census import ball_census, brute_force_census, cached_census, census_agrees
from .classify import (
    classify_shape,
    detect_periodic,
    is_sturmian_up_to,
    reconstruct_quotient,
    type_profiles,
)
from .cover import ball_to_dot, ball_to_json, default_cap, lift_ball
from .errors import CapExceeded, SturmtreeError
from .presentation import (
    parse_presentation,
    presentation_to_dot,
    serialize_presentation,
    vertex_at,
)
from .verify import ORACLE_GEOMETRY, run_suite


def _load(args):
    if args.example:
        cat = example_catalog()
        if args.example not in cat:
            raise SturmtreeError(
                f"unknown example {args.example!r}; choose from "
                f"{', '.join(sorted(cat))}"
            )
        return cat[args.example]
    with open(args.input, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def _add_input_flags(sub, radius=True):
    grp = sub.add_mutually_exclusive_group(required=True)
    grp.add_argument("--input", help="path to a presentation JSON file")
    grp.add_argument("--example", help="catalog entry name")
    if radius:
        sub.add_argument("-n", "--radius", type=int, default=8,
                         help="maximum ball radius (default 8)")
    sub.add_argument("--cap", type=int, default=None,
                     help="node cap (default STURMTREE_CAP or 10^6)")


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _census_rows(c):
    rows = []
    for n in range(c.N + 1):
        special = sum(1 for e in c.entries(n) if e.special) if n < c.N else None
        rows.append((n, c.b(n), special))
    return rows


def cmd_census(args) -> int:
    p = _load(args)
    cap = args.cap if args.cap is not None else default_cap()
    c = ball_census(p, args.radius, cap)
    oracle_info = None
    if args.oracle:
        geom = ORACLE_GEOMETRY.get(args.example, {}) if args.example else {}
        o = brute_force_census(p, args.radius, cap=cap, strict=True, **geom)
        agree, detail = census_agrees(c, o)
        oracle_info = {"agrees": agree, "saturated": o.saturated,
                       "detail": detail}
        if not agree:
            print(f"oracle disagrees: {detail}", file=sys.stderr)
            return 1
    if args.format == "json":
        rows = []
        for n in range(c.N + 1):
            classes = [
                {
                    "key": c.key_for_id(n, e.sym_id).hex,
                    "representative": e.representative,
                    "count": e.count,
                    "special": e.special,
                    "extensions": [
                        c.key_for_id(n + 1, x).hex for x in e.extension_ids
                    ],
                }
                for e in c.entries(n)
            ]
            rows.append({"n": n, "b": c.b(n), "classes": classes})
        doc = {"k": p.k, "kind": p.kind, "N": c.N, "rows": rows}
        if oracle_info:
            doc["oracle"] = oracle_info
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = ["n\tb\tspecial"]
        for n, b, special in _census_rows(c):
            lines.append(f"{n}\t{b}\t{'-' if special is None else special}")
        if oracle_info:
            lines.append(f"# oracle\tagrees={oracle_info['agrees']} "
                         f"saturated={oracle_info['saturated']}")
        _emit("\n".join(lines) + "\n", args.out)
    if args.figure:
        from .figures import census_figure

        census_figure(c, args.figure)
    return 0


def cmd_classify(args) -> int:
    p = _load(args)
    cap = args.cap if args.cap is not None else default_cap()
    N = args.radius
    profiles = type_profiles(p, N, cap)
    c = cached_census(p, N + 1, cap)
    sturmian = is_sturmian_up_to(c, N)
    shape = classify_shape(p)
    plateau = detect_periodic(c)
    reconstructed = None
    if plateau is not None:
        reconstructed = serialize_presentation(reconstruct_quotient(p, plateau, cap))
    if args.format == "json":
        doc = {
            "sturmian_up_to": {"N": N, "value": sturmian},
            "shape": json.loads(shape.to_json()),
            "plateau": plateau,
            "reconstructed": json.loads(reconstructed) if reconstructed else None,
            "profiles": [
                {
                    "position": pr.position,
                    "max_type": pr.observed_max_type,
                    "censored": pr.censored,
                    "type_set": sorted(pr.type_set),
                    "class_key": pr.class_id.hex,
                }
                for _, pr in sorted(profiles.items())
            ],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = ["position\tcolor\tmax_type\tcensored\tclass_key"]
        for pos, pr in sorted(profiles.items()):
            lines.append(
                f"{pos}\t{vertex_at(p, pos).color}\t{pr.observed_max_type}"
                f"\t{int(pr.censored)}\t{pr.class_id.hex[:12]}"
            )
        lines.append(f"# sturmian_up_to_{N}\t{str(sturmian).lower()}")
        lines.append(f"# shape\t{shape.to_json()}")
        lines.append(f"# plateau\t{'none' if plateau is None else plateau}")
        if reconstructed:
            lines.append(f"# reconstructed\t{reconstructed}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_export(args) -> int:
    p = _load(args)
    cap = args.cap if args.cap is not None else default_cap()
    if args.what == "ball":
        ball = lift_ball(p, args.pos, args.radius, cap)
        text = ball_to_dot(ball) if args.format == "dot" else ball_to_json(ball) + "\n"
    else:
        if args.format == "dot":
            text = presentation_to_dot(p)
        else:
            text = serialize_presentation(p) + "\n"
    _emit(text, args.out)
    if args.figure:
        from .figures import presentation_figure

        presentation_figure(p, args.figure)
    return 0


def _parse_word(spec: str):
    from fractions import Fraction

    from .words import (
        MechanicalWord,
        PeriodicWord,
        fibonacci_word,
        mechanical_from_cf,
    )

    kind, _, rest = spec.partition(":")
    try:
        if kind == "periodic":
            if not rest:
                raise SturmtreeError("periodic word needs letters, e.g. periodic:abb")
            return PeriodicWord(tuple(rest))
        if kind == "mechanical":
            slope, _, rho = rest.partition(":")
            return MechanicalWord(Fraction(slope),
                                  Fraction(rho) if rho else Fraction(0))
        if kind == "cf":
            return mechanical_from_cf([int(d) for d in rest.split(",")])
        if kind == "fibonacci":
            return fibonacci_word(int(rest)) if rest else fibonacci_word()
    except (ValueError, ZeroDivisionError) as exc:
        raise SturmtreeError(f"bad word spec {spec!r}: {exc}") from exc
    raise SturmtreeError(
        f"unknown word kind {kind!r}; use periodic:LETTERS, mechanical:P/Q[:RHO], "
        f"cf:D0,D1,..., or fibonacci[:MINDEN]"
    )


def cmd_wordlift(args) -> int:
    from .words import (
        lift_word_ab,
        lift_word_alternating,
        lift_word_uniform,
        line_from_word,
    )

    w = _parse_word(args.word)
    if args.construction == "line":
        p = line_from_word(w)
    elif args.construction == "uniform":
        p = lift_word_uniform(w, args.s, args.t, args.k)
    elif args.construction == "alternating":
        p = lift_word_alternating(w, args.s1, args.s2, args.s3,
                                  args.t1, args.t2, args.t3, args.k)
    else:
        p = lift_word_ab(w, args.s1, args.s2, args.t1, args.t2, args.k)
    _emit(serialize_presentation(p) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    only = set(args.only.split(",")) if args.only else None
    results = run_suite(
        oracle=not args.no_oracle,
        jobs=args.jobs,
        corrupt=args.corrupt,
        only=only,
    )
    failed = 0
    for r in results:
        print(f"{r.status}\t{r.cid}\t{r.description} -- {r.detail}")
        if not r.passed and not r.skipped:
            failed += 1
    n_pass = sum(1 for r in results if r.passed)
    n_skip = sum(1 for r in results if r.skipped)
    print(f"# {n_pass} passed, {failed} failed, {n_skip} skipped")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sturmtree",
        description="Ball censuses and Sturmian classification of colored "
                    "regular-tree quotients",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="tabulate b(n) and special classes")
    _add_input_flags(c)
    c.add_argument("--format", choices=("tsv", "json"), default="tsv")
    c.add_argument("--oracle", action="store_true",
                   help="also run the brute-force patch oracle and compare")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--out", default=None, help="write to file instead of stdout")
    c.add_argument("--figure", default=None, help="also plot b(n) to this path")
    c.set_defaults(fn=cmd_census)

    cl = sub.add_parser("classify", help="type profiles, shape, periodicity")
    _add_input_flags(cl)
    cl.add_argument("--format", choices=("tsv", "json"), default="tsv")
    cl.add_argument("--out", default=None)
    cl.set_defaults(fn=cmd_classify)

    ex = sub.add_parser("export", help="DOT/JSON of presentations and balls")
    _add_input_flags(ex, radius=False)
    ex.add_argument("--what", choices=("presentation", "ball"),
                    default="presentation")
    ex.add_argument("--pos", type=int, default=0, help="ball center position")
    ex.add_argument("-n", "--radius", type=int, default=1, help="ball radius")
    ex.add_argument("--format", choices=("dot", "json"), default="dot")
    ex.add_argument("--out", default=None)
    ex.add_argument("--figure", default=None,
                    help="also draw the presentation to this image path")
    ex.set_defaults(fn=cmd_export)

    wl = sub.add_parser(
        "wordlift",
        help="build a word-driven line presentation and emit its JSON",
    )
    wl.add_argument("--word", required=True,
                    help="periodic:LETTERS | mechanical:P/Q[:RHO] | "
                         "cf:D0,D1,... | fibonacci[:MINDEN]")
    wl.add_argument("--construction",
                    choices=("line", "uniform", "alternating", "ab"),
                    default="line")
    wl.add_argument("-k", type=int, default=2, help="tree degree")
    wl.add_argument("--s", type=int, default=0)
    wl.add_argument("--t", type=int, default=1)
    for flag in ("--s1", "--s2", "--s3", "--t1", "--t2", "--t3"):
        wl.add_argument(flag, type=int, default=None)
    wl.add_argument("--out", default=None)
    wl.set_defaults(fn=cmd_wordlift)

    v = sub.add_parser("verify", help="run the acceptance criteria")
    v.add_argument("--no-oracle", action="store_true",
                   help="skip the oracle-equivalence criterion")
    v.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for the oracle runs")
    v.add_argument("--corrupt", default=None,
                   help="corrupt this catalog entry first (negative control)")
    v.add_argument("--only", default=None,
                   help="comma-separated criterion ids to run")
    v.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except SturmtreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
