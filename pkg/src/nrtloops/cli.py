"""Command-line interface.

Subcommands: group show, nrt enumerate, classify, dihedral, cycle-index,
verify. Every command supports --format json|csv|table and an optional
--output path. Exit codes: 0 success, 1 failed verification, 2 bad
arguments or descriptors, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .burnside import (
    affine_cycle_index,
    cycle_index_json_obj,
    dihedral_isotopy_count,
    format_cycle_index,
    is_prime,
    subset_orbit_count,
)
from .checks import CHECK_IDS, default_catalog, load_catalog, run_suite, suite_passed
from .flips import (
    FlipSet,
    affine_families,
    affine_family,
    families_json_obj,
    flip_loop,
    loop_transversal_census,
)
from .groups import GroupError, build_named_group, dumps_cayley, parse_subgroup
from .isotopy import classify
from .rightloops import left_nonsingular_elements, structure_flags
from .transversals import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationTooLargeError,
    enumerate_transversals,
    induced_right_loop,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_CAP = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nrtloops",
        description=(
            "Build normalized right transversals of a subgroup, induce their "
            "right loops, and classify them up to isomorphism or isotopy."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--format",
            choices=("json", "csv", "table"),
            default="table",
            help="output format (default table)",
        )
        p.add_argument("--output", help="write output to this file instead of stdout")

    group_cmd = sub.add_parser("group", help="inspect groups")
    group_sub = group_cmd.add_subparsers(dest="group_command", required=True)
    show = group_sub.add_parser("show", help="print a group's multiplication table")
    show.add_argument("--group", required=True, help="group descriptor")
    add_common(show)

    nrt_cmd = sub.add_parser("nrt", help="work with normalized right transversals")
    nrt_sub = nrt_cmd.add_subparsers(dest="nrt_command", required=True)
    enum = nrt_sub.add_parser("enumerate", help="list all transversals of a subgroup")
    enum.add_argument("--group", required=True, help="group descriptor")
    enum.add_argument("--subgroup", required=True, help="subgroup generators")
    enum.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    enum.add_argument("--limit", type=int, help="print at most this many rows")
    add_common(enum)

    cls = sub.add_parser("classify", help="classify transversal loops")
    cls.add_argument("--group", required=True, help="group descriptor")
    cls.add_argument("--subgroup", required=True, help="subgroup generators")
    cls.add_argument("--relation", choices=("iso", "isotopy"), default="isotopy")
    cls.add_argument("--jobs", type=int, default=1)
    cls.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    add_common(cls)

    dih = sub.add_parser("dihedral", help="flip-loop counts over a dihedral group")
    dih.add_argument("mode", choices=("count", "families", "census"))
    dih.add_argument("--p", type=int, help="odd prime (count and families)")
    dih.add_argument("--n", type=int, help="modulus (census)")
    dih.add_argument(
        "--B",
        dest="subset",
        help="restrict families mode to the family of this subset, e.g. 1,3",
    )
    dih.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    add_common(dih)

    cyc = sub.add_parser("cycle-index", help="cycle index of the affine maps mod p")
    cyc.add_argument("--p", type=int, required=True, help="odd prime")
    add_common(cyc)

    ver = sub.add_parser("verify", help="run the built-in theorem checks")
    pick = ver.add_mutually_exclusive_group()
    pick.add_argument("--all", action="store_true", help="run every check (default)")
    pick.add_argument(
        "--check",
        action="append",
        help="check id to run (repeatable, comma-separated allowed)",
    )
    ver.add_argument(
        "--catalog",
        default="default",
        help="'default' or a path to a JSON catalog file",
    )
    ver.add_argument("--p", type=int, help="restrict prime-parameterized checks")
    add_common(ver)

    return parser


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, sort_keys=True))


def _emit_csv(args, rows) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    _emit(args, buffer.getvalue())


def _require_odd_prime_arg(p) -> int:
    if p is None or not is_prime(p) or p == 2:
        raise GroupError(f"--p must be an odd prime, got {p}")
    return p


def cmd_group_show(args) -> int:
    G = build_named_group(args.group)
    if args.format == "json":
        _emit_json(
            args,
            {
                "descriptor": args.group,
                "order": G.order,
                "names": list(G.names),
                "table": [list(row) for row in G.table],
            },
        )
    elif args.format == "csv":
        rows = [["order", G.order]]
        rows.append(["names"] + list(G.names))
        rows.extend(list(row) for row in G.table)
        _emit_csv(args, rows)
    else:
        _emit(args, dumps_cayley(G))
    return EXIT_OK


def cmd_nrt_enumerate(args) -> int:
    G = build_named_group(args.group)
    H = parse_subgroup(G, args.subgroup)
    rows = []
    count = 0
    for t in enumerate_transversals(G, H, cap=args.cap):
        count += 1
        if args.limit is None or len(rows) < args.limit:
            loop = induced_right_loop(t)
            flags = structure_flags(loop)
            rows.append(
                {
                    "reps": list(t.reps),
                    "label": t.label(),
                    "is_loop": flags.is_loop,
                    "is_group": flags.is_group,
                }
            )
    if args.format == "json":
        _emit_json(
            args,
            {
                "group": args.group,
                "subgroup": args.subgroup,
                "count": count,
                "transversals": rows,
            },
        )
    elif args.format == "csv":
        out = [["label", "is_loop", "is_group"]]
        out.extend([r["label"], r["is_loop"], r["is_group"]] for r in rows)
        _emit_csv(args, out)
    else:
        lines = [f"{count} transversals of {args.subgroup} in {args.group}"]
        for r in rows:
            marks = " loop" if r["is_loop"] else ""
            marks += " group" if r["is_group"] else ""
            lines.append(f"  {{{r['label']}}}{marks}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    G = build_named_group(args.group)
    H = parse_subgroup(G, args.subgroup)
    transversals = list(enumerate_transversals(G, H, cap=args.cap))
    loops = [induced_right_loop(t) for t in transversals]
    labels = [t.label() for t in transversals]
    partition = classify(loops, args.relation, labels, jobs=args.jobs)
    if args.format == "json":
        obj = partition.to_json_obj()
        obj["group"] = args.group
        obj["subgroup"] = args.subgroup
        obj["transversals"] = len(loops)
        obj["class_count"] = len(partition.classes)
        _emit_json(args, obj)
    elif args.format == "csv":
        _emit_csv(args, partition.to_csv_rows())
    else:
        lines = [
            f"{len(partition.classes)} {args.relation} classes over "
            f"{len(loops)} transversals of {args.subgroup} in {args.group}"
        ]
        for k, (rep, members) in enumerate(
            zip(partition.representatives, partition.classes)
        ):
            flags = structure_flags(rep)
            lns = len(left_nonsingular_elements(rep))
            lines.append(
                f"class {k}: size {len(members)}, "
                f"left-nonsingular {lns}/{rep.order}"
                + (", loop" if flags.is_loop else "")
                + (", group" if flags.is_group else "")
            )
            for m in members:
                lines.append(f"  {{{partition.labels[m]}}}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_dihedral(args) -> int:
    if args.mode == "census":
        n = args.n if args.n is not None else args.p
        if n is None or n < 2:
            raise GroupError("census needs --n at least 2")
        result = loop_transversal_census(n, cap=args.cap)
        if args.format == "json":
            _emit_json(args, result.to_json_obj())
        elif args.format == "csv":
            rows = [["witness"]] + [[w.format()] for w in result.witnesses]
            _emit_csv(args, rows)
        else:
            shown = " ".join(w.format() for w in result.witnesses)
            _emit(args, f"{result.count} witnesses: {shown}")
        return EXIT_OK
    p = _require_odd_prime_arg(args.p)
    if args.mode == "families":
        if args.subset is not None:
            picked = FlipSet.parse(p, args.subset)
            family = sorted(affine_family(p, picked), key=lambda s: s.mask)
            families = (tuple(family),)
        else:
            families = affine_families(p)
        if args.format == "json":
            _emit_json(args, families_json_obj(p, families))
        elif args.format == "csv":
            rows = [["family", "subset"]]
            for k, fam in enumerate(families):
                rows.extend([k, s.format()] for s in fam)
            _emit_csv(args, rows)
        else:
            lines = [f"{len(families)} families mod {p}"]
            for fam in families:
                lines.append("  " + " ".join(s.format() for s in fam))
            _emit(args, "\n".join(lines))
        return EXIT_OK
    formula = dihedral_isotopy_count(p)
    burnside = subset_orbit_count(p)
    if burnside != 2 * formula:
        _emit(args, f"mismatch: formula {formula}, orbit count {burnside}")
        return EXIT_CHECK_FAILED
    values = [formula, burnside // 2]
    direct = None
    if p <= 7:
        loops = [
            flip_loop(p, FlipSet.from_mask(p, mask << 1))
            for mask in range(1 << (p - 1))
        ]
        direct = len(classify(loops, "isotopy").classes)
        values.append(direct)
    if len(set(values)) != 1:
        _emit(args, f"mismatch: {' vs '.join(map(str, values))}")
        return EXIT_CHECK_FAILED
    if args.format == "json":
        obj = {"p": p, "formula": formula, "burnside": burnside // 2}
        if direct is not None:
            obj["direct"] = direct
        _emit_json(args, obj)
    elif args.format == "csv":
        header = ["p", "formula", "burnside"] + (
            ["direct"] if direct is not None else []
        )
        _emit_csv(args, [header, [p] + values])
    else:
        _emit(args, " = ".join(map(str, values)))
    return EXIT_OK


def cmd_cycle_index(args) -> int:
    p = _require_odd_prime_arg(args.p)
    index = affine_cycle_index(p)
    if args.format == "json":
        _emit_json(args, cycle_index_json_obj(p, index))
    elif args.format == "csv":
        rows = [["type", "num", "den"]]
        for ctype, coeff in index.terms:
            type_text = " ".join(f"{length}:{count}" for length, count in ctype)
            rows.append([type_text, coeff.numerator, coeff.denominator])
        _emit_csv(args, rows)
    else:
        _emit(args, format_cycle_index(index))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.check:
        ids = []
        for chunk in args.check:
            ids.extend(tok for tok in chunk.split(",") if tok)
        unknown = [c for c in ids if c not in CHECK_IDS]
        if unknown:
            raise GroupError(f"unknown check ids: {', '.join(sorted(set(unknown)))}")
        check_ids = ids
    else:
        check_ids = None
    catalog = (
        default_catalog() if args.catalog == "default" else load_catalog(args.catalog)
    )
    ps = (_require_odd_prime_arg(args.p),) if args.p is not None else (3, 5, 7)
    reports = run_suite(catalog, check_ids, ps=ps)
    if args.format == "json":
        _emit_json(args, [r.to_json_obj() for r in reports])
    elif args.format == "csv":
        rows = [["check", "label", "verdict"]]
        rows.extend([r.check_id, r.label, r.verdict] for r in reports)
        _emit_csv(args, rows)
    else:
        lines = []
        width = max((len(r.check_id) for r in reports), default=0)
        for r in reports:
            line = f"{r.check_id:<{width}}  {r.verdict:<7}  {r.label}"
            details = r.to_json_obj()["details"]
            if r.verdict == "fail" or (
                r.verdict == "pass" and r.check_id in ("thm4.2", "facts")
            ):
                line += f"  {json.dumps(details, sort_keys=True)}"
            lines.append(line)
        tally = {"pass": 0, "fail": 0, "vacuous": 0}
        for r in reports:
            tally[r.verdict] += 1
        lines.append(
            f"{tally['pass']} passed, {tally['fail']} failed, "
            f"{tally['vacuous']} vacuous"
        )
        _emit(args, "\n".join(lines))
    return EXIT_OK if suite_passed(reports) else EXIT_CHECK_FAILED


_DISPATCH = {
    "classify": cmd_classify,
    "dihedral": cmd_dihedral,
    "cycle-index": cmd_cycle_index,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "group":
            return cmd_group_show(args)
        if args.command == "nrt":
            return cmd_nrt_enumerate(args)
        return _DISPATCH[args.command](args)
    except EnumerationTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GroupError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
