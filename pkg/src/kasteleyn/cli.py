"""Command-line surface.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 degeneracy
(transport retries exhausted), 5 identity failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .graphfile import GraphFileError, parse
from .graphs import validate
from .identities import (
    check_kuo_bipartite,
    check_kuo_general,
    check_pfaffian_consistency,
    check_plucker_three_term,
)
from .immersion import detect_mode, BIPARTITE_BOUNDARY, BIPARTITE_CLOSED
from .measurements import (
    grassmann_point,
    kasteleyn_matrix,
    measurement_table,
    pfaffian_point,
    skew_kasteleyn_matrix,
    BaseCaseZero,
)
from .oracle import oracle_measurement, signed_sum
from .transport import RetriesExhausted

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_DEGENERACY = 4
EXIT_IDENTITY = 5


class ValidationFailure(Exception):
    pass


class IdentityFailure(Exception):
    pass


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise GraphFileError(0, 0, f"cannot read {path}: {exc}") from exc
    return parse(text)


def _graph_mode(g) -> str:
    try:
        mode = detect_mode(g)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    base = "bipartite" if mode in (BIPARTITE_CLOSED, BIPARTITE_BOUNDARY) else "general"
    report = validate(g, base)
    if not report.ok:
        raise ValidationFailure("; ".join(report.problems))
    return base


def _weights(g, args):
    return g.weights if getattr(args, "weights", False) else None


def _build_matrix(g, config, args, base_mode: str):
    try:
        if base_mode == "bipartite":
            return kasteleyn_matrix(
                g, config, _weights(g, args), seed=args.seed, max_retries=args.max_retries
            )
        return skew_kasteleyn_matrix(
            g, config, _weights(g, args), seed=args.seed, max_retries=args.max_retries
        )
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc


def _emit(args, jsonable, text_lines) -> None:
    if args.json:
        print(json.dumps(jsonable, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _parse_subset(g, raw: str) -> frozenset:
    ids = [s for s in raw.split(",") if s]
    stray = [s for s in ids if s not in g.boundary_set]
    if stray:
        raise ValidationFailure(f"not boundary vertices: {','.join(stray)}")
    return frozenset(ids)


def cmd_count(args) -> int:
    g, config = _load(args.file)
    base = _graph_mode(g)
    if g.boundary:
        raise ValidationFailure("count needs a closed graph; use measure instead")
    matrix = _build_matrix(g, config, args, base)
    value = matrix.measurement(())
    _emit(args, {"count": str(value)}, [str(value)])
    return EXIT_OK


def cmd_matrix(args) -> int:
    g, config = _load(args.file)
    base = _graph_mode(g)
    want_bipartite = args.theorem in (1, 2)
    if want_bipartite != (base == "bipartite"):
        raise ValidationFailure(
            f"variant {args.theorem} needs a "
            f"{'bipartite' if want_bipartite else 'general'} graph"
        )
    if args.theorem in (1, 4) and g.boundary:
        raise ValidationFailure(f"variant {args.theorem} needs an empty boundary")
    matrix = _build_matrix(g, config, args, base)
    payload = matrix.to_jsonable()
    if args.trace:
        payload["events"] = [ev.to_jsonable() for ev in matrix.assignment.events]
    lines = [f"rows: {' '.join(map(str, payload['matrix']['rows']))}",
             f"cols: {' '.join(map(str, payload['matrix']['cols']))}"]
    lines += [" ".join(row) for row in payload["matrix"]["entries"]]
    if args.trace:
        lines.append(f"events: {len(matrix.assignment.events)}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_measure(args) -> int:
    g, config = _load(args.file)
    base = _graph_mode(g)
    matrix = _build_matrix(g, config, args, base)
    if args.subset is not None:
        subset = _parse_subset(g, args.subset)
        value = matrix.measurement(subset)
        _emit(args, {"subset": sorted(subset), "value": str(value)}, [str(value)])
        return EXIT_OK
    table = measurement_table(g, matrix)
    payload = table.to_jsonable()
    lines = [
        f"{key or '(empty)'}: {val}" for key, val in payload["values"].items()
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_grassmann(args) -> int:
    g, config = _load(args.file)
    base = _graph_mode(g)
    if base != "bipartite":
        raise ValidationFailure("grassmann needs a bipartite graph")
    matrix = _build_matrix(g, config, args, base)
    point = grassmann_point(g, matrix)
    payload = point.to_jsonable()
    lines = [f"k={point.k} n={point.n}"]
    lines += [" ".join(row) for row in payload["matrix"]["entries"]]
    lines += [
        f"plucker {','.join(entry['columns'])}: {entry['value']}"
        for entry in payload["plucker"]
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_pfaffian_point(args) -> int:
    g, config = _load(args.file)
    base = _graph_mode(g)
    if base != "general":
        raise ValidationFailure("pfaffian-point needs a general graph")
    matrix = _build_matrix(g, config, args, base)
    try:
        point = pfaffian_point(g, matrix)
    except BaseCaseZero as exc:
        raise ValidationFailure(str(exc)) from exc
    payload = point.to_jsonable()
    lines = [f"base: {point.base}"]
    lines += [" ".join(row) for row in payload["matrix"]["entries"]]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g, config = _load(args.file)
    _graph_mode(g)
    weights = _weights(g, args)
    fn = (lambda s: signed_sum(g, config, s, weights)) if args.signed else (
        lambda s: oracle_measurement(g, s, weights)
    )
    if args.subset is not None:
        subset = _parse_subset(g, args.subset)
        value = fn(subset)
        _emit(
            args,
            {"signed": args.signed, "subset": sorted(subset), "value": str(value)},
            [str(value)],
        )
        return EXIT_OK
    from itertools import combinations

    if len(g.boundary) > 16:
        raise ValidationFailure("boundary too large to tabulate; pass --subset")
    subsets = [
        frozenset(s)
        for size in range(len(g.boundary) + 1)
        for s in combinations(g.boundary, size)
    ]
    order = {b: i for i, b in enumerate(g.boundary)}
    values = {",".join(sorted(s, key=order.__getitem__)): str(fn(s)) for s in subsets}
    lines = [f"{key or '(empty)'}: {val}" for key, val in values.items()]
    _emit(args, {"signed": args.signed, "values": values}, lines)
    return EXIT_OK


def _circular_quadruples(boundary):
    from itertools import combinations

    for quad in combinations(range(len(boundary)), 4):
        yield tuple(boundary[i] for i in quad)


def cmd_check(args) -> int:
    g, config = _load(args.file)
    base = _graph_mode(g)
    reports = []
    ran_any = False

    def run_bipartite_checks(which: str):
        nonlocal ran_any
        matrix = _build_matrix(g, config, args, "bipartite")
        if which in ("kuo-bipartite", "all") and matrix.k == 2 and len(g.boundary) == 4:
            table = measurement_table(g, matrix)
            reports.append(check_kuo_bipartite(table, *g.boundary))
            ran_any = True
        if which in ("plucker", "all") and matrix.k == 2 and len(g.boundary) >= 4:
            point = grassmann_point(g, matrix)
            for quad in _circular_quadruples(g.boundary):
                reports.append(check_plucker_three_term(point, quad))
            ran_any = True

    def run_general_checks(which: str):
        nonlocal ran_any
        matrix = _build_matrix(g, config, args, "general")
        if (
            which in ("kuo-general", "all")
            and len(g.boundary) == 4
            and matrix.n_internal % 2 == 0
        ):
            table = measurement_table(g, matrix)
            reports.append(check_kuo_general(table, *g.boundary))
            ran_any = True
        if which in ("pfaffian", "all"):
            try:
                point = pfaffian_point(g, matrix)
            except BaseCaseZero as exc:
                raise ValidationFailure(str(exc)) from exc
            reports.append(check_pfaffian_consistency(matrix, point, seed=args.seed))
            ran_any = True

    which = args.identity
    try:
        if base == "bipartite" and which in ("kuo-bipartite", "plucker", "all"):
            run_bipartite_checks(which)
        if base == "general" and which in ("kuo-general", "pfaffian", "all"):
            run_general_checks(which)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    if not ran_any:
        raise ValidationFailure(
            f"identity {which!r} is not applicable to this graph"
        )
    payload = [r.to_jsonable() for r in reports]
    lines = [
        f"{r.name}: {'HOLDS' if r.holds else 'FAILS'} lhs={r.lhs} rhs={r.rhs} {r.detail}"
        for r in reports
    ]
    _emit(args, payload, lines)
    if any(not r.holds for r in reports):
        raise IdentityFailure(f"{sum(not r.holds for r in reports)} identities failed")
    return EXIT_OK


def _common(subparser) -> None:
    subparser.add_argument("file", help="graph file")
    subparser.add_argument("--json", action="store_true", help="machine-readable output")
    subparser.add_argument("--seed", type=int, default=0, help="transport seed")
    subparser.add_argument(
        "--max-retries", type=int, default=32, help="perturbed path retries"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kasteleyn",
        description="Exact matching counts via signed adjacency matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="total matching count of a closed graph")
    _common(p)
    p.add_argument("--weights", action="store_true", help="use edge weights from the file")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("matrix", help="signed matrix for one theorem variant")
    _common(p)
    p.add_argument(
        "--theorem",
        type=int,
        choices=(1, 2, 4, 5),
        required=True,
        help="1: square bipartite, 2: bipartite with boundary, "
        "4: skew closed, 5: skew with boundary",
    )
    p.add_argument("--trace", action="store_true", help="include the event log")
    p.add_argument("--weights", action="store_true")
    p.set_defaults(fn=cmd_matrix)

    p = sub.add_parser("measure", help="boundary measurements")
    _common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--subset", help="comma-separated boundary ids")
    group.add_argument("--all", action="store_true", help="full table (default)")
    p.add_argument("--weights", action="store_true")
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("grassmann", help="boundary matrix and its maximal minors")
    _common(p)
    p.add_argument("--weights", action="store_true")
    p.set_defaults(fn=cmd_grassmann)

    p = sub.add_parser("pfaffian-point", help="boundary skew matrix and base count")
    _common(p)
    p.add_argument("--weights", action="store_true")
    p.set_defaults(fn=cmd_pfaffian_point)

    p = sub.add_parser("oracle", help="brute-force measurements")
    _common(p)
    p.add_argument("--subset", help="comma-separated boundary ids")
    p.add_argument("--signed", action="store_true", help="crossing-signed sums")
    p.add_argument("--weights", action="store_true")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("check", help="verify measurement identities")
    _common(p)
    p.add_argument(
        "--identity",
        choices=("kuo-bipartite", "kuo-general", "plucker", "pfaffian", "all"),
        default="all",
    )
    p.set_defaults(fn=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GraphFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationFailure as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except RetriesExhausted as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY
    except IdentityFailure as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
