"""Command-line front end.

Exit codes: 0 on success, 1 when ``selftest`` finds a mismatch, 2 on invalid
input (the message names the offending field), 3 when the engine detects an
internal inconsistency.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from importlib import resources
from pathlib import Path

from .abelian import IntMatrix, cokernel
from .engine import (InputContradiction, InternalInconsistency, ProblemError, parse_problem, solve)
from .fpgroups import (FiniteGroupTable, FpGroup, HomomorphismError, PresentationError, abelianization,
                       check_homomorphism, endomorphism_from_images, realize_finite,
                       reidemeister_count, subgroup_index)
from .spheres import SphereTable, TableError, default_table
from .torus import TorusInstance, brute_force_points, coincidence_set, nielsen_data
from .values import Unknown, format_value, value_from_json, value_to_json

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input; reported with exit code 2."""


def _emit(obj, fmt: str, text: str | None = None):
    if fmt == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(obj, sort_keys=True, indent=2))


def _read_json(path: str):
    try:
        raw = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _group(text: str) -> FpGroup:
    try:
        return FpGroup.parse(text)
    except PresentationError as exc:
        raise InputError(f"--presentation: {exc}") from exc


# ------------------------------------------------------------------ solve


def _solve_one(obj, table):
    try:
        report = solve(parse_problem(obj), table)
    except ProblemError as exc:
        return None, {"error": "invalid input", "field": exc.field, "message": str(exc)}
    except InputContradiction as exc:
        return None, {"error": "contradiction", "message": str(exc)}
    return report, None


def cmd_solve(args) -> int:
    table = default_table()
    if args.batch:
        doc = _read_json(args.batch)
        problems = doc.get("problems") if isinstance(doc, dict) else doc
        if not isinstance(problems, list):
            raise InputError(f"{args.batch}: expected a list of problems or {{\"problems\": [...]}}")
        results, status = [], EXIT_OK
        for i, obj in enumerate(problems):
            report, err = _solve_one(obj, table)
            if err:
                err["index"] = i
                status = EXIT_INPUT
            results.append((report, err))
        if args.format == "text":
            for i, (report, err) in enumerate(results):
                name = problems[i].get("name", f"problem {i}") if isinstance(problems[i], dict) else f"problem {i}"
                print(f"== {name}")
                print(_error_text(err) if err else report.format_text())
        else:
            print(json.dumps([err or report.to_json() for report, err in results], sort_keys=True, indent=2))
        return status
    if not args.file:
        raise InputError("solve needs a problem file, '-' for standard input, or --batch FILE")
    report, err = _solve_one(_read_json(args.file), table)
    if err:
        print(_error_text(err), file=sys.stderr)
        return EXIT_INPUT
    _emit(report.to_json(), args.format, report.format_text())
    return EXIT_OK


def _error_text(err: dict) -> str:
    if err["error"] == "invalid input":
        return f"error: {err['message']}"
    return f"error: contradictory input: {err['message']}"


# ------------------------------------------------------------------ tables


def cmd_tables_show(args) -> int:
    table = default_table()
    if args.pi:
        m, n = args.pi
        entry = table.group_entry(m, n)
        g = table.pi(m, n)
        if isinstance(g, Unknown):
            obj = {"m": m, "n": n, "group": value_to_json(g)}
            text = f"pi_{m}(S^{n}): {g}"
        else:
            obj = {"m": m, "n": n, "group": g.to_dict(), "display": str(g)}
            if not isinstance(entry, Unknown):
                obj["generator_labels"] = list(entry.generator_labels)
                obj["provenance"] = entry.provenance
            text = f"pi_{m}(S^{n}) = {g}" + (f"\n  source: {obj['provenance']}" if "provenance" in obj else "")
    elif args.suspension:
        m, n = args.suspension
        entry = table.suspension(m, n)
        if isinstance(entry, Unknown):
            obj = {"m": m, "n": n, "suspension": value_to_json(entry)}
            text = f"E: pi_{m}(S^{n}) -> pi_{m + 1}(S^{n + 1}): {entry}"
        else:
            obj = {"m": m, "n": n, "source": str(entry.hom.source), "target": str(entry.hom.target),
                   "matrix": entry.matrix.to_rows(), "injective": entry.is_injective,
                   "surjective": entry.is_surjective, "provenance": entry.provenance}
            text = (f"E: pi_{m}(S^{n}) = {entry.hom.source} -> pi_{m + 1}(S^{n + 1}) = {entry.hom.target}\n"
                    f"  matrix {entry.matrix.to_rows()}, injective {entry.is_injective}, "
                    f"surjective {entry.is_surjective}\n  source: {entry.provenance}")
    else:
        m, n = args.kerh
        entry = table.ker_h(m, n)
        if isinstance(entry, Unknown):
            obj = {"m": m, "n": n, "ker_h": value_to_json(entry)}
            text = f"ker h in pi_{m - 1}(S^{n - 1}): {entry}"
        else:
            obj = {"m": m, "n": n, "ambient": str(entry.kernel.ambient),
                   "generators": [list(g) for g in entry.kernel.generators],
                   "derivation": entry.derivation, "provenance": entry.provenance}
            text = (f"ker h in pi_{m - 1}(S^{n - 1}) = {entry.kernel.ambient}: generators "
                    f"{obj['generators']} ({entry.derivation})\n  source: {entry.provenance}")
    _emit(obj, args.format, text)
    return EXIT_OK


def cmd_tables_check(args) -> int:
    path = args.path
    table = SphereTable.from_file(path) if path else default_table()
    print(f"ok: {table.source} (version {table.version})")
    return EXIT_OK


# ------------------------------------------------------------------ groups


def cmd_groups(args) -> int:
    G = _group(args.presentation)
    if args.groups_cmd == "abelianize":
        A = abelianization(G)
        _emit(A.to_dict() | {"display": str(A)}, args.format, str(A))
        return EXIT_OK
    if args.groups_cmd == "index":
        try:
            H = [G.word(w) for w in args.subgroup]
        except PresentationError as exc:
            raise InputError(f"--subgroup: {exc}") from exc
        v = subgroup_index(G, H, args.budget)
        _emit({"index": value_to_json(v)}, args.format, format_value(v))
        return EXIT_OK
    T = realize_finite(G, args.budget)
    if isinstance(T, Unknown):
        raise InputError(f"--presentation: the group could not be realized as a finite group ({T.reason})")
    phis = []
    for name, text in (("--phi1", args.phi1), ("--phi2", args.phi2)):
        phis.append(_endomorphism(T, G, name, text))
    count = reidemeister_count(T, *phis)
    _emit({"order": T.order, "reidemeister": count}, args.format, str(count))
    return EXIT_OK


def _endomorphism(T: FiniteGroupTable, G: FpGroup, flag: str, text: str | None) -> list[int]:
    """Generator images (comma separated words), ``id``, or ``trivial``."""
    if text is None or text.strip() == "id":
        return list(range(T.order))
    if text.strip() == "trivial":
        return [T.identity] * T.order
    words = [w for w in text.split(",")]
    try:
        images = [T.evaluate(G.word(w)) for w in words]
        phi = endomorphism_from_images(T, images)
        check_homomorphism(T, phi)
    except (PresentationError, ValueError, HomomorphismError) as exc:
        raise InputError(f"{flag}: {exc}") from exc
    return phi


# ------------------------------------------------------------------ oracle


def cmd_oracle_torus(args) -> int:
    try:
        inst = TorusInstance.from_text(args.A, args.B, args.t)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--A/--B/--t: {exc}") from exc
    pts = coincidence_set(inst)
    out = {"instance": inst.to_json(), "coincidences": pts.to_json()}
    if not pts.degenerate:
        out["nielsen"] = nielsen_data(inst).to_json()
    text = ("degenerate: det(A - B) = 0" if pts.degenerate else
            f"{pts.count} coincidence points: " + ", ".join("(" + ", ".join(map(str, p)) + ")" for p in pts.points)
            + f"\nNielsen classes: {out['nielsen']['class_count']}, indices {out['nielsen']['indices']}")
    _emit(out, args.format, text)
    return EXIT_OK


# ------------------------------------------------------------------ selftest


def golden_path() -> Path:
    return Path(str(resources.files("nck") / "data" / "golden.json"))


def run_golden(cases, table) -> list[str]:
    """Solve every golden case; return one message per mismatch."""
    failures = []
    for case in cases:
        name = case.get("name", "?")
        try:
            report = solve(parse_problem(case["problem"]), table)
        except (ProblemError, InputContradiction, InternalInconsistency) as exc:
            failures.append(f"{name}: raised {type(exc).__name__}: {exc}")
            continue
        got = report.to_json()
        for key, want in case["expected"].items():
            if key in ("N", "N_sharp", "MCC", "MC", "reidemeister"):
                ok = _match(got[key], want)
            elif key == "conditional_on":
                ok = got[key] == want
            else:
                failures.append(f"{name}: unknown expectation key {key!r}")
                continue
            if not ok:
                failures.append(f"{name}: {key} expected {json.dumps(want)}, got {json.dumps(got[key])}")
    return failures


def _match(got, want) -> bool:
    # an expected {"unknown": ...} matches any unknown reason
    if isinstance(want, dict) and "unknown" in want:
        return isinstance(got, dict) and "unknown" in got
    return value_from_json(got) == value_from_json(want)


def oracle_sweep(bound: int = 3) -> list[str]:
    """All 2x2 differences with entries in [-bound, bound] and nonzero determinant."""
    failures = []
    rng = range(-bound, bound + 1)
    zero = IntMatrix.zeros(2, 2)
    for a, b, c, d in itertools.product(rng, repeat=4):
        D = IntMatrix.from_rows([[a, b], [c, d]])
        det = D.det()
        if det == 0:
            continue
        inst = TorusInstance(D, zero, (0, 0))
        pts = coincidence_set(inst)
        counts = (pts.count, brute_force_points(inst).count, abs(det), cokernel(D).order(),
                  nielsen_data(inst).class_count)
        if len(set(counts)) != 1:
            failures.append(f"torus difference {D.to_rows()}: counts disagree {counts}")
    for d1, d2 in itertools.product(range(-4, 5), repeat=2):
        if d1 == d2:
            continue
        problem = {"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "circle"},
                   "map_data": {"degrees": [d1, d2]}}
        r = solve(problem)
        vals = {r.N, r.N_sharp, r.MCC, r.MC}
        count = coincidence_set(TorusInstance.from_text(str(d1), str(d2))).count
        if vals != {count}:
            failures.append(f"circle degrees {d1}, {d2}: engine {sorted(vals)} vs oracle {count}")
    return failures


def cmd_selftest(args) -> int:
    table = default_table()
    path = Path(args.golden) if args.golden else golden_path()
    doc = _read_json(str(path))
    cases = doc["cases"] if isinstance(doc, dict) else doc
    failures = run_golden(cases, table)
    if failures:
        print(f"FAIL golden {path}: {failures[0]}")
        for f in failures[1:]:
            print(f"  also: {f}")
        return EXIT_MISMATCH
    print(f"ok golden: {len(cases)} cases")
    failures = oracle_sweep()
    if failures:
        print(f"FAIL oracle sweep: {failures[0]}")
        return EXIT_MISMATCH
    print("ok oracle sweep")
    print(f"ok tables: {table.source} (version {table.version})")
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="nck", description="Coincidence invariants of pairs of maps.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[fmt], help="evaluate the invariants of a problem file")
    s.add_argument("file", nargs="?", help="problem JSON file, or - for standard input")
    s.add_argument("--batch", metavar="FILE", help="JSON list of problems")
    s.set_defaults(fn=cmd_solve)

    t = sub.add_parser("tables", help="inspect homotopy-group tables")
    tsub = t.add_subparsers(dest="tables_cmd", required=True)
    show = tsub.add_parser("show", parents=[fmt], help="print one table entry")
    g = show.add_mutually_exclusive_group(required=True)
    g.add_argument("--pi", nargs=2, type=int, metavar=("M", "N"))
    g.add_argument("--suspension", nargs=2, type=int, metavar=("M", "N"))
    g.add_argument("--kerh", nargs=2, type=int, metavar=("M", "N"))
    show.set_defaults(fn=cmd_tables_show)
    chk = tsub.add_parser("check", help="validate a table file (default: the active table)")
    chk.add_argument("path", nargs="?")
    chk.set_defaults(fn=cmd_tables_check)

    gr = sub.add_parser("groups", help="finitely presented group tools")
    gsub = gr.add_subparsers(dest="groups_cmd", required=True)
    for name, helptext in (("index", "index of a subgroup"), ("abelianize", "abelianization"),
                           ("reidemeister", "number of twisted conjugacy classes")):
        q = gsub.add_parser(name, parents=[fmt], help=helptext)
        q.add_argument("--presentation", required=True, help='e.g. "gens: a, b; rels: a^4, a^2 b^-2"')
        q.add_argument("--budget", type=int, default=10**6, help="coset limit")
        if name == "index":
            q.add_argument("--subgroup", action="append", default=[], metavar="WORD")
        if name == "reidemeister":
            q.add_argument("--phi1", help="generator images 'w1, w2, ...', or id / trivial")
            q.add_argument("--phi2", help="generator images 'w1, w2, ...', or id / trivial")
        q.set_defaults(fn=cmd_groups)

    o = sub.add_parser("oracle", help="brute-force oracles")
    osub = o.add_subparsers(dest="oracle_cmd", required=True)
    tor = osub.add_parser("torus", parents=[fmt], help="affine torus maps")
    tor.add_argument("--A", required=True, help='matrix such as "1 1; 0 1"')
    tor.add_argument("--B", required=True)
    tor.add_argument("--t", help='translation such as "1/2 0"')
    tor.set_defaults(fn=cmd_oracle_torus)

    st = sub.add_parser("selftest", help="golden cases and the oracle sweep")
    st.add_argument("--golden", help="alternative golden file")
    st.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TableError as exc:
        print(f"error: table: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
