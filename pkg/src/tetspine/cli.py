"""Command-line driver.

Exit codes: 0 success, 1 verification failure or write error, 2 usage or
parse error, 3 enumeration budget exceeded. Data goes to stdout (TSV by
default, JSON with --format json); progress and warnings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import (
    EnumerationBudgetError,
    GluingError,
    InvalidParamsError,
    MoveNotApplicableError,
    NotClosedError,
    ParseError,
    TetspineError,
)
from .homology import h1
from .lens import build_Tpq, kappa_expected, lens_params, tau_expected
from .moves import SplitMix64, iter_pachner_walk, pachner_23, pachner_32
from .spine import dual_spine, enumerate_simple_subpolyhedra, t_manifold
from .surfaces import census
from .triangulation import Triangulation, parse_triangulation, serialize_triangulation

ALLOWED_LENS_T = ("0", "1", "1+e", "2+e")


def _load(path: str) -> Triangulation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_triangulation(fh.read())


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(rows: list[dict], columns: list[str], fmt: str) -> None:
    if fmt == "json":
        json.dump(rows, sys.stdout, indent=1)
        sys.stdout.write("\n")
    else:
        print("\t".join(columns))
        for row in rows:
            print("\t".join(_cell(row[c]) for c in columns))


def _coords_text(surface) -> str:
    n = surface.triangulation.n
    groups = []
    for t in range(n):
        groups.append(",".join(str(x) for x in (*surface.tri[t], *surface.quad[t])))
    return ";".join(groups)


# ---- commands ---------------------------------------------------------------------


def cmd_lens_build(args) -> int:
    params = lens_params(args.p, args.q)
    tri = build_Tpq(args.p, args.q)
    path = args.out or f"T_{args.p}_{args.q}.txt"
    text = serialize_triangulation(tri, comment=f"lens space ({args.p},{args.q})")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"S = {params.S}")
    print(f"tets = {tri.n}")
    print(f"word = {params.word}")
    print(f"wrote {path}")
    return 0


def cmd_invariant(args) -> int:
    tri = _load(args.file)
    value = t_manifold(tri)
    nonor = sum(1 for link in tri.vertex_links if not link.orientable)
    if nonor:
        print(f"warning: {nonor} non-orientable vertex link(s)", file=sys.stderr)
    print(f"t = {value}")
    print(f"vertices = {len(tri.vertex_classes)}")
    print(f"chi = {tri.euler_characteristic()}")
    print(f"kind = {tri.kind}")
    return 0


def cmd_surfaces(args) -> int:
    tri = _load(args.file)
    rows = []
    for entry in census(tri):
        rep = entry.report
        if rep.chi < args.chi_min:
            continue
        if args.connected_only and not rep.connected:
            continue
        if args.nontrivial_only and rep.trivial:
            continue
        kind, faces = entry.surface.provenance
        rows.append(
            {
                "coords": _coords_text(entry.surface),
                "chi": rep.chi,
                "orientable": rep.orientable,
                "connected": rep.connected,
                "classification": rep.classification,
                "trivial": rep.trivial,
                "max_edge_weight": rep.max_edge_weight,
                "provenance": f"{kind}:{faces:#x}",
            }
        )
    _emit(
        rows,
        [
            "coords",
            "chi",
            "orientable",
            "connected",
            "classification",
            "trivial",
            "max_edge_weight",
            "provenance",
        ],
        args.format,
    )
    return 0


def cmd_subpolyhedra(args) -> int:
    tri = _load(args.file)
    spine = dual_spine(tri)
    if spine.has_degree_one_face:
        print(
            "warning: spine has a degree-1 edge class; faces may be non-cellular",
            file=sys.stderr,
        )
    rows = []
    for q in enumerate_simple_subpolyhedra(spine):
        rows.append(
            {
                "faces": f"{q.faces:#x}",
                "v_q": q.v_q,
                "chi": q.chi,
                "is_surface": q.is_surface,
            }
        )
    _emit(rows, ["faces", "v_q", "chi", "is_surface"], args.format)
    return 0


def cmd_pachner(args) -> int:
    tri = _load(args.file)
    kind, _, idx_text = args.move.partition(":")
    if kind not in ("23", "32") or not idx_text.isdigit():
        print(f"error: --move must be 23:<face> or 32:<edge>, got {args.move!r}", file=sys.stderr)
        return 2
    idx = int(idx_text)
    try:
        if kind == "23":
            if idx >= len(tri.triangle_classes):
                print(f"error: triangle class {idx} out of range", file=sys.stderr)
                return 2
            out = pachner_23(tri, idx)
        else:
            if idx >= len(tri.edge_classes):
                print(f"error: edge class {idx} out of range", file=sys.stderr)
                return 2
            out = pachner_32(tri, idx)
    except MoveNotApplicableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(serialize_triangulation(out, comment=f"after move {args.move}"))
    return 0


_LENS_COLUMNS = [
    "subject",
    "tets",
    "tets_expected",
    "h1_order",
    "h1_expected",
    "tau",
    "tau_expected",
    "kappa",
    "kappa_expected",
    "rp2",
    "nontrivial_spheres",
    "t",
    "status",
]


def cmd_verify_lens(args) -> int:
    if args.pmax < 4:
        print("error: --pmax must be at least 4", file=sys.stderr)
        return 2
    rows = []
    for p in range(4, args.pmax + 1):
        print(f"verifying p = {p}", file=sys.stderr)
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            params = lens_params(p, q)
            tri = build_Tpq(p, q)
            entries = census(tri)
            tau = sum(1 for e in entries if e.report.classification == "torus")
            kappa = sum(1 for e in entries if e.report.classification == "klein")
            rp2 = sum(1 for e in entries if e.report.classification == "rp2")
            bad_spheres = sum(
                1
                for e in entries
                if e.report.classification == "sphere" and not e.report.trivial
            )
            betti, torsion = h1(tri)
            h1_order = torsion[0] if (betti, len(torsion)) == (0, 1) else f"({betti},{torsion})"
            t_val = str(t_manifold(tri))
            ok = (
                tri.n == params.S - 3
                and h1_order == p
                and tau == tau_expected(p, q)
                and kappa == kappa_expected(p, q)
                and rp2 == 0
                and bad_spheres == 0
                and t_val in ALLOWED_LENS_T
            )
            rows.append(
                {
                    "subject": f"T_{p}_{q}",
                    "tets": tri.n,
                    "tets_expected": params.S - 3,
                    "h1_order": h1_order,
                    "h1_expected": p,
                    "tau": tau,
                    "tau_expected": tau_expected(p, q),
                    "kappa": kappa,
                    "kappa_expected": kappa_expected(p, q),
                    "rp2": rp2,
                    "nontrivial_spheres": bad_spheres,
                    "t": t_val,
                    "status": "ok" if ok else "fail",
                }
            )
            if not ok:
                _emit(rows, _LENS_COLUMNS, args.format)
                print(f"error: first failing subject is T_{p}_{q}", file=sys.stderr)
                return 1
    _emit(rows, _LENS_COLUMNS, args.format)
    return 0


_EXISTENCE_BASES = ((4, 1), (5, 1), (5, 2), (7, 2))


def _existence_check(tri: Triangulation, t52: Triangulation) -> str | None:
    """None when the triangulation satisfies the existence property."""
    if tri.n == 1 and tri.is_isomorphic_to(t52):
        return None
    nontrivial = [e for e in census(tri) if not e.report.trivial]
    if not nontrivial:
        return "no non-trivial normal surface"
    if not any(e.report.max_edge_weight <= 2 for e in nontrivial):
        return "no non-trivial surface with edge weights <= 2"
    return None


def cmd_verify_existence(args) -> int:
    t52 = build_Tpq(5, 2)
    master = SplitMix64(args.seed)
    rows = []
    failed = False
    for (p, q) in _EXISTENCE_BASES:
        base = build_Tpq(p, q)
        base_t = str(t_manifold(base))
        base_problem = _existence_check(base, t52)
        for k in range(args.seeds):
            walk_seed = master.next()
            subject = f"T_{p}_{q}/seed{k}"
            print(f"walking {subject} (seed {walk_seed:#x})", file=sys.stderr)
            problem = base_problem
            if problem is None:
                for step, cur in enumerate(iter_pachner_walk(base, args.steps, walk_seed)):
                    cur_t = str(t_manifold(cur))
                    if cur_t != base_t:
                        problem = f"t changed at step {step + 1}: {base_t} -> {cur_t}"
                        break
                    problem = _existence_check(cur, t52)
                    if problem is not None:
                        problem = f"step {step + 1}: {problem}"
                        break
            status = "ok" if problem is None else "fail"
            failed = failed or problem is not None
            rows.append(
                {
                    "subject": subject,
                    "steps": args.steps,
                    "t": base_t,
                    "status": status,
                    "detail": problem or "",
                }
            )
    _emit(rows, ["subject", "steps", "t", "status", "detail"], args.format)
    return 1 if failed else 0


# ---- parser -----------------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tetspine",
        description="Triangulated 3-manifolds: spines, invariants, normal surfaces.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lens-build", help="write the layered (p,q) lens triangulation")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-o", "--out", help="output path (default T_<p>_<q>.txt)")
    p.set_defaults(func=cmd_lens_build)

    p = sub.add_parser("invariant", help="golden-ring invariant and basic data")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("surfaces", help="normal surface census")
    p.add_argument("file")
    p.add_argument("--chi-min", type=int, default=-(10**9))
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--nontrivial-only", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_surfaces)

    p = sub.add_parser("subpolyhedra", help="simple subpolyhedra of the dual spine")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(func=cmd_subpolyhedra)

    p = sub.add_parser("pachner", help="apply one bistellar move")
    p.add_argument("file")
    p.add_argument("--move", required=True, metavar="23:<face>|32:<edge>")
    p.set_defaults(func=cmd_pachner)

    v = sub.add_parser("verify", help="verification suites")
    vsub = v.add_subparsers(dest="suite", required=True)

    p = vsub.add_parser("lens", help="lens census against expected counts")
    p.add_argument("--pmax", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_verify_lens)

    p = vsub.add_parser("existence", help="non-trivial surfaces along random walks")
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="master seed for the walk-seed stream")
    _add_format(p)
    p.set_defaults(func=cmd_verify_existence)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, GluingError, NotClosedError, InvalidParamsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TetspineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
