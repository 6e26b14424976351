"""Command-line front end.

Every subcommand prints one JSON document (sorted keys) to stdout or to
``--out``.  Results are cached under $QCANON_CACHE_DIR keyed by the
normalized arguments and the package version, so a warm rerun returns the
same bytes.

Exit codes: 1 invalid input, 2 uncertified window, 3 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys

from . import __version__
from . import weights as W
from .barinv import BarEngine, InconsistentSystem
from .canbasis import (CanonicalSolver, NonTriangularInput, WindowTooSmall, build_table,
                       widening_scan)
from .exactpoly import NotDivisible

EXIT_INVALID, EXIT_UNCERTIFIED, EXIT_INTERNAL = 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _lattice(cartan: str) -> str:
    return {"B": "int", "Amix": "mixed"}.get(cartan, "half")


def _parse_lambda(text: str, cartan: str, n: int | None = None) -> tuple:
    wt = W.parse_weight(text, _lattice(cartan))
    if n is not None and wt.n != n:
        raise W.InvalidWeight(f"expected {n} entries, got {wt.n}")
    return wt.doubled


def _poly_row(mu, p, duals=None) -> dict:
    return {"mu": W.format_weight(mu, duals), "poly": p.to_json(), "text": p.pretty()}


def _check_fit(lam, cutoff: int, cartan: str, lo=None) -> None:
    from .barinv import in_window
    t = "C" if cartan == "A" else cartan
    for e in lam:
        if not in_window(t, e, cutoff, lo):
            raise W.InvalidWeight(f"{W.format_weight(lam)} does not fit cutoff {cutoff}")


# subcommands


def cmd_bar(a) -> dict:
    duals = _duals(a)
    lam = _parse_lambda(a.lam, a.cartan, a.n)
    _check_fit(lam, a.cutoff, a.cartan, a.lo)
    eng = BarEngine(a.cartan, a.cutoff, duals, a.lo)
    img = eng.psi(lam)
    return {"command": "bar", "type": a.cartan, "n": len(lam), "cutoff": a.cutoff,
            "lambda": W.format_weight(lam, duals),
            "image": [_poly_row(mu, p, duals) for mu, p in sorted(img.items(), reverse=True)]}


def _duals(a):
    if a.cartan != "Amix":
        return None
    if a.l is None or a.m is None:
        raise W.InvalidWeight("type Amix needs --l and --m")
    return (False,) * a.l + (True,) * a.m


def cmd_canon(a) -> dict:
    duals = _duals(a)
    n = a.n if a.n is not None else (a.l + a.m if duals else None)
    if n is None:
        raise W.InvalidWeight("--n is required")
    solver = CanonicalSolver(BarEngine(a.cartan, a.cutoff, duals, a.lo), n)
    lams = None
    if a.lam:
        lam = _parse_lambda(a.lam, a.cartan, n)
        _check_fit(lam, a.cutoff, a.cartan, a.lo)
        lams = [lam]
    tab = build_table(solver, a.kind, lams, a.basis)
    if tab.provisional and not a.allow_provisional and a.lam:
        bad = sorted(m for m, _ in tab.provisional)
        raise CliError(EXIT_UNCERTIFIED, "uncertified entries at "
                       + "; ".join(W.format_weight(m, duals) for m in bad)
                       + " (rerun with a larger --cutoff or --allow-provisional)")
    out = tab.to_json(a.allow_provisional)
    out["command"] = "canon"
    return out


def cmd_wedge(a) -> dict:
    from .wedge import WedgeSolver
    lam = _parse_lambda(a.lam, a.cartan, a.n)
    if not W.is_dominant(a.cartan, lam):
        raise W.InvalidWeight(f"{W.format_weight(lam)} is not dominant")
    _check_fit(lam, a.cutoff, a.cartan)
    ws = WedgeSolver(CanonicalSolver(BarEngine(a.cartan, a.cutoff), len(lam)))
    route = a.route or ("projection" if a.cartan == "C" else "inversion")
    if route == "projection":
        col = ws.u_projection(lam)
    elif route == "inversion":
        col = ws.u_inversion(lam)
    else:
        raise W.InvalidWeight(f"unknown route {route!r}")
    bad = [mu for mu in col if not ws.tensor.certified(W.neg_w0(lam), W.neg_w0(mu))]
    if bad and not a.allow_provisional:
        raise CliError(EXIT_UNCERTIFIED, "uncertified u entries; enlarge --cutoff")
    return {"command": "wedge", "kind": "u", "type": a.cartan, "n": len(lam), "cutoff": a.cutoff,
            "route": route, "lambda": W.format_weight(lam),
            "entries": [dict(_poly_row(mu, p), provisional=mu in bad) if mu in bad else _poly_row(mu, p)
                        for mu, p in sorted(col.items())]}


def cmd_char(a) -> dict:
    from .superchar import euler_character, irreducible_character
    lam = _parse_lambda(a.lam, "C" if "/" in a.lam or a.kind == "irreducible" else "B", a.n)
    if not W.finite_dim_test(lam):
        raise W.InvalidWeight(f"{W.format_weight(lam)} is not in the dominant set")
    n = len(lam)
    if a.kind == "euler":
        ch = euler_character(lam, n, a.route)
        out = ch.to_json()
        out["text"] = ch.pretty()
        return out
    from .wedge import WedgeSolver
    cutoff = a.cutoff or (max(abs(e) for e in lam) // 2 + n + 1)
    ws = WedgeSolver(CanonicalSolver(BarEngine("C", cutoff), n))
    res = irreducible_character(lam, ws)
    out = res.character.to_json()
    out["text"] = res.character.pretty()
    out["l_row"] = [{"mu": W.format_weight(m), "value": v} for m, v in sorted(res.l_row.items())]
    out["a_row"] = [{"mu": W.format_weight(m), "value": v} for m, v in sorted(res.a_row.items())]
    out["a_col"] = [{"mu": W.format_weight(m), "value": v} for m, v in sorted(res.a_col.items())]
    return out


def cmd_kgroup(a) -> dict:
    from . import grothendieck as G
    if a.action == "translate":
        lam = _parse_lambda(a.lam, "C", a.n)
        return G.translate_verma(a.i, a.r, lam, a.direction).to_json()
    if a.action == "verify":
        lam = _parse_lambda(a.lam, "C", a.n)
        ok = G.verify_translation(a.i, a.r, lam)
        okE = G.verify_euler_translation(a.i, lam) if W.is_dominant("C", lam) and a.r == 1 else None
        return {"verma": ok, "euler": okE}
    if a.action == "tilting":
        lam = _parse_lambda(a.lam, "C", a.n)
        _check_fit(lam, a.cutoff, "C")
        s = CanonicalSolver(BarEngine("C", a.cutoff), len(lam))
        return G.conjectural_tilting(lam, s).to_json()
    if a.action == "irreducible-mixed":
        duals = (False,) * a.l + (True,) * a.m
        lam = W.parse_weight(a.lam, "mixed").doubled
        _check_fit(lam, a.cutoff, "Amix", a.lo)
        s = CanonicalSolver(BarEngine("Amix", a.cutoff, duals, a.lo), len(lam))
        return G.conjectural_irreducible_mixed(lam, s).to_json(duals)
    raise W.InvalidWeight(f"unknown action {a.action!r}")


def cmd_scan(a) -> dict:
    return widening_scan(a.cartan, a.n, a.cutoff, a.max_cutoff, dominant_only=a.dominant_only)


def cmd_compare(a) -> dict:
    from .wedge import SectorWedgeSolver, WedgeSolver, compare_wedge_bases
    n, k = a.n, a.cutoff
    c_solver = WedgeSolver(CanonicalSolver(BarEngine("C", k), n))
    a_solver = SectorWedgeSolver(k, n)
    b_solver = WedgeSolver(CanonicalSolver(BarEngine("B", k + 1), n)) if a.route == "a-vs-b" else None
    lams = [_parse_lambda(a.lam, "C", n)] if a.lam else c_solver.dominant()
    diffs = []
    for lam in lams:
        ok, d = compare_wedge_bases(a.route, lam, k, c_solver, a_solver, b_solver)
        for mu, x, y in d:
            diffs.append({"lambda": W.format_weight(lam), "mu": W.format_weight(mu),
                          "left": x.pretty(), "right": y.pretty()})
    return {"route": a.route, "n": n, "cutoff": k, "columns": len(lams),
            "verdict": "EQUAL" if not diffs else "DIFFERENT", "diffs": diffs}


def cmd_fixtures(a) -> dict:
    return {"written": write_fixtures(a.out_dir)}


FIXTURE_JOBS = {
    "canon_C_n2_t.json": ["canon", "--cartan", "C", "--n", "2", "--cutoff", "5", "--kind", "t"],
    "canon_C_n2_l.json": ["canon", "--cartan", "C", "--n", "2", "--cutoff", "5", "--kind", "l"],
    "canon_B_n2_t.json": ["canon", "--cartan", "B", "--n", "2", "--cutoff", "5", "--kind", "t"],
    "wedge_C_half_minus_half.json": ["wedge", "--cartan", "C", "--lambda", "1/2,-1/2", "--cutoff", "5"],
    "compare_a_vs_b_n2.json": ["compare", "--route", "a-vs-b", "--n", "2", "--cutoff", "5"],
    "char_irreducible_3half.json": ["char", "--kind", "irreducible", "--lambda", "3/2,-3/2"],
}


def write_fixtures(out_dir: str) -> list:
    """Regenerate the golden files under out_dir/v<version>."""
    d = os.path.join(out_dir, "v" + __version__)
    os.makedirs(d, exist_ok=True)
    written = []
    for name, argv in sorted(FIXTURE_JOBS.items()):
        path = os.path.join(d, name)
        code = run(["--no-cache", "--out", path] + argv)
        if code:
            raise CliError(code, f"fixture job {name} failed")
        written.append(path)
    return written


# plumbing


def table_csv(doc: dict) -> str:
    """One row per table entry: la, mu, coefficient pairs as exponent:coeff."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["la", "mu", "coeffs"])
    for e in doc["entries"]:
        w.writerow([e["la"], e["mu"], " ".join(f"{x}:{c}" for x, c in e["poly"]["coeffs"])])
    return buf.getvalue()


def _cache_key(args: str) -> str:
    h = hashlib.sha256((args + "\0" + __version__).encode()).hexdigest()
    return h[:32]


def _glue_negative_values(argv: list) -> list:
    """Let ``--lambda -1/2,1/2`` through argparse by rewriting it as ``--lambda=-1/2,1/2``."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--lambda" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append("--lambda=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcanon", description="Canonical bases and q(n) characters")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, lam_required=True, cartan=True):
        if cartan:
            sp.add_argument("--cartan", choices=W.TYPES, default="C")
        sp.add_argument("--n", type=int)
        sp.add_argument("--lambda", dest="lam", required=lam_required)
        sp.add_argument("--cutoff", type=int, default=4)
        sp.add_argument("--lo", type=int)
        sp.add_argument("--l", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--allow-provisional", action="store_true")

    sp = sub.add_parser("bar", help="bar involution of one monomial")
    common(sp)
    sp.set_defaults(func=cmd_bar)

    sp = sub.add_parser("canon", help="canonical (t) or dual canonical (l) columns")
    common(sp, lam_required=False)
    sp.add_argument("--kind", choices=("t", "l"), default="t")
    sp.add_argument("--basis", choices=("N", "M"))
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_canon)

    sp = sub.add_parser("wedge", help="u-columns of the wedge canonical basis")
    common(sp)
    sp.add_argument("--route", choices=("projection", "inversion"))
    sp.set_defaults(func=cmd_wedge)

    sp = sub.add_parser("char", help="Euler or irreducible characters")
    common(sp, cartan=False)
    sp.set_defaults(cutoff=None)
    sp.add_argument("--kind", choices=("euler", "irreducible"), default="euler")
    sp.add_argument("--route", choices=("alternating-sum", "schur-product"), default="alternating-sum")
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("kgroup", help="translation functors and conjectural classes")
    common(sp, cartan=False)
    sp.add_argument("--action", choices=("translate", "verify", "tilting", "irreducible-mixed"),
                    default="translate")
    sp.add_argument("--i", type=int, default=0)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--direction", choices=("E", "F"), default="E")
    sp.set_defaults(func=cmd_kgroup)

    sp = sub.add_parser("scan-positivity", help="search t-columns for negative coefficients")
    sp.add_argument("--cartan", choices=("B", "C"), default="B")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--cutoff", type=int, default=2)
    sp.add_argument("--max-cutoff", type=int, default=3)
    sp.add_argument("--dominant-only", action="store_true")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("compare", help="cross-type wedge identities")
    sp.add_argument("--route", choices=("a-vs-c", "a-vs-b"), required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--cutoff", type=int, default=4)
    sp.add_argument("--lambda", dest="lam")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("fixtures", help="regenerate golden files")
    sp.add_argument("--out-dir", default="fixtures")
    sp.set_defaults(func=cmd_fixtures)

    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--no-cache", action="store_true")
    return p


def run(argv=None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else 0
    cache_dir = os.environ.get("QCANON_CACHE_DIR")
    use_cache = cache_dir and not a.no_cache and a.command != "fixtures"
    text = None
    if use_cache:
        key = {k: v for k, v in vars(a).items() if k not in ("out", "no_cache", "func", "format")}
        path = os.path.join(cache_dir, _cache_key(json.dumps(key, sort_keys=True)) + ".json")
        if os.path.exists(path):
            with open(path) as f:
                text = f.read()
    if text is None:
        try:
            result = a.func(a)
        except CliError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return exc.code
        except WindowTooSmall as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_UNCERTIFIED
        except (W.InvalidWeight, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        except (NonTriangularInput, InconsistentSystem, NotDivisible, AssertionError) as exc:
            print(f"internal error: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        text = json.dumps(result, sort_keys=True, indent=1) + "\n"
        if use_cache:
            os.makedirs(cache_dir, exist_ok=True)
            with open(path, "w") as f:
                f.write(text)
    if getattr(a, "format", "json") == "csv":
        text = table_csv(json.loads(text))
    if a.out:
        with open(a.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
