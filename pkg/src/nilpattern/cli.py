"""Command line interface.

Exit codes: 0 verdict true or success, 1 verdict false (witness in the
report), 2 input error, 3 guard exceeded.  Reports go to stdout as JSON,
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from fractions import Fraction

from . import corpus
from .equid import check_counting_exact, verify_counting_numeric, weyl_sum
from .errors import CrossCheckError, GuardExceeded, HypothesisError, PreconditionError
from .exactnum import default_assignment, full_space, parse_assignment, to_fraction
from .forms import is_flag, v_space
from .io import InputError, jsonable, load_path, subspace_to_json
from .irrfact.qualitative import (
    is_filtration_irrational, is_linearly_irrational_seq,
    is_strongly_irrational, qual_additive_decompose, qual_factorise,
)
from .irrfact.quantitative import (
    check_quant_filtration_irrational, check_quant_linear_irrational, factorisation_report,
    quant_additive_decompose, quant_factorise,
)
from .nilalg import validate_filtration
from .pattern import compare_leibman, g_psi, leibman_algebra, minimal_filtration

OK, FALSE, INPUT, GUARD = 0, 1, 2, 3


def _need(ws, *names):
    missing = [n for n in names if getattr(ws, n) is None]
    if missing:
        raise InputError(f"workspace lacks {', '.join(missing)}")


def _assignment(args, ws):
    if args.assignment:
        return parse_assignment(args.assignment)
    if ws.assignment:
        return ws.assignment
    return default_assignment(ws.symbols)


def cmd_validate(args, ws):
    _need(ws, "algebra", "filtration")
    ok, wit = validate_filtration(ws.algebra, ws.filtration)
    return ok, {"valid": ok, "step": ws.algebra.step, "witness": wit}


def _degree(args, ws):
    if args.s:
        return args.s
    if ws.filtration is not None:
        return ws.filtration.degree
    return 3


def cmd_flag(args, ws):
    _need(ws, "forms")
    ok, wit = is_flag(ws.forms, _degree(args, ws))
    return ok, {"flag": ok, "witness": list(wit) if wit else None}


def cmd_vspaces(args, ws):
    _need(ws, "forms")
    s = _degree(args, ws)
    return True, {"V": {str(i): subspace_to_json(v_space(ws.forms, i)) for i in range(1, s + 1)}}


def cmd_gpsi(args, ws):
    _need(ws, "algebra", "forms", "S")
    gp = g_psi(ws.algebra, ws.forms, ws.S)
    return True, {"g_psi": subspace_to_json(gp), "dim": gp.dim}


def cmd_leibman(args, ws):
    _need(ws, "algebra", "forms", "filtration")
    lb = leibman_algebra(ws.algebra, ws.forms, ws.filtration)
    return True, {"leibman": subspace_to_json(lb), "dim": lb.dim}


def cmd_compare(args, ws):
    _need(ws, "algebra", "forms", "filtration", "S")
    rep = compare_leibman(ws.algebra, ws.forms, ws.S, ws.filtration)
    return True, jsonable(rep)


def cmd_minfilt(args, ws):
    _need(ws, "algebra", "S")
    f = minimal_filtration(ws.algebra, ws.S, ws.filtration)
    return True, {"minimal_filtration": jsonable(f)}


def cmd_irrational(args, ws):
    _need(ws, "algebra", "poly", "filtration", "S")
    alg, p, filt, S = ws.algebra, ws.poly, ws.filtration, ws.S
    if args.A is not None:
        N = to_fraction(args.N or "1")
        asg = _assignment(args, ws)
        lin = check_quant_linear_irrational(p, S, args.A, N, asg)
        out = {"linear": lin.verdict, "linear_witness": jsonable(lin)}
        verdict = lin.verdict
        if args.mode in ("filtration", "strong"):
            fil = check_quant_filtration_irrational(alg, p, filt, args.A, N, asg)
            out.update(filtration=fil.verdict, filtration_witness=jsonable(fil))
            verdict = fil.verdict if args.mode == "filtration" else verdict and fil.verdict
        return verdict, out
    if args.mode == "linear":
        v = is_linearly_irrational_seq(p, S)
    elif args.mode == "filtration":
        v = is_filtration_irrational(alg, p, filt)
    else:
        v = is_strongly_irrational(alg, p, filt, S)
    return v.verdict, {"mode": args.mode, "verdict": v.verdict, "witness": jsonable(v)}


def cmd_decompose(args, ws):
    _need(ws, "algebra", "poly", "S")
    i = args.degree
    a = ws.poly.coefficient(i)
    U = ws.S[i - 1]
    T = full_space(ws.algebra.dim)
    if "U" in ws.extra:
        from .io import subspace_from_json
        U = subspace_from_json(ws.extra["U"])
    if "T" in ws.extra:
        from .io import subspace_from_json
        T = subspace_from_json(ws.extra["T"])
    if args.A is not None:
        eps = to_fraction(args.eps) if args.eps else Fraction(args.A) / to_fraction(args.N or "1") ** i
        split = quant_additive_decompose(a, U, T, args.A, eps, _assignment(args, ws))
    else:
        split = qual_additive_decompose(a, U, T)
    return True, jsonable(split)


def cmd_factorise(args, ws):
    _need(ws, "algebra", "poly", "filtration", "S")
    if args.A is not None:
        N = to_fraction(args.N or "1")
        asg = parse_assignment(args.assignment) if args.assignment else ws.assignment
        f = quant_factorise(ws.algebra, ws.poly, ws.filtration, ws.S, args.A, N, asg)
        rep = jsonable(f)
        rep["measured"] = factorisation_report(f, N)
    else:
        f = qual_factorise(ws.algebra, ws.poly, ws.filtration)
        rep = jsonable(f)
    rep.pop("rounds", None)
    return True, rep


def cmd_counting_exact(args, ws):
    _need(ws, "algebra", "poly", "forms", "S")
    rep = check_counting_exact(ws.algebra, ws.poly, ws.S, ws.forms)
    out = jsonable(rep)
    out.pop("pattern", None)
    return rep.verdict, out


def _n_values(args):
    return [int(x) for x in str(args.N or "50,100,200,400").split(",")]


def _csv(rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["character", "N", "modulus"])
    w.writerows(rows)
    return buf.getvalue()


def cmd_counting_numeric(args, ws):
    _need(ws, "algebra", "poly", "forms", "S")
    rep = verify_counting_numeric(ws.algebra, ws.poly, ws.S, ws.forms, _n_values(args),
                                  H=args.height, assignment=_assignment(args, ws), box=args.box)
    out = jsonable(rep)
    for key in ("moduli_at_top", "sweep"):
        out.pop(key, None)
    out["csv"] = _csv((" ".join(map(str, c)), N, repr(m)) for c, N, m in rep.sweep)
    return rep.passed, out


def cmd_weyl(args, ws):
    """Weyl sums of a phase polynomial {"D": .., "terms": [[exps, value], ..]}."""
    terms = ws.extra.get("terms")
    if terms is None:
        raise InputError("weyl needs a phase file with 'terms'")
    coeffs = {}
    for exps, val in terms:
        try:
            coeffs[tuple(int(e) for e in exps)] = float(to_fraction(val))
        except (ValueError, TypeError):
            coeffs[tuple(int(e) for e in exps)] = parse_assignment(f"v={val}")["v"]
    rows = [(N, weyl_sum(coeffs, N, args.box, args.workers)) for N in _n_values(args)]
    return True, {"rows": [{"N": N, "modulus": m} for N, m in rows],
                  "csv": _csv(("0", N, repr(m)) for N, m in rows)}


def cmd_examples(args, ws=None):
    results = corpus.run_all()
    ok = all(r["ok"] for r in results)
    return ok, {"examples": results, "all_ok": ok}


COMMANDS = {
    "validate": cmd_validate, "flag": cmd_flag, "vspaces": cmd_vspaces, "gpsi": cmd_gpsi,
    "leibman": cmd_leibman, "compare": cmd_compare, "minfilt": cmd_minfilt,
    "irrational": cmd_irrational, "decompose": cmd_decompose, "factorise": cmd_factorise,
    "counting-exact": cmd_counting_exact, "weyl": cmd_weyl, "counting-numeric": cmd_counting_numeric,
    "examples": cmd_examples,
}


HELP = {
    "validate": "check algebra, filtration and adaptedness of the sequence",
    "flag": "flag condition of the forms, with a witness pair",
    "vspaces": "the spaces V^i spanned by coefficient vectors of Psi^i",
    "gpsi": "pattern algebra g^Psi(S), formula and closure cross-checked",
    "leibman": "Leibman algebra sum g_i (x) V^i",
    "compare": "Leibman algebra against g^Psi(S), with the defect",
    "minfilt": "least filtration containing S",
    "irrational": "linear, filtration or strong irrationality (quantitative with --A/--N)",
    "decompose": "split one coefficient into irrational and rational parts",
    "factorise": "p = p' * r (or e * p' * r with --A/--N)",
    "counting-exact": "exact counting-lemma verdict for a linearly irrational p",
    "weyl": "Weyl sum moduli of a phase polynomial",
    "counting-numeric": "Weyl sums of every low-height character of g^Psi",
    "examples": "run the bundled examples and their expected exit codes",
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nilpattern", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=HELP[name], description=HELP[name])
        if name != "examples":
            sp.add_argument("path", help="workspace or forms JSON file (bundled names are accepted)")
        sp.add_argument("--A", type=int, default=None, help="complexity bound")
        sp.add_argument("--N", default=None, help="scale, or comma-separated scales for sweeps")
        sp.add_argument("--eps", default=None)
        sp.add_argument("--s", type=int, default=None, help="degree bound for forms commands")
        sp.add_argument("--degree", type=int, default=1)
        sp.add_argument("--height", type=int, default=3)
        sp.add_argument("--assignment", default=None, help="e.g. a=sqrt2,b=sqrt3")
        sp.add_argument("--box", choices=["signed", "positive"], default="positive")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--mode", choices=["linear", "filtration", "strong"], default="linear")
        sp.add_argument("--out", default=None,
                        help="also write the report here (CSV of character, N, modulus for sweeps)")
    return ap


def _resolve(path: str):
    return corpus.resolve(path)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ws = load_path(_resolve(args.path)) if args.command != "examples" else None
        verdict, report = COMMANDS[args.command](args, ws)
    except (InputError, PreconditionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return GUARD
    except HypothesisError as exc:
        print(f"hypothesis fails: {exc}", file=sys.stderr)
        print(json.dumps({"verdict": False, "witness": jsonable(exc.witness)}))
        return FALSE
    except CrossCheckError as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return INPUT
    table = report.pop("csv", None) if isinstance(report, dict) else None
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table if table is not None else text)
    return OK if verdict else FALSE


if __name__ == "__main__":
    sys.exit(main())
