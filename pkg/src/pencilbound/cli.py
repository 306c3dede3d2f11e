"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 a mathematical
precondition failed (e.g. decomposable input, gcd(f, g) != 1), 3 a proved
inequality failed or a fixture disagreed with its expectation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bipoly import BiPoly, RationalFunctionPair
from .corpus import load_corpus, run_item
from .derivation import Derivation, cofactor_of, cofactor_polygon_check, jacobian_derivation
from .errors import Falsification, PencilError
from .newton import bcount
from .parser import PolySyntaxError, parse_polynomial
from .spectrum import (
    PencilReport,
    analyze_pencil,
    is_indecomposable_probabilistic,
    poincare_relation_check,
    verify_remarkable_bounds,
)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_FALSIFIED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _poly(text: str) -> BiPoly:
    return parse_polynomial(text)


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------


def report_to_dict(rep: PencilReport) -> dict:
    entries = []
    for e in rep.entries:
        mod = e.value.modulus
        entries.append({
            "value": str(e.value),
            "modulus": None if mod is None else [str(c) for c in mod.coeffs],
            "m": e.m,
            "n": e.n,
            "profile": [list(p) for p in e.multiplicity_profile],
            "gamma": e.in_gamma,
            "degree_defect": e.degree_defect,
        })
    return {
        "d": rep.d,
        "entries": entries,
        "rho": rep.rho,
        "sigma_count": rep.sigma_count,
        "gamma_count": rep.gamma_count,
        "deg_R": rep.deg_R,
        "bcount": rep.bcount,
        "verdicts": rep.verdicts,
        "seed": rep.seed,
        "matrix": [list(row) for row in rep.matrix],
    }


def _report_text(rep: PencilReport) -> str:
    lines = [f"degree d = {rep.d}, seed {rep.seed}, change {[list(r) for r in rep.matrix]}"]
    if not rep.entries:
        lines.append("spectrum: empty")
    for e in rep.entries:
        prof = " ".join(f"{a}^{b}" for a, b in e.multiplicity_profile)
        flag = "  pure power" if e.in_gamma else ""
        lines.append(f"  {e.value}: m={e.m} n={e.n} layers [{prof}] defect={e.degree_defect}{flag}")
    b = "-" if rep.bcount is None else rep.bcount
    lines.append(f"rho = {rep.rho}  |sigma| = {rep.sigma_count}  |gamma| = {rep.gamma_count}  "
                 f"deg R = {rep.deg_R}  B = {b}")
    for name, ok in rep.verdicts.items():
        lines.append(f"  {name}: {'holds' if ok else 'VIOLATED'}")
    return "\n".join(lines)


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_newton(args) -> int:
    D = Derivation(_poly(args.A), _poly(args.B))
    rep = bcount(D)
    verts = [list(v) for v in rep.polygon.vertices]
    _emit(args, {"vertices": verts, "bcount": rep.bcount,
                 "support": sorted(list(p) for p in rep.support)},
          f"N_D vertices: {verts}\nB = {rep.bcount}")
    return EXIT_OK


def cmd_darboux(args) -> int:
    D = Derivation(_poly(args.A), _poly(args.B))
    f = _poly(args.f)
    res = cofactor_of(D, f)
    inside = cofactor_polygon_check(D, f) if res.present else None
    doc = {"present": res.present, "cofactor": str(res.cofactor) if res.present else None,
           "cofactor_in_newton_polygon": inside}
    text = (f"Darboux polynomial, cofactor {res.cofactor}; support inside N_D: {inside}"
            if res.present else "not a Darboux polynomial")
    _emit(args, doc, text)
    return EXIT_OK


def _pair(args) -> RationalFunctionPair:
    return RationalFunctionPair(_poly(args.f), _poly(args.g))


def cmd_jacobian(args) -> int:
    D = jacobian_derivation(_pair(args))
    _emit(args, {"A": str(D.A), "B": str(D.B), "k": D.k}, f"D = {D}\nk = {D.k}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    rep = analyze_pencil(_pair(args), args.seed)
    _emit(args, report_to_dict(rep), _report_text(rep))
    return EXIT_OK if all(rep.verdicts.values()) else EXIT_FALSIFIED


def cmd_verify(args) -> int:
    r = _pair(args)
    D = None
    if args.A is not None or args.B is not None:
        if args.A is None or args.B is None:
            raise _UsageError("-A and -B must be given together")
        D = Derivation(_poly(args.A), _poly(args.B))
    v = verify_remarkable_bounds(r, D, args.seed)
    pc = poincare_relation_check(r, args.seed)
    doc = report_to_dict(v.report)
    doc["derivation"] = {"A": str(v.derivation.A), "B": str(v.derivation.B), "k": v.derivation.k}
    doc["falsified"] = v.falsified
    doc["poincare"] = {"deg_f": pc.deg_f, "deg_g": pc.deg_g, "k": pc.k,
                       "deg_R": pc.deg_R, "holds": pc.holds}
    text = _report_text(v.report) + (
        f"\nPoincare relation deg f + deg g - 1 = k + deg R: "
        f"{pc.deg_f} + {pc.deg_g} - 1 vs {pc.k} + {pc.deg_R} -> {'holds' if pc.holds else 'fails'}")
    if v.falsified:
        text += f"\nFALSIFICATION: {', '.join(v.falsified)}"
    _emit(args, doc, text)
    return EXIT_FALSIFIED if v.falsified else EXIT_OK


def cmd_indecomposable(args) -> int:
    verdict = is_indecomposable_probabilistic(_pair(args), args.seed, args.trials)
    _emit(args, {"verdict": verdict.value, "trials": args.trials, "seed": args.seed}, verdict.value)
    return EXIT_OK


def cmd_corpus(args) -> int:
    items = [it for it in load_corpus() if args.filter is None or args.filter in it.name]
    outcomes = [run_item(it, args.seed) for it in sorted(items, key=lambda it: it.name)]
    docs, lines = [], []
    for o in outcomes:
        docs.append({"name": o.item.name, "ok": o.ok, "mismatches": o.mismatches,
                     "error": o.error, "falsified": o.falsified,
                     "computed": o.computed,
                     "expected": {k: v for k, (v, _) in o.item.expected.items()}})
        status = "ok" if o.ok else "FAIL"
        extra = "" if o.ok else f"  mismatches={o.mismatches} error={o.error} falsified={o.falsified}"
        lines.append(f"{status:4} {o.item.name}{extra}")
    all_ok = all(o.ok for o in outcomes)
    lines.append(f"{sum(o.ok for o in outcomes)}/{len(outcomes)} fixtures agree")
    _emit(args, {"items": docs, "all_ok": all_ok}, "\n".join(lines))
    return EXIT_OK if all_ok else EXIT_FALSIFIED


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="pencilbound", description="Remarkable values of rational first integrals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("newton", parents=[common], help="Newton polygon N_D and its lattice count")
    s.add_argument("-A", required=True)
    s.add_argument("-B", required=True)
    s.set_defaults(func=cmd_newton)

    s = sub.add_parser("darboux", parents=[common], help="cofactor of f for D = A dX + B dY")
    s.add_argument("-A", required=True)
    s.add_argument("-B", required=True)
    s.add_argument("-f", required=True)
    s.set_defaults(func=cmd_darboux)

    s = sub.add_parser("jacobian", parents=[common], help="derivation with first integral f/g")
    s.add_argument("-f", required=True)
    s.add_argument("-g", required=True)
    s.set_defaults(func=cmd_jacobian)

    s = sub.add_parser("spectrum", parents=[common, seeded], help="remarkable values of f/g")
    s.add_argument("-f", required=True)
    s.add_argument("-g", required=True)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("verify", parents=[common, seeded], help="check every bound for f/g")
    s.add_argument("-f", required=True)
    s.add_argument("-g", required=True)
    s.add_argument("-A")
    s.add_argument("-B")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("indecomposable", parents=[common, seeded], help="probabilistic test")
    s.add_argument("-f", required=True)
    s.add_argument("-g", required=True)
    s.add_argument("--trials", type=int, default=5)
    s.set_defaults(func=cmd_indecomposable)

    s = sub.add_parser("corpus", parents=[common, seeded], help="run the built-in fixtures")
    s.add_argument("--filter", help="substring of fixture names")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PolySyntaxError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Falsification as exc:
        print(f"FALSIFICATION: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (PencilError, ValueError) as exc:
        print(f"precondition violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
