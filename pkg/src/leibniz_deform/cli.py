"""Command-line front end.

Every command builds a JSON-compatible report; the text output is rendered
from that report, so ``--json`` and plain output always agree.

Exit codes: 0 success, 2 parse/usage error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import algebra as alg
from .algebra import AlgebraSpec, builtin
from .classify import classify_lie3, fingerprint_leibniz3
from .cochains import LEIBNIZ, LIE, Cochain, PreconditionError
from .cohomology import cohomology, uses_heisenberg_basis
from .deformation import (
    Poly,
    base_relations,
    format_vector,
    massey_square,
    universal_infinitesimal,
    versal_output,
)

EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------------


def _const_vector(v) -> str:
    return format_vector([Poly({(): x}) if x else Poly() for x in v])


def format_cochain(c: Cochain, symbol: str = "phi") -> str:
    vals = c.values()
    if not vals:
        return "0"
    return ", ".join(
        f"{symbol}({','.join(f'e{i}' for i in t)}) = {_const_vector(v)}" for t, v in vals.items()
    )


def _pairs(dim: int, theory: str):
    if theory == LIE:
        return [(i, j) for i in range(1, dim + 1) for j in range(i + 1, dim + 1)]
    return [(i, j) for i in range(1, dim + 1) for j in range(1, dim + 1)]


def _bracket_lines(table, dim: int, theory: str) -> list[str]:
    return [f"[e{i},e{j}] = {format_vector(table[(i, j)])}" for i, j in _pairs(dim, theory)]


def _fingerprint(a: AlgebraSpec) -> str:
    return hashlib.sha256(alg.dumps(a).encode("utf-8")).hexdigest()[:16]


def _load(args) -> AlgebraSpec:
    if args.algebra and args.algebra_file:
        raise UsageError("use only one of --algebra and --algebra-file")
    if args.algebra_file:
        if args.param:
            raise UsageError("--param only applies to --algebra")
        try:
            return alg.load(args.algebra_file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.algebra_file}: {exc.strerror}") from None
        except alg.AlgebraFormatError as exc:
            raise UsageError(f"{args.algebra_file}: {exc}") from None
    if not args.algebra:
        raise UsageError("one of --algebra or --algebra-file is required")
    try:
        return builtin(args.algebra, args.param)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _echo(args) -> str:
    parts = [args.command]
    if args.algebra:
        parts += ["--algebra", args.algebra]
    for p in args.param or []:
        parts += ["--param", p]
    if args.algebra_file:
        parts += ["--algebra-file", args.algebra_file]
    for flag in ("theory", "degree"):
        v = getattr(args, flag, None)
        if v is not None:
            parts += [f"--{flag}", str(v)]
    for flag in ("reps", "pairs"):
        if getattr(args, flag, False):
            parts.append(f"--{flag}")
    return " ".join(parts)


def _basis_note(a: AlgebraSpec, command: str) -> str:
    if command in ("check", "classify"):
        return "structure constants in the given basis, labels e1..en"
    if command == "cohomology":
        return "canonical representatives: cocycles reduced modulo coboundaries, reduced row-echelon order"
    if uses_heisenberg_basis(a):
        return "pinned representatives of H^2(n3): f1..f5, then (e2,e2)->e1, (e3,e2)->e1, (e3,e3)->e1"
    return "canonical representatives: cocycles reduced modulo coboundaries, reduced row-echelon order"


# -- commands --------------------------------------------------------------------


def cmd_check(a: AlgebraSpec, args) -> dict:
    rep = a.identities
    first = lambda d, n: list(d[0][:n]) if d else None  # noqa: E731
    return {
        "lie": rep.is_lie,
        "leibniz": rep.is_leibniz,
        "antisymmetry_fails_at": first(rep.antisymmetry_defect, 2),
        "jacobi_fails_at": first(rep.jacobi_defect, 3),
        "leibniz_fails_at": first(rep.leibniz_defect, 3),
    }


def cmd_cohomology(a: AlgebraSpec, args) -> dict:
    if args.degree not in (1, 2, 3):
        raise UsageError("--degree must be 1, 2 or 3")
    rep = cohomology(a, args.theory, args.degree)
    out = {"theory": args.theory, "degree": args.degree, "Z": rep.dim_Z, "B": rep.dim_B, "H": rep.dim_H}
    if args.reps:
        out["representatives"] = [format_cochain(c) for c in rep.representatives]
    return out


def cmd_versal(a: AlgebraSpec, args) -> dict:
    fd = versal_output(a, args.theory)
    inf = fd.infinitesimal
    corrections = [
        {"pair": f"t{i}*t{j}", "psi": format_cochain(psi, "psi")} for (i, j), psi in sorted(fd.corrections.items())
    ]
    relations = [str(r) for r in fd.relations]
    params = list(inf.parameters)
    return {
        "theory": args.theory,
        "parameters": params,
        "cocycles": [format_cochain(c) for c in inf.cocycles],
        "infinitesimal_bracket": _bracket_lines(inf.bracket(), a.dim, args.theory),
        "corrections": corrections,
        "second_order_bracket": _bracket_lines(fd.bracket(), a.dim, args.theory),
        "relations": relations,
        "base": _base_string(params, relations),
        "notes": list(fd.notes),
    }


def _base_string(params, relations) -> str:
    if not params:
        return "Q"
    ring = f"Q[[{','.join(params)}]]"
    return f"{ring}/<{', '.join(relations)}>" if relations else ring


def cmd_massey(a: AlgebraSpec, args) -> dict:
    m = len(universal_infinitesimal(a, args.theory).cocycles)
    pairs = []
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            sq = massey_square(a, args.theory, i, j)
            if sq.is_obstructed:
                verdict = "obstructed"
            elif sq.cochain.is_zero():
                verdict = "zero"
            else:
                verdict = "coboundary"
            entry = {"pair": [i, j], "verdict": verdict}
            if sq.is_obstructed:
                entry["h3_class"] = [str(x) for x in sq.h3_class]
            pairs.append(entry)
    out = {
        "theory": args.theory,
        "obstructed": [p["pair"] for p in pairs if p["verdict"] == "obstructed"],
        "coboundary": [p["pair"] for p in pairs if p["verdict"] == "coboundary"],
        "diagonal_unobstructed": all(p["verdict"] != "obstructed" for p in pairs if p["pair"][0] == p["pair"][1]),
        "relations": [str(r) for r in base_relations(a, args.theory)],
    }
    if args.pairs:
        out["pairs"] = pairs
    return out


def cmd_classify(a: AlgebraSpec, args) -> dict:
    if a.dim != 3:
        raise PreconditionError(f"classification is only available in dimension 3, got {a.dim}")
    out = {}
    if a.is_lie:
        lc = classify_lie3(a)
        out["lie"] = {"label": lc.label, "description": lc.describe(), "derived_dim": lc.derived_dim,
                      "center_dim": lc.center_dim,
                      "invariant": None if lc.invariant is None else str(lc.invariant)}
    if a.is_leibniz:
        try:
            fp = fingerprint_leibniz3(a)
        except PreconditionError as exc:
            if not a.is_lie:
                raise
            out["leibniz_note"] = str(exc)
        else:
            out["leibniz"] = {
                "match": fp.match, "description": fp.describe(), "lcs_dims": list(fp.lcs_dims),
                "is_lie": fp.is_lie, "bilinear_rank": fp.bilinear_rank, "sym_rank": fp.sym_rank,
                "antisym_rank": fp.antisym_rank,
                "j_invariant": None if fp.j_invariant is None else str(fp.j_invariant),
            }
    if not out:
        raise PreconditionError("algebra satisfies neither the Lie nor the Leibniz identity")
    return out


COMMANDS = {
    "check": cmd_check,
    "cohomology": cmd_cohomology,
    "versal": cmd_versal,
    "massey": cmd_massey,
    "classify": cmd_classify,
}


# -- rendering -------------------------------------------------------------------


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _tuple(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}",
             f"algebra: {report['algebra']['name']} (dim {report['algebra']['dim']}, sha256 {report['algebra']['sha256']})"]
    r = report["result"]
    kind = report["command"].split()[0]
    if kind == "check":
        lie = "Lie: yes"
        if not r["lie"]:
            if r["antisymmetry_fails_at"]:
                lie = f"Lie: no (antisymmetry fails at {_tuple(r['antisymmetry_fails_at'])})"
            else:
                lie = f"Lie: no (Jacobi fails at {_tuple(r['jacobi_fails_at'])})"
        leib = "Leibniz: yes" if r["leibniz"] else f"Leibniz: no (fails at {_tuple(r['leibniz_fails_at'])})"
        lines.append(f"{lie}, {leib}")
    elif kind == "cohomology":
        lines.append(f"theory: {r['theory']}, degree: {r['degree']}")
        lines.append(f"Z={r['Z']} B={r['B']} H={r['H']}")
        if "representatives" in r:
            lines.append("representatives:")
            lines += [f"  [{k}] {s}" for k, s in enumerate(r["representatives"], 1)]
    elif kind == "versal":
        lines.append(f"theory: {r['theory']}")
        lines.append("parameters: " + (" ".join(r["parameters"]) or "none"))
        lines += [f"  t{k}: {s}" for k, s in enumerate(r["cocycles"], 1)]
        lines.append("infinitesimal bracket:")
        lines += [f"  {s}" for s in r["infinitesimal_bracket"]]
        if r["corrections"]:
            lines.append("second-order corrections:")
            lines += [f"  {c['pair']}: {c['psi']}" for c in r["corrections"]]
            lines.append("second-order bracket:")
            lines += [f"  {s}" for s in r["second_order_bracket"]]
        else:
            lines.append("second-order corrections: none")
        lines.append("relations:" + ("" if r["relations"] else " none"))
        lines += [f"  {s}" for s in r["relations"]]
        lines.append(f"base: {r['base']}")
        # the basis note is repeated by the closing basis line
        lines += [f"note: {s}" for s in r["notes"] if not s.startswith("basis:")]
    elif kind == "massey":
        lines.append(f"theory: {r['theory']}")
        lines.append("obstructed pairs: " + (" ".join(_tuple(p) for p in r["obstructed"]) or "none"))
        lines.append("coboundary pairs: " + (" ".join(_tuple(p) for p in r["coboundary"]) or "none"))
        lines.append("diagonal pairs: " + ("all unobstructed" if r["diagonal_unobstructed"] else "some obstructed"))
        if "pairs" in r:
            for p in r["pairs"]:
                extra = f", H^3 class ({', '.join(p['h3_class'])})" if "h3_class" in p else ""
                lines.append(f"  {_tuple(p['pair'])}: {p['verdict']}{extra}")
        lines.append("relations:" + ("" if r["relations"] else " none"))
        lines += [f"  {s}" for s in r["relations"]]
    elif kind == "classify":
        if "lie" in r:
            lines.append(r["lie"]["description"])
        if "leibniz" in r:
            fp = r["leibniz"]
            lines.append(("leibniz: " if "lie" in r else "") + fp["description"])
            lines.append(
                f"fingerprint: lcs {fp['lcs_dims']}, lie {_yes(fp['is_lie'])}, bilinear rank {fp['bilinear_rank']}, "
                f"sym rank {fp['sym_rank']}, antisym rank {fp['antisym_rank']}, j {fp['j_invariant']}"
            )
        if "leibniz_note" in r:
            lines.append(f"leibniz: {r['leibniz_note']}")
    lines.append(f"basis: {report['basis']}")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leibniz-deform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theory=False):
        p.add_argument("--algebra", help="catalogue name, e.g. n3, sl2, lambda4, d(2:3)")
        p.add_argument("--algebra-file", help="algebra file (JSON structure constants)")
        p.add_argument("--param", action="append", help="catalogue parameter (repeatable)")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        if theory:
            p.add_argument("--theory", choices=(LIE, LEIBNIZ), required=True)

    common(sub.add_parser("check", help="check the Lie and Leibniz identities"))
    p = sub.add_parser("cohomology", help="dimensions of Z, B, H")
    common(p, theory=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--reps", action="store_true", help="print representative cocycles")
    common(sub.add_parser("versal", help="second-order versal deformation"), theory=True)
    p = sub.add_parser("massey", help="Massey squares and base relations")
    common(p, theory=True)
    p.add_argument("--pairs", action="store_true", help="print the verdict for every pair")
    common(sub.add_parser("classify", help="identify a 3-dimensional algebra"))
    return parser


def run(argv=None) -> tuple[int, str, str]:
    """Run the CLI; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        a = _load(args)
        result = COMMANDS[args.command](a, args)
    except UsageError as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    except PreconditionError as exc:
        return EXIT_PRECONDITION, "", f"error: {exc}\n"
    report = {
        "command": _echo(args),
        "algebra": {"name": a.label(), "dim": a.dim, "sha256": _fingerprint(a)},
        "result": result,
        "basis": _basis_note(a, args.command),
    }
    return 0, render_json(report) if args.json else render_text(report), ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
