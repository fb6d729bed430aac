"""Acceptance criteria, one test per criterion.

Every test records a single PASS/FAIL line (also printed in the terminal
summary) before asserting.  All checks are exact: there is no tolerance.
Run directly with ``python tests/test_acceptance.py`` to get just the lines.
"""

import itertools
import random
import time
from fractions import Fraction

from leibniz_deform.algebra import builtin, change_basis, lower_central_series
from leibniz_deform.classify import classify_lie3, fingerprint_leibniz3
from leibniz_deform.cli import run
from leibniz_deform.cochains import (
    LEIBNIZ,
    LIE,
    Cochain,
    basis_cochain,
    circle_product,
    graded_bracket,
    leibniz_differential,
    lie_differential,
)
from leibniz_deform.cohomology import cohomology, is_cocycle, lie_table
from leibniz_deform.deformation import QuadraticRelation, base_relations, deformed_algebra
from leibniz_deform.linalg import span, subspaces_equal

from oracles import (
    as_function,
    first_order_defect,
    lie_f,
    literal_circle,
    reference_h2_basis,
    random_cochain,
    random_invertible,
    random_rational,
)

RESULTS: dict[int, str] = {}


def record(n: int, title: str, ok: bool, detail: str, started: float):
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail} ({time.perf_counter() - started:.2f}s)"
    RESULTS[n] = line
    print(line)
    return ok


# -- 1 ---------------------------------------------------------------------------


LIE_TABLE = [
    ("n3", (4, 5, 2)), ("r31", (3, 3, 0)), ("d(1:1)", (1, 1, 0)), ("d(2:3)", (1, 1, 0)),
    ("d(1:0)", (2, 1, 0)), ("d(1:-1)", (1, 2, 1)), ("sl2", (0, 0, 0)),
]


def test_criterion_1_lie_cohomology_table():
    t0 = time.perf_counter()
    got = {name: tuple(h) for name, *h in lie_table()}
    bad = [f"{name}: got {got.get(name)}, want {want}" for name, want in LIE_TABLE if got.get(name) != want]
    ok = record(1, "Lie cohomology table (H1,H2,H3)", not bad, "; ".join(bad) or "all 7 rows exact", t0)
    assert ok, bad


# -- 2 ---------------------------------------------------------------------------


def test_criterion_2_leibniz_h2_of_n3():
    t0 = time.perf_counter()
    a = builtin("n3")
    r = cohomology(a, LEIBNIZ, 2)
    dims = (r.dim_Z, r.dim_B, r.dim_H)
    b = list(r.coboundary_basis.vectors)
    ours = span([x.coeffs for x in r.representatives] + b, 27)
    ref = span([x.coeffs for x in reference_h2_basis()] + b, 27)
    same = subspaces_equal(ours, ref)
    ok = record(2, "ZL2/BL2/HL2 of n3 and representative span", dims == (11, 3, 8) and same,
                f"(Z,B,H) = {dims}, spans equal: {same}", t0)
    assert ok


# -- 3 ---------------------------------------------------------------------------


def _rel(*pairs_with_coeffs):
    return QuadraticRelation.from_mapping(dict(pairs_with_coeffs))


EXPECTED_LIE = [_rel(((1, 5), 1)), _rel(((1, 2), 1), ((3, 4), 1))]
EXPECTED_LEIBNIZ = EXPECTED_LIE + [_rel((p, 1)) for p in
                                   [(2, 6), (3, 6), (5, 6), (3, 7), (5, 7), (2, 8), (3, 8), (5, 8)]]


def _span36(relations):
    monos = [(i, j) for i in range(1, 9) for j in range(i, 9)]
    assert len(monos) == 36
    rows = [[r.as_dict().get(m, Fraction(0)) for m in monos] for r in relations]
    return span(rows, 36)


def test_criterion_3_relation_ideals():
    t0 = time.perf_counter()
    a = builtin("n3")
    lie = base_relations(a, LIE)
    leib = base_relations(a, LEIBNIZ)
    lie_ok = subspaces_equal(_span36(lie), _span36(EXPECTED_LIE))
    leib_ok = subspaces_equal(_span36(leib), _span36(EXPECTED_LEIBNIZ))
    detail = (f"Lie {'equal' if lie_ok else 'differs'}: computed {{{', '.join(map(str, lie))}}}; "
              f"Leibniz {'equal' if leib_ok else 'differs'}: computed {len(leib)} relations "
              f"{{{', '.join(map(str, leib))}}}")
    ok = record(3, "second-order relation spans", lie_ok and leib_ok, detail, t0)
    assert lie_ok, f"Lie relation span differs: {[str(r) for r in lie]}"
    assert leib_ok, f"Leibniz relation span differs: {[str(r) for r in leib]}"
    assert ok


# -- 4 ---------------------------------------------------------------------------


LIE_TABLE_V1 = [
    "[e1,e2] = t2 e2 + t3 e3",
    "[e1,e3] = t4 e1 + t5 e2 - t2 e3",
    "[e2,e3] = e1 + t1 e3",
]
LEIBNIZ_TABLE_V = [
    "[e1,e1] = 0",
    "[e1,e2] = t2 e2 + t3 e3",
    "[e1,e3] = t4 e1 + t5 e2 - t2 e3",
    "[e2,e1] = -t2 e2 - t3 e3",
    "[e2,e2] = t6 e1",
    "[e2,e3] = e1 + t1 e3",
    "[e3,e1] = -t4 e1 - t5 e2 + t2 e3",
    "[e3,e2] = (t7 - 1) e1 - t1 e3",
    "[e3,e3] = t8 e1",
]


def _bracket_block(out: str) -> list[str]:
    block = out.split("infinitesimal bracket:\n", 1)[1]
    lines = []
    for line in block.splitlines():
        if not line.startswith("  "):
            break
        lines.append(line.strip())
    return lines


def test_criterion_4_versal_bracket_tables():
    t0 = time.perf_counter()
    code_l, out_l, _ = run(["versal", "--algebra", "n3", "--theory", "lie"])
    code_b, out_b, _ = run(["versal", "--algebra", "n3", "--theory", "leibniz"])
    lie_ok = code_l == 0 and _bracket_block(out_l) == LIE_TABLE_V1
    leib_ok = code_b == 0 and _bracket_block(out_b) == LEIBNIZ_TABLE_V
    ok = record(4, "versal bracket tables for n3", lie_ok and leib_ok,
                f"Lie table {'matches' if lie_ok else 'differs'}, Leibniz table {'matches' if leib_ok else 'differs'}",
                t0)
    assert ok, (_bracket_block(out_l), _bracket_block(out_b))


# -- 5 ---------------------------------------------------------------------------


def test_criterion_5_deformation_rays():
    t0 = time.perf_counter()
    want = {1: "r2+C", 2: "sl2", 3: "r3,-1", 4: "r2+C", 5: "r3,-1"}
    got = {i: classify_lie3(deformed_algebra(builtin("n3"), lie_f(i), 1)).label for i in want}
    ok = record(5, "classification of the f1..f5 rays at t=1", got == want,
                ", ".join(f"f{i} -> {got[i]}" for i in sorted(got)), t0)
    assert ok, got


# -- 6 ---------------------------------------------------------------------------


LIE_BUILTINS = ["n3", "r31", "sl2", "d(1:1)", "d(2:3)", "d(1:0)", "d(1:-1)", "abelian"]


def _leibniz_builtins():
    out = [builtin(n) for n in LIE_BUILTINS + ["lambda1", "lambda2", "lambda3", "lambda5", "lambda6"]]
    return out + [builtin("lambda4", [x]) for x in ("0", "1", "-1/4", "2")]


def test_criterion_6_property_suite():
    t0 = time.perf_counter()
    failures = []

    # δ∘δ = 0 and d∘d = 0
    squares = 0
    for a in _leibniz_builtins():
        for q in (0, 1, 2):
            squares += 1
            if not (leibniz_differential(a, q + 1) @ leibniz_differential(a, q)).is_zero():
                failures.append(f"δδ≠0 on {a.label()} q={q}")
            if a.is_lie:
                squares += 1
                if not (lie_differential(a, q + 1) @ lie_differential(a, q)).is_zero():
                    failures.append(f"dd≠0 on {a.label()} q={q}")

    # graded antisymmetry on 100 random pairs
    rng = random.Random(6)
    for _ in range(100):
        da, db = rng.randint(1, 3), rng.randint(1, 3)
        x, y = random_cochain(rng, da), random_cochain(rng, db)
        p, q = da - 1, db - 1
        if graded_bracket(x, y) != graded_bracket(y, x).scale(-((-1) ** (p * q))):
            failures.append(f"antisymmetry fails for degrees ({da},{db})")

    # first-order criterion on 50 random bilinear maps over n3
    n3 = builtin("n3")
    z = cohomology(n3, LEIBNIZ, 2).cocycle_basis
    cocycle_hits = 0
    for k in range(50):
        if k % 2 == 0:
            v = [Fraction(0)] * 27
            for b in z.vectors:
                c = random_rational(rng)
                v = [s + c * t for s, t in zip(v, b)]
            phi = Cochain(LEIBNIZ, 2, 3, tuple(v))
        else:
            phi = random_cochain(rng, 2, density=0.3)
        expanded = all(c == 0 for c in first_order_defect(phi))
        cocycle = is_cocycle(n3, LEIBNIZ, phi)
        cocycle_hits += cocycle
        if expanded != cocycle:
            failures.append("first-order criterion disagrees with δφ = 0")

    # basis-change invariance, 10 random matrices per algebra
    lie_cases = [builtin(n) for n in LIE_BUILTINS] + [deformed_algebra(n3, lie_f(i), 1) for i in range(1, 6)]
    leib_cases = [a for a in _leibniz_builtins() if lower_central_series(a)[-1] == 0]
    for a in lie_cases:
        ref = classify_lie3(a)
        for _ in range(10):
            if classify_lie3(change_basis(a, random_invertible(rng))) != ref:
                failures.append(f"classify_lie3 not invariant on {a.label()}")
    for a in leib_cases:
        ref = fingerprint_leibniz3(a)
        for _ in range(10):
            if fingerprint_leibniz3(change_basis(a, random_invertible(rng))) != ref:
                failures.append(f"fingerprint not invariant on {a.label()}")

    detail = (f"{squares} square checks, 100 antisymmetry pairs, 50 first-order cases ({cocycle_hits} cocycles), "
              f"{10 * (len(lie_cases) + len(leib_cases))} basis changes")
    if failures:
        detail += "; failures: " + "; ".join(failures[:5])
    ok = record(6, "property suite", not failures, detail, t0)
    assert ok, failures


# -- 7 ---------------------------------------------------------------------------


def test_criterion_7_circle_product_oracle():
    t0 = time.perf_counter()
    basis = [basis_cochain(LEIBNIZ, 2, 3, k) for k in range(27)]
    funcs = [as_function(b) for b in basis]
    mismatches = 0
    checks = 0
    for (x, fx), (y, fy) in itertools.product(zip(basis, funcs), repeat=2):
        ours = circle_product(x, y)
        for t, v in literal_circle(fx, 2, fy, 2, 3).items():
            checks += 1
            if ours.at(t) != v:
                mismatches += 1
    ok = record(7, "circle product against literal expansion", mismatches == 0,
                f"{27 * 27} basis pairs, {checks} input triples, {mismatches} mismatches", t0)
    assert ok


# -- 8 ---------------------------------------------------------------------------


def test_criterion_8_abelian_sanity():
    t0 = time.perf_counter()
    a = builtin("abelian")
    hl2 = cohomology(a, LEIBNIZ, 2).dim_H
    h2 = cohomology(a, LIE, 2).dim_H
    ok = record(8, "abelian dimension 3", (hl2, h2) == (27, 9), f"HL2 = {hl2}, H2 = {h2}", t0)
    assert ok


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
