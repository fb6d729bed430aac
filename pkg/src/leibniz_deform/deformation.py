"""Infinitesimal and second-order (versal) deformations.

Deformation parameters are labelled t1..tm and indexed 1-based in the public
functions, matching the order of :func:`cohomology.h2_basis`.

The second-order obstruction of ``sum_i t_i φ_i`` is written
``sum_{i<=j} t_i t_j Ω_ij`` with ``Ω_ii = [φ_i, φ_i]`` and
``Ω_ij = [φ_i, φ_j] + [φ_j, φ_i]``.  Since ``μ∘μ`` is the negated Leibniz
defect of a bracket ``μ`` and ``[μ_0, ψ] = -δψ``, the ``t_i t_j`` part of the
defect of ``μ_0 + Σ t_i φ_i + Σ t_i t_j ψ_ij`` cancels exactly when
``δψ_ij = Ω_ij / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .algebra import AlgebraSpec
from .cochains import LEIBNIZ, LIE, Cochain, bracket_cochain, graded_bracket, input_tuples, to_leibniz, to_lie
from .cohomology import (
    NotACocycleError,
    class_reduce,
    cohomology,
    h2_basis,
    is_coboundary,
    is_cocycle,
    primitive,
    uses_heisenberg_basis,
)
from .linalg import format_rational, reduce_mod_subspace, span

Monomial = tuple[int, ...]  # sorted 0-based parameter indices; () is the constant


class Poly(dict):
    """Polynomial in t1..tm with rational coefficients, keyed by monomial."""

    def add(self, mono: Monomial, c) -> None:
        c = Fraction(c)
        if not c:
            return
        v = self.get(mono, Fraction(0)) + c
        if v:
            self[mono] = v
        else:
            self.pop(mono, None)

    def degree_part(self, d: int) -> "Poly":
        return Poly({m: c for m, c in self.items() if len(m) == d})

    def __mul__(self, other: "Poly") -> "Poly":
        out = Poly()
        for m1, c1 in self.items():
            for m2, c2 in other.items():
                out.add(tuple(sorted(m1 + m2)), c1 * c2)
        return out

    def truncate(self, max_degree: int) -> "Poly":
        return Poly({m: c for m, c in self.items() if len(m) <= max_degree})


def _mono_key(m: Monomial):
    # parameter terms ordered by index, constant last
    return (0, m) if m else (1, ())


def _mono_str(m: Monomial) -> str:
    return "*".join(f"t{i + 1}" for i in m)


def _term(c: Fraction, m: Monomial) -> tuple[str, str]:
    """(sign, body) of ``c * m``."""
    sign = "-" if c < 0 else "+"
    c = abs(c)
    if not m:
        return sign, format_rational(c)
    return sign, _mono_str(m) if c == 1 else f"{format_rational(c)}*{_mono_str(m)}"


def format_poly(p: Mapping[Monomial, Fraction]) -> str:
    if not p:
        return "0"
    parts = []
    for m in sorted(p, key=_mono_key):
        sign, body = _term(p[m], m)
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def format_vector(coeffs) -> str:
    """Render ``sum_k p_k e_k`` with polynomial coefficients, e.g. ``(t7 - 1) e1 - t1 e3``."""
    pieces = []
    for k, p in enumerate(coeffs):
        if not p:
            continue
        if len(p) == 1:
            ((m, c),) = p.items()
            sign, body = _term(c, m)
            text = f"e{k + 1}" if body == "1" and not m else f"{body} e{k + 1}"
        else:
            sign, text = "+", f"({format_poly(p)}) e{k + 1}"
        if not pieces:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f"{sign} {text}")
    return " ".join(pieces) if pieces else "0"


# -- data types -----------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticRelation:
    """Homogeneous quadratic form; keys are 1-based pairs (i, j) with i <= j."""

    coefficients: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_mapping(cls, coeffs: Mapping[tuple[int, int], object]) -> "QuadraticRelation":
        items = sorted(((tuple(sorted(k)), Fraction(v)) for k, v in coeffs.items() if v), key=lambda kv: kv[0])
        if not items:
            raise ValueError("a relation needs a nonzero coefficient")
        lead = items[0][1]
        return cls(tuple((k, v / lead) for k, v in items))

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coefficients)

    def __str__(self) -> str:
        return format_poly({(i - 1, j - 1): c for (i, j), c in self.coefficients})


@dataclass(frozen=True)
class InfinitesimalDeformation:
    base_algebra: AlgebraSpec
    theory: str
    parameters: tuple[str, ...]
    cocycles: tuple[Cochain, ...]

    def bracket(self) -> dict[tuple[int, int], tuple[Poly, ...]]:
        """``[e_i, e_j]`` (1-based) as coefficient polynomials of e_1..e_n."""
        return _bracket_table(self.base_algebra, self.cocycles, {})


@dataclass(frozen=True)
class FormalDeformation:
    infinitesimal: InfinitesimalDeformation
    corrections: Mapping[tuple[int, int], Cochain]
    relations: tuple[QuadraticRelation, ...]
    notes: tuple[str, ...] = field(default=())

    def bracket(self) -> dict[tuple[int, int], tuple[Poly, ...]]:
        inf = self.infinitesimal
        return _bracket_table(inf.base_algebra, inf.cocycles, self.corrections)


@dataclass(frozen=True)
class MasseySquare:
    cochain: Cochain
    h3_class: tuple[Fraction, ...]
    is_obstructed: bool


def _bracket_table(a: AlgebraSpec, cocycles, corrections) -> dict[tuple[int, int], tuple[Poly, ...]]:
    n = a.dim
    table = {}
    for i in range(n):
        for j in range(n):
            coeffs = [Poly() for _ in range(n)]
            for k, c in enumerate(a.bracket(i, j)):
                coeffs[k].add((), c)
            for p, phi in enumerate(cocycles):
                for k, c in enumerate(phi.at((i, j))):
                    coeffs[k].add((p,), c)
            for (p, r), psi in sorted(corrections.items()):
                for k, c in enumerate(psi.at((i, j))):
                    coeffs[k].add((p - 1, r - 1), c)
            table[(i + 1, j + 1)] = tuple(coeffs)
    return table


# -- operations -------------------------------------------------------------------


def universal_infinitesimal(a: AlgebraSpec, theory: str) -> InfinitesimalDeformation:
    """``[e_i, e_j] + sum_p t_p φ_p(e_i, e_j)`` over a basis φ_p of H^2."""
    basis = h2_basis(a, theory)
    return InfinitesimalDeformation(a, theory, tuple(f"t{p + 1}" for p in range(len(basis))), basis)


def _check_index(basis, i: int):
    if not 1 <= i <= len(basis):
        raise IndexError(f"parameter index {i} out of range 1..{len(basis)}")


def obstruction_cochain(a: AlgebraSpec, theory: str, i: int, j: int) -> Cochain:
    """Ω_ij: ``[φ_i, φ_i]`` on the diagonal, ``[φ_i, φ_j] + [φ_j, φ_i]`` otherwise."""
    basis = h2_basis(a, theory)
    _check_index(basis, i)
    _check_index(basis, j)
    return _obstruction(a, theory, min(i, j), max(i, j))


@lru_cache(maxsize=4096)
def _obstruction(a: AlgebraSpec, theory: str, i: int, j: int) -> Cochain:
    basis = h2_basis(a, theory)
    x, y = to_leibniz(basis[i - 1]), to_leibniz(basis[j - 1])
    omega = graded_bracket(x, y)
    if i != j:
        omega = omega + graded_bracket(y, x)
    return to_lie(omega) if theory == LIE else omega


def massey_square(a: AlgebraSpec, theory: str, i: int, j: int) -> MasseySquare:
    omega = obstruction_cochain(a, theory, i, j)
    red = class_reduce(a, theory, 3, omega)
    return MasseySquare(omega, red.coordinates, not red.is_coboundary)


def _quadratic_monomials(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, m + 1) for j in range(i, m + 1)]


def relation_space(relations) -> "span":
    """The span of quadratic forms, as a subspace of the monomial coordinates t_i t_j (i <= j)."""
    relations = list(relations)
    m = max((j for r in relations for (_, j), _ in r.coefficients), default=0)
    return _relations_span(relations, m)


def _relations_span(relations, m: int):
    monos = _quadratic_monomials(m)
    index = {mono: k for k, mono in enumerate(monos)}
    rows = []
    for r in relations:
        v = [Fraction(0)] * len(monos)
        for pair, c in (r.coefficients if isinstance(r, QuadraticRelation) else r.items()):
            v[index[pair]] = Fraction(c)
        rows.append(v)
    return span(rows, len(monos))


def base_relations(a: AlgebraSpec, theory: str) -> tuple[QuadraticRelation, ...]:
    """Quadratic relations on the base, one per independent H^3 direction hit.

    Returned as the reduced echelon basis of their span in the coordinates
    t_1t_1, t_1t_2, ..., t_mt_m, each normalised to leading coefficient 1.
    """
    m = len(h2_basis(a, theory))
    h3 = cohomology(a, theory, 3).dim_H
    forms = [dict() for _ in range(h3)]
    for i, j in _quadratic_monomials(m):
        sq = massey_square(a, theory, i, j)
        for r, c in enumerate(sq.h3_class):
            if c:
                forms[r][(i, j)] = c
    s = _relations_span([f for f in forms if f], m)
    monos = _quadratic_monomials(m)
    return tuple(
        QuadraticRelation.from_mapping({monos[k]: c for k, c in enumerate(v) if c}) for v in s.vectors
    )


def second_order_correction(a: AlgebraSpec, theory: str, i: int, j: int) -> Cochain | None:
    """ψ with δψ = Ω_ij / 2 when Ω_ij is a coboundary, otherwise None."""
    omega = obstruction_cochain(a, theory, i, j)
    if not is_coboundary(a, theory, omega):
        return None
    return primitive(a, theory, omega.scale(Fraction(1, 2)))


def _coboundary_part_correction(a: AlgebraSpec, theory: str, i: int, j: int) -> Cochain:
    """Correction cancelling the coboundary part of Ω_ij; its class part is
    absorbed by the base relations."""
    omega = obstruction_cochain(a, theory, i, j)
    rep = cohomology(a, theory, 3)
    residue, _ = reduce_mod_subspace(omega.coeffs, rep.coboundary_basis)
    exact = Cochain(theory, 3, a.dim, tuple(x - y for x, y in zip(omega.coeffs, residue)))
    psi = primitive(a, theory, exact.scale(Fraction(1, 2)))
    assert psi is not None
    return psi


TRUNCATION_NOTE = "second-order truncation: third-order Massey products are not computed"


def versal_output(a: AlgebraSpec, theory: str) -> FormalDeformation:
    inf = universal_infinitesimal(a, theory)
    m = len(inf.cocycles)
    corrections = {}
    for i, j in _quadratic_monomials(m):
        psi = _coboundary_part_correction(a, theory, i, j)
        if not psi.is_zero():
            corrections[(i, j)] = psi
    relations = base_relations(a, theory)
    notes = []
    if uses_heisenberg_basis(a):
        notes.append("basis: pinned representatives of H^2(n3)")
    else:
        notes.append("basis: canonical representatives of H^2")
    if relations:
        notes.append(TRUNCATION_NOTE)
    return FormalDeformation(inf, corrections, relations, tuple(notes))


def identity_defect(a: AlgebraSpec, table: Mapping[tuple[int, int], tuple[Poly, ...]],
                    max_degree: int = 2) -> dict[tuple[int, int, int], tuple[Poly, ...]]:
    """Leibniz defect [x,[y,z]] - [[x,y],z] + [[x,z],y] of a polynomial bracket
    table on basis triples, truncated at ``max_degree`` in t; zero entries dropped."""
    n = a.dim

    def br(u, v):
        out = [Poly() for _ in range(n)]
        for i, pu in enumerate(u):
            if not pu:
                continue
            for j, pv in enumerate(v):
                if not pv:
                    continue
                prod = (pu * pv).truncate(max_degree)
                if not prod:
                    continue
                for k, pk in enumerate(table[(i + 1, j + 1)]):
                    for mono, c in (prod * pk).truncate(max_degree).items():
                        out[k].add(mono, c)
        return out

    def unit(i):
        return [Poly({(): Fraction(1)}) if k == i else Poly() for k in range(n)]

    defects = {}
    for x, y, z in input_tuples(LEIBNIZ, n, 3):
        ex, ey, ez = unit(x), unit(y), unit(z)
        lhs = br(ex, list(table[(y + 1, z + 1)]))
        t1 = br(list(table[(x + 1, y + 1)]), ez)
        t2 = br(list(table[(x + 1, z + 1)]), ey)
        d = []
        for p, q, r in zip(lhs, t1, t2):
            acc = Poly(p)
            for mono, c in q.items():
                acc.add(mono, -c)
            for mono, c in r.items():
                acc.add(mono, c)
            d.append(acc)
        if any(d):
            defects[(x + 1, y + 1, z + 1)] = tuple(d)
    return defects


def equivalent_infinitesimals(a: AlgebraSpec, theory: str, phi: Cochain, psi: Cochain) -> bool:
    """True iff the two 2-cocycles define equivalent infinitesimal deformations."""
    for c in (phi, psi):
        if not is_cocycle(a, theory, c):
            raise NotACocycleError("both arguments must be 2-cocycles")
    return is_coboundary(a, theory, _as_theory(phi, theory) - _as_theory(psi, theory))


def _as_theory(c: Cochain, theory: str) -> Cochain:
    return to_leibniz(c) if theory == LEIBNIZ else to_lie(c)


def deformed_algebra(a: AlgebraSpec, cocycle: Cochain, t) -> AlgebraSpec:
    """The bracket ``μ_0 + t φ`` at a fixed rational value of t."""
    phi = to_leibniz(cocycle)
    t = Fraction(t)
    mu = bracket_cochain(a).coeffs
    coeffs = [x + t * y for x, y in zip(mu, phi.coeffs)]
    n = a.dim
    c = [[tuple(coeffs[(i * n + j) * n:(i * n + j + 1) * n]) for j in range(n)] for i in range(n)]
    return AlgebraSpec(n, tuple(tuple(row) for row in c), None)
