"""Cocycles, coboundaries and cohomology with adjoint coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import AlgebraSpec, builtin
from .cochains import (
    LEIBNIZ,
    LIE,
    Cochain,
    PreconditionError,
    cochain_space_dim,
    differential,
    to_leibniz,
    to_lie,
)
from .linalg import (
    Matrix,
    SubspaceBasis,
    image_basis,
    kernel_basis,
    reduce_mod_subspace,
    solve,
    span,
    zero_subspace,
)


class NotACocycleError(PreconditionError):
    pass


@dataclass(frozen=True)
class CohomologyReport:
    theory: str
    degree: int
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: tuple[Cochain, ...]
    coboundary_basis: SubspaceBasis
    cocycle_basis: SubspaceBasis


@dataclass(frozen=True)
class ClassReduction:
    canonical: Cochain
    is_coboundary: bool
    coordinates: tuple[Fraction, ...]


def cocycles(a: AlgebraSpec, theory: str, q: int) -> SubspaceBasis:
    return kernel_basis(differential(a, theory, q))


def coboundaries(a: AlgebraSpec, theory: str, q: int) -> SubspaceBasis:
    if q == 0:
        differential(a, theory, 0)  # identity check
        return zero_subspace(cochain_space_dim(theory, a.dim, 0))
    return image_basis(differential(a, theory, q - 1))


@lru_cache(maxsize=128)
def cohomology(a: AlgebraSpec, theory: str, q: int) -> CohomologyReport:
    """Z^q, B^q and a canonical complement of B^q in Z^q.

    Representatives are the RREF basis of the cocycles reduced modulo the
    coboundaries, so each vanishes on every pivot coordinate of B^q.
    """
    if q < 0:
        raise ValueError("degree must be non-negative")
    z = cocycles(a, theory, q)
    b = coboundaries(a, theory, q)
    residues = [reduce_mod_subspace(v, b)[0] for v in z.vectors]
    h = span(residues, z.ambient_dim)
    reps = tuple(Cochain(theory, q, a.dim, v) for v in h.vectors)
    if z.dim - b.dim != h.dim:
        raise AssertionError("coboundaries are not contained in cocycles")
    return CohomologyReport(theory, q, z.dim, b.dim, h.dim, reps, b, z)


def _complement(a: AlgebraSpec, theory: str, q: int) -> SubspaceBasis:
    rep = cohomology(a, theory, q)
    return span((r.coeffs for r in rep.representatives), rep.cocycle_basis.ambient_dim)


def _coerce(c: Cochain, theory: str) -> Cochain:
    if c.theory == theory:
        return c
    return to_leibniz(c) if theory == LEIBNIZ else to_lie(c)


def is_cocycle(a: AlgebraSpec, theory: str, c: Cochain) -> bool:
    c = _coerce(c, theory)
    return not any(differential(a, theory, c.degree).apply(c.coeffs))


def class_reduce(a: AlgebraSpec, theory: str, q: int, c: Cochain) -> ClassReduction:
    """Canonical representative of the class of ``c`` and its coordinates in
    the basis ``cohomology(a, theory, q).representatives``."""
    c = _coerce(c, theory)
    if c.degree != q or c.dim != a.dim:
        raise ValueError(f"expected a degree-{q} cochain on dim {a.dim}")
    if not is_cocycle(a, theory, c):
        raise NotACocycleError("cochain is not a cocycle")
    rep = cohomology(a, theory, q)
    residue, _ = reduce_mod_subspace(c.coeffs, rep.coboundary_basis)
    # representatives are in RREF, so coordinates are read off at their pivots
    h = _complement(a, theory, q)
    coords = tuple(residue[p] for p in h.pivots)
    return ClassReduction(Cochain(theory, q, a.dim, residue), not any(residue), coords)


def coordinates_in_basis(a: AlgebraSpec, theory: str, q: int, c: Cochain,
                         basis: Sequence[Cochain]) -> tuple[Fraction, ...] | None:
    """Coordinates of the class of ``c`` in the classes of ``basis`` (None if outside their span)."""
    b = cohomology(a, theory, q).coboundary_basis
    target = reduce_mod_subspace(_coerce(c, theory).coeffs, b)[0]
    cols = [reduce_mod_subspace(_coerce(x, theory).coeffs, b)[0] for x in basis]
    if not cols:
        return () if not any(target) else None
    return solve(Matrix.from_columns(cols, len(target)), target)


def is_coboundary(a: AlgebraSpec, theory: str, c: Cochain) -> bool:
    c = _coerce(c, theory)
    return cohomology(a, theory, c.degree).coboundary_basis.contains(c.coeffs)


def primitive(a: AlgebraSpec, theory: str, c: Cochain) -> Cochain | None:
    """Some cochain ``g`` of one degree lower with ``d g = c``, or None."""
    c = _coerce(c, theory)
    if c.degree == 0:
        return None if any(c.coeffs) else c
    x = solve(differential(a, theory, c.degree - 1), c.coeffs)
    return None if x is None else Cochain(theory, c.degree - 1, a.dim, x)


def lie_table(catalogue: Sequence[AlgebraSpec] | None = None) -> list[tuple[str, int, int, int]]:
    """(name, dim H^1, dim H^2, dim H^3) for the three-dimensional Lie algebras."""
    if catalogue is None:
        catalogue = [builtin("n3"), builtin("r31"), builtin("d(1:1)"), builtin("d(2:3)"),
                     builtin("d(1:0)"), builtin("d(1:-1)"), builtin("sl2")]
    return [
        (a.label(), *(cohomology(a, LIE, q).dim_H for q in (1, 2, 3)))
        for a in catalogue
    ]


# -- pinned representatives for the Heisenberg algebra ------------------------

_N3_LIE = (
    {(2, 3): {3: 1}},
    {(1, 2): {2: 1}, (1, 3): {3: -1}},
    {(1, 2): {3: 1}},
    {(1, 3): {1: 1}},
    {(1, 3): {2: 1}},
)
_N3_LEIBNIZ_ONLY = (
    {(2, 2): {1: 1}},
    {(3, 2): {1: 1}},
    {(3, 3): {1: 1}},
)


def heisenberg_representatives(theory: str) -> tuple[Cochain, ...]:
    """The fixed H^2 basis of n3 used for parameter names t1, t2, ...

    Lie: f1..f5.  Leibniz: f1..f5 extended antisymmetrically, then the
    cocycles with single values (e2,e2) -> e1, (e3,e2) -> e1, (e3,e3) -> e1.
    """
    lie = tuple(Cochain.from_values(3, v, theory=LIE) for v in _N3_LIE)
    if theory == LIE:
        return lie
    return tuple(to_leibniz(c) for c in lie) + tuple(Cochain.from_values(3, v) for v in _N3_LEIBNIZ_ONLY)


def uses_heisenberg_basis(a: AlgebraSpec) -> bool:
    return a == builtin("n3")


def h2_basis(a: AlgebraSpec, theory: str) -> tuple[Cochain, ...]:
    """Representatives of H^2 used to name deformation parameters."""
    if uses_heisenberg_basis(a):
        return heisenberg_representatives(theory)
    return cohomology(a, theory, 2).representatives
