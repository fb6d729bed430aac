"""Isomorphism invariants for three-dimensional Lie algebras and nilpotent
Leibniz algebras.  Labels depend only on basis-independent quantities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec, lower_central_series
from .cochains import PreconditionError
from .linalg import Matrix, determinant, kernel_basis, rank, reduce_mod_subspace, span

ABELIAN = "abelian"
N3 = "n3"
R2_PLUS_C = "r2+C"
R3 = "r3"          # d(1:1), ad non-diagonalisable
R31 = "r31"        # ad acts by a scalar
R3_M1 = "r3,-1"    # d(1:-1)
D_FAMILY = "d(r:s)"
SL2 = "sl2"


@dataclass(frozen=True)
class LieClass:
    label: str
    derived_dim: int
    center_dim: int
    invariant: Fraction | None = None  # (tr ad)^2 / det ad on [g,g] for the d-family

    def describe(self) -> str:
        if self.label == N3:
            return "n3 (Heisenberg)"
        if self.label == D_FAMILY:
            return f"d(r:s) family, (r+s)^2/(rs) = {_fmt(self.invariant)}"
        return {R2_PLUS_C: "r2+C (= d(1:0))", R3: "r3 (= d(1:1))", R3_M1: "r3,-1 (= d(1:-1))"}.get(self.label, self.label)


@dataclass(frozen=True)
class LeibnizFingerprint:
    lcs_dims: tuple[int, ...]
    is_lie: bool
    bilinear_rank: int | None
    sym_rank: int | None
    antisym_rank: int | None
    j_invariant: Fraction | None
    match: str

    def describe(self) -> str:
        if self.match == "lambda4":
            alpha = (self.j_invariant + 1) / 4
            return f"lambda4 family, j = {_fmt(self.j_invariant)} (alpha = {_fmt(alpha)})"
        return self.match


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _unit(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(i == j)) for j in range(n)]


def derived_subspace(a: AlgebraSpec):
    n = a.dim
    return span([a.bracket(i, j) for i in range(n) for j in range(n)], n)


def center_dim(a: AlgebraSpec) -> int:
    """Dimension of {x : [x, L] = [L, x] = 0}."""
    n = a.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([a.bracket(i, j)[k] for i in range(n)])
            rows.append([a.bracket(j, i)[k] for i in range(n)])
    return n - rank(Matrix.from_rows(rows, n))


def classify_lie3(a: AlgebraSpec) -> LieClass:
    if a.dim != 3:
        raise PreconditionError(f"expected a 3-dimensional algebra, got dimension {a.dim}")
    if not a.is_lie:
        raise PreconditionError(f"{a.label()} is not a Lie algebra")
    n = 3
    d = derived_subspace(a)
    z = center_dim(a)
    if d.dim == 0:
        return LieClass(ABELIAN, 0, z)
    if d.dim == 3:
        return LieClass(SL2, 3, z)
    if d.dim == 1:
        v = d.vectors[0]
        central = all(not any(a.bracket_vectors(v, _unit(n, j))) for j in range(n))
        return LieClass(N3 if central else R2_PLUS_C, 1, z)
    # dim 2: [g,g] is abelian and ad_x of any x outside it acts invertibly
    x = next(_unit(n, i) for i in range(n) if any(reduce_mod_subspace(_unit(n, i), d)[0]))
    basis = list(d.vectors)
    # coordinates of ad_x(b) in the RREF basis are read at the pivots
    ad = [[a.bracket_vectors(x, b)[p] for b in basis] for p in d.pivots]
    m = Matrix.from_rows(ad)
    tr = m[0, 0] + m[1, 1]
    det = determinant(m)
    if det == 0:
        raise AssertionError("ad_x is singular on a 2-dimensional derived algebra")
    inv = tr * tr / det
    if inv == 4:
        scalar = m[0, 1] == 0 and m[1, 0] == 0 and m[0, 0] == m[1, 1]
        return LieClass(R31 if scalar else R3, 2, z, inv)
    if inv == 0:
        return LieClass(R3_M1, 2, z, inv)
    return LieClass(D_FAMILY, 2, z, inv)


def _form_on(a: AlgebraSpec, target) -> list[list[Fraction]]:
    """Bilinear form L x L -> K given by the coordinate of [e_i, e_j] along a 1-dim target."""
    p = target.pivots[0]
    scale = target.vectors[0][p]
    n = a.dim
    return [[a.bracket(i, j)[p] / scale for j in range(n)] for i in range(n)]


def fingerprint_leibniz3(a: AlgebraSpec) -> LeibnizFingerprint:
    """Invariants of a nilpotent 3-dimensional Leibniz algebra and its match in lambda1..lambda6.

    When L^2 is one-dimensional the bracket is a bilinear form B with values in
    L^2 whose radical contains L^2.  On the 2-dimensional quotient by the
    radical, with B = S + A (symmetric + antisymmetric), j = det(S) / Pf(A)^2 is
    invariant under basis changes and rescaling of L^2; for lambda4(alpha) it
    equals 4*alpha - 1.  Equal j marks a candidate match, not a proof.
    """
    if a.dim != 3:
        raise PreconditionError(f"expected a 3-dimensional algebra, got dimension {a.dim}")
    if not a.is_leibniz:
        raise PreconditionError(f"{a.label()} is not a Leibniz algebra")
    lcs = tuple(lower_central_series(a))
    if lcs[-1] != 0:
        raise PreconditionError(f"not nilpotent: lower central series dims {list(lcs)}")
    is_lie = a.is_lie
    if lcs == (3, 0):
        return LeibnizFingerprint(lcs, is_lie, None, None, None, None, "lambda1")
    if lcs == (3, 2, 1, 0):
        return LeibnizFingerprint(lcs, is_lie, None, None, None, None, "lambda6")
    if lcs != (3, 1, 0):
        return LeibnizFingerprint(lcs, is_lie, None, None, None, None, "unmatched")

    n = a.dim
    b = _form_on(a, derived_subspace(a))
    s = [[(b[i][j] + b[j][i]) / 2 for j in range(n)] for i in range(n)]
    anti = [[(b[i][j] - b[j][i]) / 2 for j in range(n)] for i in range(n)]
    brank = rank(Matrix.from_rows(b))
    srank = rank(Matrix.from_rows(s))
    arank = rank(Matrix.from_rows(anti))

    j_inv = None
    radical = kernel_basis(Matrix.from_rows(b + [list(col) for col in zip(*b)]))
    if radical.dim == 1:
        # complement of the radical spanned by non-pivot unit vectors
        comp = [_unit(n, i) for i in range(n) if i not in radical.pivots]
        bq = [[_apply_form(b, u, v) for v in comp] for u in comp]
        sq = [[(bq[i][k] + bq[k][i]) / 2 for k in range(2)] for i in range(2)]
        pf = (bq[0][1] - bq[1][0]) / 2
        if pf:
            j_inv = determinant(Matrix.from_rows(sq)) / (pf * pf)

    if is_lie:
        match = "lambda3"
    elif arank == 0:
        match = {1: "lambda2", 2: "lambda5"}.get(srank, "unmatched")
    elif j_inv is not None:
        match = "lambda4"
    else:
        match = "unmatched"
    return LeibnizFingerprint(lcs, is_lie, brank, srank, arank, j_inv, match)


def _apply_form(b, u, v) -> Fraction:
    return sum((u[i] * b[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]), Fraction(0))
