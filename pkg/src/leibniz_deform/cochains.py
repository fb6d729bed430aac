"""Cochains with adjoint coefficients and the operations on them.

Coordinate order is frozen: input tuples in lexicographic order (all n^q
tuples for Leibniz cochains, strictly increasing q-tuples for Lie cochains),
with the output component e_1..e_n innermost.  So the flat index of
``(tuple, k)`` is ``tuple_position * n + k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from .algebra import AlgebraSpec
from .linalg import Matrix

LIE = "lie"
LEIBNIZ = "leibniz"
THEORIES = (LIE, LEIBNIZ)


class PreconditionError(ValueError):
    """An input violates the identity or shape a computation requires."""


def _check_theory(theory: str):
    if theory not in THEORIES:
        raise ValueError(f"theory must be one of {THEORIES}, got {theory!r}")


@lru_cache(maxsize=None)
def input_tuples(theory: str, dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    _check_theory(theory)
    if theory == LEIBNIZ:
        return tuple(itertools.product(range(dim), repeat=degree))
    return tuple(itertools.combinations(range(dim), degree))


@lru_cache(maxsize=None)
def _tuple_index(theory: str, dim: int, degree: int) -> dict:
    return {t: i for i, t in enumerate(input_tuples(theory, dim, degree))}


def cochain_space_dim(theory: str, dim: int, degree: int) -> int:
    _check_theory(theory)
    return dim * (dim ** degree if theory == LEIBNIZ else comb(dim, degree))


def _sort_with_sign(t: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    if len(set(t)) != len(t):
        return 0, ()
    return _signature(t), tuple(sorted(t))


@dataclass(frozen=True)
class Cochain:
    """A degree-q multilinear map L^q -> L stored as its flat coordinate vector."""

    theory: str
    degree: int
    dim: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        _check_theory(self.theory)
        expected = cochain_space_dim(self.theory, self.dim, self.degree)
        if len(self.coeffs) != expected:
            raise ValueError(
                f"{self.theory} cochain of degree {self.degree} on dim {self.dim} needs {expected} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @classmethod
    def zero(cls, theory: str, degree: int, dim: int) -> "Cochain":
        return cls(theory, degree, dim, (Fraction(0),) * cochain_space_dim(theory, dim, degree))

    @classmethod
    def from_values(cls, dim: int, values: Mapping[tuple[int, ...], Mapping[int, object]],
                    theory: str = LEIBNIZ, degree: int | None = None) -> "Cochain":
        """Build from 1-based ``{(i, j, ...): {k: coefficient}}``.

        For Lie cochains any ordering of the inputs may be given; the value is
        moved to the increasing tuple with the permutation sign.
        """
        if degree is None:
            if not values:
                raise ValueError("degree is required for an empty value table")
            degree = len(next(iter(values)))
        n = cochain_space_dim(theory, dim, degree)
        out = [Fraction(0)] * n
        index = _tuple_index(theory, dim, degree)
        for t, terms in values.items():
            if len(t) != degree or any(not 1 <= i <= dim for i in t):
                raise ValueError(f"bad input tuple {t}")
            t0 = tuple(i - 1 for i in t)
            sign = 1
            if theory == LIE:
                sign, t0 = _sort_with_sign(t0)
                if sign == 0:
                    raise ValueError(f"Lie cochain value on repeated inputs {t}")
            for k, v in terms.items():
                if not 1 <= k <= dim:
                    raise ValueError(f"output index {k} out of range")
                out[index[t0] * dim + k - 1] = sign * Fraction(v)
        return cls(theory, degree, dim, tuple(out))

    def at(self, t: Sequence[int]) -> tuple[Fraction, ...]:
        """Value on a tuple of 0-based basis indices."""
        n = self.dim
        if self.theory == LIE:
            sign, s = _sort_with_sign(t)
            if sign == 0:
                return (Fraction(0),) * n
            pos = _tuple_index(LIE, n, self.degree)[s] * n
            v = self.coeffs[pos:pos + n]
            return v if sign == 1 else tuple(-x for x in v)
        pos = _tuple_index(LEIBNIZ, n, self.degree)[tuple(t)] * n
        return self.coeffs[pos:pos + n]

    def evaluate(self, args: Sequence[Sequence]) -> tuple[Fraction, ...]:
        """Multilinear value on arbitrary coordinate vectors."""
        out = [Fraction(0)] * self.dim
        supports = [[(i, x) for i, x in enumerate(a) if x] for a in args]
        for combo in itertools.product(*supports):
            scale = Fraction(1)
            for _, x in combo:
                scale *= x
            for k, v in enumerate(self.at(tuple(i for i, _ in combo))):
                if v:
                    out[k] += scale * v
        return tuple(out)

    def values(self) -> dict[tuple[int, ...], tuple[Fraction, ...]]:
        """Nonzero values keyed by 1-based input tuples (stored tuples only)."""
        n = self.dim
        out = {}
        for pos, t in enumerate(input_tuples(self.theory, n, self.degree)):
            v = self.coeffs[pos * n:(pos + 1) * n]
            if any(v):
                out[tuple(i + 1 for i in t)] = v
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        return Cochain(self.theory, self.degree, self.dim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, s) -> "Cochain":
        s = Fraction(s)
        return Cochain(self.theory, self.degree, self.dim, tuple(s * x for x in self.coeffs))

    def _same_space(self, other: "Cochain"):
        if (self.theory, self.degree, self.dim) != (other.theory, other.degree, other.dim):
            raise ValueError("cochains live in different spaces")


def vectorize(c: Cochain) -> tuple[Fraction, ...]:
    return c.coeffs


def devectorize(theory: str, degree: int, dim: int, v: Sequence) -> Cochain:
    return Cochain(theory, degree, dim, tuple(Fraction(x) for x in v))


def basis_cochain(theory: str, degree: int, dim: int, index: int) -> Cochain:
    v = [Fraction(0)] * cochain_space_dim(theory, dim, degree)
    v[index] = Fraction(1)
    return Cochain(theory, degree, dim, tuple(v))


def to_leibniz(c: Cochain) -> Cochain:
    """Antisymmetric extension of a Lie cochain to all input tuples."""
    if c.theory == LEIBNIZ:
        return c
    out = []
    for t in input_tuples(LEIBNIZ, c.dim, c.degree):
        out.extend(c.at(t))
    return Cochain(LEIBNIZ, c.degree, c.dim, tuple(out))


def is_alternating(c: Cochain) -> bool:
    if c.theory == LIE:
        return True
    return to_leibniz(to_lie(c, check=False)) == c


def to_lie(c: Cochain, check: bool = True) -> Cochain:
    """Restrict an alternating Leibniz cochain to increasing tuples."""
    if c.theory == LIE:
        return c
    out = []
    for t in input_tuples(LIE, c.dim, c.degree):
        out.extend(c.at(t))
    lie = Cochain(LIE, c.degree, c.dim, tuple(out))
    if check and to_leibniz(lie) != c:
        raise ValueError("cochain is not alternating")
    return lie


def bracket_cochain(a: AlgebraSpec, theory: str = LEIBNIZ) -> Cochain:
    """The multiplication of ``a`` as a degree-2 cochain."""
    full = Cochain(LEIBNIZ, 2, a.dim, tuple(x for row in a.constants for v in row for x in v))
    return full if theory == LEIBNIZ else to_lie(full)


# -- differentials -----------------------------------------------------------


def _axpy(out: list, s, v):
    if s:
        for k, x in enumerate(v):
            if x:
                out[k] += s * x


def leibniz_coboundary(a: AlgebraSpec, f: Cochain) -> Cochain:
    """δf(x_1..x_{q+1}) = [x_1, f(x_2..)] + Σ_{i≥2} (-1)^i [f(..x̂_i..), x_i]
    + Σ_{i<j} (-1)^{j+1} f(x_1..x_{i-1}, [x_i,x_j], x_{i+1}..x̂_j..)."""
    if f.theory != LEIBNIZ:
        f = to_leibniz(f)
    n, q = a.dim, f.degree
    out = []
    for x in input_tuples(LEIBNIZ, n, q + 1):
        acc = [Fraction(0)] * n
        v = f.at(x[1:])
        for m, s in enumerate(v):
            if s:
                _axpy(acc, s, a.bracket(x[0], m))
        for i in range(2, q + 2):
            v = f.at(x[:i - 1] + x[i:])
            sign = 1 if i % 2 == 0 else -1
            for m, s in enumerate(v):
                if s:
                    _axpy(acc, sign * s, a.bracket(m, x[i - 1]))
        for i in range(1, q + 2):
            for j in range(i + 1, q + 2):
                sign = 1 if (j + 1) % 2 == 0 else -1
                for m, s in enumerate(a.bracket(x[i - 1], x[j - 1])):
                    if s:
                        args = x[:i - 1] + (m,) + x[i:j - 1] + x[j:]
                        _axpy(acc, sign * s, f.at(args))
        out.extend(acc)
    return Cochain(LEIBNIZ, q + 1, n, tuple(out))


def lie_coboundary(a: AlgebraSpec, c: Cochain) -> Cochain:
    """Chevalley–Eilenberg differential with adjoint coefficients:
    dc(g_1..g_{q+1}) = Σ_s (-1)^{s+1} [g_s, c(..ĝ_s..)] + Σ_{s<t} (-1)^{s+t} c([g_s,g_t], ..ĝ_s..ĝ_t..)."""
    if c.theory != LIE:
        c = to_lie(c)
    n, q = a.dim, c.degree
    out = []
    for g in input_tuples(LIE, n, q + 1):
        acc = [Fraction(0)] * n
        for s in range(1, q + 2):
            v = c.at(g[:s - 1] + g[s:])
            sign = 1 if s % 2 else -1
            for m, x in enumerate(v):
                if x:
                    _axpy(acc, sign * x, a.bracket(g[s - 1], m))
        for s in range(1, q + 2):
            for t in range(s + 1, q + 2):
                sign = 1 if (s + t) % 2 == 0 else -1
                rest = tuple(g[i] for i in range(q + 1) if i not in (s - 1, t - 1))
                for m, x in enumerate(a.bracket(g[s - 1], g[t - 1])):
                    if x:
                        _axpy(acc, sign * x, c.at((m,) + rest))
        out.extend(acc)
    return Cochain(LIE, q + 1, n, tuple(out))


def coboundary(a: AlgebraSpec, c: Cochain) -> Cochain:
    return lie_coboundary(a, c) if c.theory == LIE else leibniz_coboundary(a, c)


def _require(a: AlgebraSpec, theory: str):
    _check_theory(theory)
    if theory == LIE and not a.is_lie:
        raise PreconditionError(f"{a.label()} is not a Lie algebra")
    if theory == LEIBNIZ and not a.is_leibniz:
        raise PreconditionError(f"{a.label()} is not a Leibniz algebra")


def _leibniz_matrix(a: AlgebraSpec, q: int) -> Matrix:
    # the formula of leibniz_coboundary with f left symbolic: each output
    # coordinate is a short sum over coordinates of f, so rows are built directly
    n = a.dim
    index = _tuple_index(LEIBNIZ, n, q)
    cols = n * len(index)
    rows = []
    for x in input_tuples(LEIBNIZ, n, q + 1):
        acc = [[Fraction(0)] * cols for _ in range(n)]
        base = index[x[1:]] * n
        for m in range(n):
            for k, c in enumerate(a.bracket(x[0], m)):
                if c:
                    acc[k][base + m] += c
        for i in range(2, q + 2):
            base = index[x[:i - 1] + x[i:]] * n
            sign = 1 if i % 2 == 0 else -1
            for m in range(n):
                for k, c in enumerate(a.bracket(m, x[i - 1])):
                    if c:
                        acc[k][base + m] += sign * c
        for i in range(1, q + 2):
            for j in range(i + 1, q + 2):
                sign = 1 if (j + 1) % 2 == 0 else -1
                for m, c in enumerate(a.bracket(x[i - 1], x[j - 1])):
                    if c:
                        base = index[x[:i - 1] + (m,) + x[i:j - 1] + x[j:]] * n
                        for k in range(n):
                            acc[k][base + k] += sign * c
        rows.extend(acc)
    return Matrix.from_rows(rows, cols)


@lru_cache(maxsize=256)
def differential(a: AlgebraSpec, theory: str, q: int) -> Matrix:
    """Matrix of the degree-q differential C^q -> C^{q+1} in frozen coordinates."""
    if q < 0:
        raise ValueError("degree must be non-negative")
    _require(a, theory)
    n = a.dim
    cols = cochain_space_dim(theory, n, q)
    rows = cochain_space_dim(theory, n, q + 1)
    if theory == LEIBNIZ:
        return _leibniz_matrix(a, q)
    columns = [lie_coboundary(a, basis_cochain(theory, q, n, j)).coeffs for j in range(cols)]
    return Matrix.from_columns(columns, rows)


def lie_differential(a: AlgebraSpec, q: int) -> Matrix:
    return differential(a, LIE, q)


def leibniz_differential(a: AlgebraSpec, q: int) -> Matrix:
    return differential(a, LEIBNIZ, q)


# -- shuffles, circle product, bracket ---------------------------------------


@dataclass(frozen=True)
class Shuffle:
    p: int
    q: int
    sigma: tuple[int, ...]  # images of 1..p+q
    sign: int


def _signature(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def shuffles(p: int, q: int) -> tuple[Shuffle, ...]:
    """All (p,q)-shuffles, ordered lexicographically by (σ(1), ..., σ(p))."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be non-negative")
    letters = range(1, p + q + 1)
    out = []
    for head in itertools.combinations(letters, p):
        tail = tuple(x for x in letters if x not in head)
        sigma = head + tail
        out.append(Shuffle(p, q, sigma, _signature(sigma)))
    return tuple(out)


def _as_leibniz_pair(alpha: Cochain, beta: Cochain) -> tuple[Cochain, Cochain]:
    alpha, beta = to_leibniz(alpha), to_leibniz(beta)
    if alpha.dim != beta.dim:
        raise ValueError("cochains over algebras of different dimension")
    if alpha.degree < 1 or beta.degree < 1:
        raise ValueError("circle product needs cochains of degree at least 1")
    return alpha, beta


def circle_product(alpha: Cochain, beta: Cochain) -> Cochain:
    """α∘β for α of degree p+1 and β of degree q+1, a cochain of degree p+q+1.

    α∘β(x_1..x_{p+q+1}) = Σ_{k=1}^{p+1} (-1)^{q(k-1)} Σ_{σ ∈ Sh(q, p-k+1)} sgn σ
        α(x_1..x_{k-1}, β(x_k, x_{σ(k+1)}..x_{σ(k+q)}), x_{σ(k+q+1)}..x_{σ(p+q+1)})
    where σ permutes the positions k+1..p+q+1.
    """
    alpha, beta = _as_leibniz_pair(alpha, beta)
    p, q, n = alpha.degree - 1, beta.degree - 1, alpha.dim
    terms = []
    for k in range(1, p + 2):
        outer = -1 if (q * (k - 1)) % 2 else 1
        for sh in shuffles(q, p - k + 1):
            pos = [k + s for s in sh.sigma]  # 1-based positions
            terms.append((k, outer * sh.sign, pos[:q], pos[q:]))
    out = []
    for x in input_tuples(LEIBNIZ, n, p + q + 1):
        acc = [Fraction(0)] * n
        for k, sign, inner, after in terms:
            w = beta.at((x[k - 1],) + tuple(x[i - 1] for i in inner))
            head = x[:k - 1]
            tail = tuple(x[i - 1] for i in after)
            for m, s in enumerate(w):
                if s:
                    _axpy(acc, sign * s, alpha.at(head + (m,) + tail))
        out.extend(acc)
    return Cochain(LEIBNIZ, p + q + 1, n, tuple(out))


def graded_bracket(alpha: Cochain, beta: Cochain) -> Cochain:
    """[α,β] = α∘β + (-1)^{pq+1} β∘α for α of degree p+1, β of degree q+1."""
    alpha, beta = _as_leibniz_pair(alpha, beta)
    p, q = alpha.degree - 1, beta.degree - 1
    ab = circle_product(alpha, beta)
    ba = circle_product(beta, alpha)
    return ab + ba if (p * q + 1) % 2 == 0 else ab - ba
