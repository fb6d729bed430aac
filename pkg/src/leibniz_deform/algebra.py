"""Finite-dimensional algebras given by structure constants.

``constants[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
Storage is 0-based; every user-facing label is 1-based (``e1, e2, ...``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Mapping, Sequence

from .linalg import Matrix, format_rational, inverse, parse_rational, span

Vector = tuple[Fraction, ...]


class AlgebraFormatError(ValueError):
    """Malformed algebra file."""


class UnknownAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    dim: int
    constants: tuple[tuple[Vector, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.dim
        c = self.constants
        if len(c) != n or any(len(row) != n for row in c) or any(len(v) != n for row in c for v in row):
            raise ValueError(f"structure constants must have shape {n}x{n}x{n}")

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                      name: str | None = None) -> "AlgebraSpec":
        """Build from 1-based ``{(i, j): {k: coefficient}}``."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), terms in brackets.items():
            for k, v in terms.items():
                for idx in (i, j, k):
                    if not 1 <= idx <= dim:
                        raise ValueError(f"index {idx} out of range 1..{dim}")
                c[i - 1][j - 1][k - 1] = Fraction(v)
        return cls(dim, _freeze(c), name)

    @classmethod
    def from_lie_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                          name: str | None = None) -> "AlgebraSpec":
        """Like :meth:`from_brackets` but also fills ``[e_j, e_i] = -[e_i, e_j]``."""
        full = dict(brackets)
        for (i, j), terms in brackets.items():
            if (j, i) not in brackets:
                full[(j, i)] = {k: -Fraction(v) for k, v in terms.items()}
        return cls.from_brackets(dim, full, name)

    def bracket(self, i: int, j: int) -> Vector:
        """``[e_i, e_j]`` for 0-based basis indices."""
        return self.constants[i][j]

    def bracket_vectors(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, ck in enumerate(self.constants[i][j]):
                    if ck:
                        out[k] += ab * ck
        return tuple(out)

    def is_abelian(self) -> bool:
        return not any(x for row in self.constants for v in row for x in v)

    @cached_property
    def identities(self) -> "IdentityReport":
        return _identity_report(self)

    @property
    def is_lie(self) -> bool:
        return self.identities.is_lie

    @property
    def is_leibniz(self) -> bool:
        return self.identities.is_leibniz

    def label(self) -> str:
        return self.name or f"algebra(dim {self.dim})"


def _freeze(c) -> tuple:
    return tuple(tuple(tuple(Fraction(x) for x in v) for v in row) for row in c)


@dataclass(frozen=True)
class IdentityReport:
    """Defects are listed with 1-based indices; empty lists mean the identity holds."""

    is_antisymmetric: bool
    antisymmetry_defect: tuple[tuple[int, int, Vector], ...]
    jacobi_defect: tuple[tuple[int, int, int, Vector], ...]
    leibniz_defect: tuple[tuple[int, int, int, Vector], ...]

    @property
    def is_lie(self) -> bool:
        return self.is_antisymmetric and not self.jacobi_defect

    @property
    def is_leibniz(self) -> bool:
        return not self.leibniz_defect


def _identity_report(a: AlgebraSpec) -> IdentityReport:
    n = a.dim
    e = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    br = a.bracket_vectors
    anti = []
    for i in range(n):
        for j in range(i, n):
            d = tuple(x + y for x, y in zip(a.bracket(i, j), a.bracket(j, i)))
            if any(d):
                anti.append((i + 1, j + 1, d))
    jac, leib = [], []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = e[i], e[j], e[k]
                lhs = br(x, a.bracket(j, k))
                t1 = br(a.bracket(i, j), z)
                t2 = br(a.bracket(i, k), y)
                d = tuple(p - q + r for p, q, r in zip(lhs, t1, t2))
                if any(d):
                    leib.append((i + 1, j + 1, k + 1, d))
                if i < j < k:
                    jd = tuple(
                        p + q + r
                        for p, q, r in zip(br(x, a.bracket(j, k)), br(y, a.bracket(k, i)), br(z, a.bracket(i, j)))
                    )
                    if any(jd):
                        jac.append((i + 1, j + 1, k + 1, jd))
    return IdentityReport(not anti, tuple(anti), tuple(jac), tuple(leib))


def check_leibniz(a: AlgebraSpec) -> IdentityReport:
    """Defect at (i,j,k) is [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]."""
    return a.identities


def check_lie(a: AlgebraSpec) -> IdentityReport:
    """Antisymmetry and the Jacobi identity on increasing basis triples."""
    return a.identities


def lower_central_series(a: AlgebraSpec) -> list[int]:
    """Dimensions of L^1 ⊇ L^2 ⊇ ... with L^{k+1} = [L^k, L], up to stabilisation."""
    n = a.dim
    current = span([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)
    dims = [current.dim]
    while current.dim:
        nxt = span(
            [a.bracket_vectors(v, [Fraction(int(j == m)) for m in range(n)]) for v in current.vectors for j in range(n)],
            n,
        )
        if nxt.dim == current.dim:
            break
        current = nxt
        dims.append(current.dim)
    return dims


def nilindex(a: AlgebraSpec) -> int | None:
    """Smallest k with L^k = 0, or None when the algebra is not nilpotent."""
    dims = lower_central_series(a)
    return len(dims) if dims[-1] == 0 else None


def change_basis(a: AlgebraSpec, p: Matrix) -> AlgebraSpec:
    """Structure constants in the basis ``u_j = sum_i p[i, j] e_i``."""
    n = a.dim
    pinv = inverse(p)
    cols = [p.column(j) for j in range(n)]
    c = []
    for i in range(n):
        row = []
        for j in range(n):
            v = a.bracket_vectors(cols[i], cols[j])
            row.append(pinv.apply(v))
        c.append(row)
    return AlgebraSpec(n, _freeze(c), a.name)


# -- catalogue -------------------------------------------------------------
#
# Lie entries decode the 3x3 "bracket matrix" presentation: the columns are
# [e1,e2], [e1,e3], [e2,e3] and row k holds the coefficient of e_k.


def _from_bracket_matrix(rows, name: str) -> AlgebraSpec:
    pairs = [(1, 2), (1, 3), (2, 3)]
    brackets = {}
    for col, pair in enumerate(pairs):
        terms = {k + 1: rows[k][col] for k in range(3) if rows[k][col]}
        if terms:
            brackets[pair] = terms
    return AlgebraSpec.from_lie_brackets(3, brackets, name)


def _d_family(r, s) -> AlgebraSpec:
    r, s = Fraction(r), Fraction(s)
    name = f"d({format_rational(r)}:{format_rational(s)})"
    return _from_bracket_matrix([[0, r, 1], [0, 0, s], [0, 0, 0]], name)


_D_NAME = re.compile(r"^d\(\s*([^:()]+?)\s*:\s*([^:()]+?)\s*\)$")

CATALOGUE = ("n3", "r31", "sl2", "d", "lambda1", "lambda2", "lambda3", "lambda4", "lambda5", "lambda6", "abelian")


def builtin(name: str, params: Sequence | None = None) -> AlgebraSpec:
    """Look up a catalogue algebra.

    ``d`` takes two parameters (or is written ``d(r:s)``), ``lambda4`` takes
    alpha, ``abelian`` optionally takes its dimension (default 3).
    """
    params = [p if isinstance(p, (int, Fraction)) else parse_rational(str(p)) for p in (params or [])]
    m = _D_NAME.match(name)
    if m:
        if params:
            raise ValueError("d(r:s) already carries its parameters")
        return _d_family(parse_rational(m.group(1)), parse_rational(m.group(2)))

    def need(count):
        if len(params) != count:
            raise ValueError(f"algebra {name!r} takes {count} parameter(s), got {len(params)}")

    if name == "n3":
        need(0)
        return _from_bracket_matrix([[0, 0, 1], [0, 0, 0], [0, 0, 0]], "n3")
    if name == "r31":
        need(0)
        return _from_bracket_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]], "r31")
    if name == "sl2":
        need(0)
        return _from_bracket_matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]], "sl2")
    if name == "d":
        need(2)
        return _d_family(*params)
    if name == "abelian":
        if len(params) > 1:
            raise ValueError("abelian takes at most one parameter (its dimension)")
        n = int(params[0]) if params else 3
        if n < 1 or params and Fraction(params[0]) != n:
            raise ValueError(f"abelian dimension must be a positive integer, got {params[0]}")
        return AlgebraSpec.from_brackets(n, {}, f"abelian{n}" if params else "abelian")
    if name == "lambda1":
        need(0)
        return AlgebraSpec.from_brackets(3, {}, "lambda1")
    if name == "lambda2":
        need(0)
        return AlgebraSpec.from_brackets(3, {(1, 1): {2: 1}}, "lambda2")
    if name == "lambda3":
        need(0)
        return AlgebraSpec.from_brackets(3, {(2, 3): {1: 1}, (3, 2): {1: -1}}, "lambda3")
    if name == "lambda4":
        need(1)
        (alpha,) = params
        br = {(2, 2): {1: 1}, (2, 3): {1: 1}}
        if alpha:
            br[(3, 3)] = {1: alpha}
        return AlgebraSpec.from_brackets(3, br, f"lambda4({format_rational(alpha)})")
    if name == "lambda5":
        need(0)
        return AlgebraSpec.from_brackets(3, {(2, 2): {1: 1}, (3, 2): {1: 1}, (2, 3): {1: 1}}, "lambda5")
    if name == "lambda6":
        need(0)
        return AlgebraSpec.from_brackets(3, {(3, 3): {1: 1}, (1, 3): {2: 1}}, "lambda6")
    raise UnknownAlgebraError(f"unknown algebra {name!r}; known: {', '.join(CATALOGUE)}")


# -- file format -----------------------------------------------------------


def to_dict(a: AlgebraSpec) -> dict:
    brackets = []
    for i in range(a.dim):
        for j in range(a.dim):
            terms = [{"k": k + 1, "c": format_rational(c)} for k, c in enumerate(a.bracket(i, j)) if c]
            if terms:
                brackets.append({"i": i + 1, "j": j + 1, "terms": terms})
    return {"dim": a.dim, "brackets": brackets}


def dumps(a: AlgebraSpec) -> str:
    """Canonical serialisation: sorted pairs, zero terms omitted."""
    return json.dumps(to_dict(a), indent=2) + "\n"


def _expect(cond: bool, where: str, msg: str):
    if not cond:
        raise AlgebraFormatError(f"{where}: {msg}")


def from_dict(data, name: str | None = None) -> AlgebraSpec:
    _expect(isinstance(data, dict), "$", "top level must be an object")
    extra = set(data) - {"dim", "brackets"}
    _expect(not extra, "$", f"unexpected field(s) {sorted(extra)}")
    dim = data.get("dim")
    _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1, "dim", "must be a positive integer")
    _expect("brackets" in data, "brackets", "missing field")
    brackets = data["brackets"]
    _expect(isinstance(brackets, list), "brackets", "must be a list")
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for n, entry in enumerate(brackets):
        where = f"brackets[{n}]"
        _expect(isinstance(entry, dict), where, "must be an object")
        extra = set(entry) - {"i", "j", "terms"}
        _expect(not extra, where, f"unexpected field(s) {sorted(extra)}")
        for key in ("i", "j"):
            v = entry.get(key)
            _expect(isinstance(v, int) and not isinstance(v, bool) and 1 <= v <= dim,
                    f"{where}.{key}", f"must be an integer in 1..{dim}")
        pair = (entry["i"], entry["j"])
        _expect(pair not in table, where, f"duplicate bracket ({pair[0]},{pair[1]})")
        terms = entry.get("terms")
        _expect(isinstance(terms, list), f"{where}.terms", "must be a list")
        out: dict[int, Fraction] = {}
        for m, term in enumerate(terms):
            tw = f"{where}.terms[{m}]"
            _expect(isinstance(term, dict) and set(term) == {"k", "c"}, tw, 'must be an object with "k" and "c"')
            k = term["k"]
            _expect(isinstance(k, int) and not isinstance(k, bool) and 1 <= k <= dim, f"{tw}.k",
                    f"must be an integer in 1..{dim}")
            _expect(k not in out, f"{tw}.k", f"duplicate output index {k}")
            try:
                out[k] = parse_rational(term["c"])
            except ValueError as exc:
                raise AlgebraFormatError(f"{tw}.c: {exc}") from None
        table[pair] = out
    return AlgebraSpec.from_brackets(dim, table, name)


def loads(text: str, name: str | None = None) -> AlgebraSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data, name)


def load(path) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stem = str(path).replace("\\", "/").rsplit("/", 1)[-1]
    return loads(text, stem.removesuffix(".json"))


def data_file(name: str) -> str:
    """Text of the shipped data file for a parameter-free catalogue entry."""
    return resources.files("leibniz_deform").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
