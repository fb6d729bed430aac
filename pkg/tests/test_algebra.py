import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from leibniz_deform import algebra as alg
from leibniz_deform.algebra import (
    AlgebraFormatError,
    AlgebraSpec,
    UnknownAlgebraError,
    builtin,
    change_basis,
    check_leibniz,
    check_lie,
    lower_central_series,
    nilindex,
)

from oracles import random_invertible

DATA = Path(__file__).parent / "data"

LIE_NAMES = ["n3", "r31", "sl2", "d(1:1)", "d(2:3)", "d(1:0)", "d(1:-1)"]
LEIBNIZ_NAMES = ["lambda1", "lambda2", "lambda3", "lambda5", "lambda6"]


def all_builtins():
    out = [builtin(n) for n in LIE_NAMES + LEIBNIZ_NAMES]
    out += [builtin("lambda4", [x]) for x in ("0", "1", "-1/4", "2")]
    out += [builtin("abelian"), builtin("abelian", ["2"])]
    return out


def nonzero(a):
    return {(i + 1, j + 1): {k + 1: c for k, c in enumerate(a.bracket(i, j)) if c}
            for i in range(a.dim) for j in range(a.dim) if any(a.bracket(i, j))}


def test_n3_constants():
    assert nonzero(builtin("n3")) == {(2, 3): {1: 1}, (3, 2): {1: -1}}


def test_lambda5_constants():
    assert nonzero(builtin("lambda5")) == {(2, 2): {1: 1}, (3, 2): {1: 1}, (2, 3): {1: 1}}


def test_lambda4_alpha_zero_constants():
    assert nonzero(builtin("lambda4", ["0"])) == {(2, 2): {1: 1}, (2, 3): {1: 1}}
    assert nonzero(builtin("lambda4", ["2/3"]))[(3, 3)] == {1: Fraction(2, 3)}


def test_bracket_matrix_decoding():
    # columns [e1,e2], [e1,e3], [e2,e3]
    d = nonzero(builtin("d(2:3)"))
    assert (1, 2) not in d
    assert d[(1, 3)] == {1: 2}
    assert d[(2, 3)] == {1: 1, 2: 3}
    assert d[(3, 2)] == {1: -1, 2: -3}
    sl2 = nonzero(builtin("sl2"))
    assert sl2[(1, 2)] == {3: 1} and sl2[(1, 3)] == {2: 1} and sl2[(2, 3)] == {1: 1}


@pytest.mark.parametrize("name", ["lambda1", "n3", "lambda6"])
def test_leibniz_identity_holds(name):
    rep = check_leibniz(builtin(name))
    assert rep.is_leibniz and not rep.leibniz_defect


def test_lie_checks():
    assert check_lie(builtin("n3")).is_lie
    assert check_lie(builtin("sl2")).is_lie
    rep = check_lie(builtin("lambda2"))
    assert not rep.is_lie
    assert rep.antisymmetry_defect[0][:2] == (1, 1)


def test_jacobi_failure_is_reported():
    a = AlgebraSpec.from_lie_brackets(3, {(1, 2): {3: 1}, (1, 3): {1: 1}, (2, 3): {2: 1}})
    rep = check_lie(a)
    assert rep.antisymmetry_defect == ()
    assert rep.jacobi_defect


@pytest.mark.parametrize("a", all_builtins(), ids=lambda a: a.label())
def test_lie_implies_leibniz(a):
    if check_lie(a).is_lie:
        assert not check_leibniz(a).leibniz_defect


def test_lie_implies_leibniz_on_random_basis_changes():
    rng = random.Random(5)
    for name in LIE_NAMES:
        b = change_basis(builtin(name), random_invertible(rng))
        assert b.is_lie and b.is_leibniz


def test_lower_central_series():
    assert lower_central_series(builtin("abelian")) == [3, 0]
    assert nilindex(builtin("abelian")) == 2
    assert lower_central_series(builtin("n3")) == [3, 1, 0]
    assert lower_central_series(builtin("lambda6")) == [3, 2, 1, 0]
    assert lower_central_series(builtin("sl2")) == [3]
    assert nilindex(builtin("sl2")) is None
    assert lower_central_series(builtin("r31")) == [3, 2]


@pytest.mark.parametrize("a", all_builtins(), ids=lambda a: a.label())
def test_lcs_strictly_decreasing(a):
    dims = lower_central_series(a)
    assert all(x > y for x, y in zip(dims, dims[1:]))


@pytest.mark.parametrize("a", all_builtins(), ids=lambda a: a.label())
def test_file_format_round_trip(a):
    again = alg.loads(alg.dumps(a))
    assert again == a
    assert alg.dumps(again) == alg.dumps(a)


@pytest.mark.parametrize("name", ["n3", "r31", "sl2", "lambda1", "lambda2", "lambda3", "lambda5", "lambda6"])
def test_shipped_data_files_match_catalogue(name):
    assert alg.loads(alg.data_file(name)) == builtin(name)


def test_fixture_file_is_f2_deformation():
    a = alg.load(DATA / "f2_deformed_t1.json")
    assert a.is_lie
    assert nonzero(a) == {(1, 2): {2: 1}, (2, 1): {2: -1}, (1, 3): {3: -1}, (3, 1): {3: 1},
                          (2, 3): {1: 1}, (3, 2): {1: -1}}


def test_decimal_rejected_with_path():
    with pytest.raises(AlgebraFormatError, match=r"brackets\[0\]\.terms\[0\]\.c"):
        alg.load(DATA / "half.json")


@pytest.mark.parametrize("doc, where", [
    ({"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": []}, {"i": 1, "j": 2, "terms": []}]}, "duplicate"),
    ({"dim": 3, "brackets": [{"i": 4, "j": 1, "terms": []}]}, r"brackets\[0\]\.i"),
    ({"dim": 0, "brackets": []}, "dim"),
    ({"dim": 3, "brackets": [], "extra": 1}, "unexpected"),
    ({"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 1}]}]}, "terms"),
    ({"dim": 3}, "brackets"),
])
def test_format_errors(doc, where):
    with pytest.raises(AlgebraFormatError, match=where):
        alg.loads(json.dumps(doc))


def test_json_syntax_error_has_position():
    with pytest.raises(AlgebraFormatError, match="line 1, column"):
        alg.loads('{"dim": 3,')


def test_omitted_pairs_are_zero():
    a = alg.loads('{"dim": 2, "brackets": []}')
    assert a.is_abelian


def test_unknown_and_bad_parameters():
    with pytest.raises(UnknownAlgebraError):
        builtin("so3")
    with pytest.raises(ValueError):
        builtin("lambda4")
    with pytest.raises(ValueError):
        builtin("n3", ["1"])
    with pytest.raises(ValueError):
        builtin("lambda4", ["0.5"])


def test_d_family_spellings_agree():
    assert builtin("d", ["2", "3"]) == builtin("d(2:3)")
    assert builtin("d(1/2:1)").label() == "d(1/2:1)"


def test_change_basis_identity_and_inverse():
    from leibniz_deform.linalg import Matrix, inverse
    a = builtin("lambda6")
    assert change_basis(a, Matrix.identity(3)) == a
    p = random_invertible(random.Random(1))
    assert change_basis(change_basis(a, p), inverse(p)) == a
