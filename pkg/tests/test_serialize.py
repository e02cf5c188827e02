"""JSON round trips and the error paths of the file formats."""

import json
from fractions import Fraction

import pytest

from leibhom.algebra import BUILTIN_NAMES, builtin_algebra
from leibhom.serialize import (FormatError, algebra_from_dict,
                               algebra_to_dict, load_algebra, load_morphism,
                               save_algebra)


def test_roundtrip_all_builtins(tmp_path):
    for name in BUILTIN_NAMES:
        A = builtin_algebra(name)
        path = tmp_path / ("%s.json" % name.replace(":", "_"))
        save_algebra(A, str(path))
        B = load_algebra(str(path))
        assert B.name == A.name
        assert B.dim == A.dim
        assert B.basis_names == A.basis_names
        assert B.unit == A.unit
        assert B.products == A.products


def test_dict_roundtrip_preserves_fractions():
    A = builtin_algebra("dual")
    d = algebra_to_dict(A)
    d["table"].append([1, 0, [[1, "2/3"]]])
    d["table"] = [row for row in d["table"] if row[:2] != [1, 0]
                  or row[2] == [[1, "2/3"]]]
    B = algebra_from_dict(d)
    assert B.products[1][0] == ((1, Fraction(2, 3)),)


def test_serialized_dict_is_json_clean():
    d = algebra_to_dict(builtin_algebra("s3"))
    text = json.dumps(d)
    assert algebra_from_dict(json.loads(text)).dim == 6


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.pop("dim"), "dim"),
    (lambda d: d.pop("table"), "table"),
    (lambda d: d.update(unit=["1"]), "unit"),
    (lambda d: d.update(dim="2"), "dim"),
    (lambda d: d.update(basis=["1"]), "basis"),
    (lambda d: d["table"].append([0, 5, []]), "out of range"),
    (lambda d: d["table"].append([0, 0, [[0, "x"]]]), "bad rational"),
    (lambda d: d["table"].append("junk"), "table"),
    (lambda d: d.update(table="junk"), "table"),
])
def test_malformed_algebra_dict_raises(mutate, fragment):
    d = algebra_to_dict(builtin_algebra("dual"))
    mutate(d)
    with pytest.raises(FormatError) as exc:
        algebra_from_dict(d)
    assert fragment in str(exc.value)


def test_float_coefficients_rejected():
    d = algebra_to_dict(builtin_algebra("dual"))
    d["table"].append([1, 1, [[0, 0.5]]])
    with pytest.raises(FormatError):
        algebra_from_dict(d)


def test_load_algebra_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"name": ')
    with pytest.raises(FormatError) as exc:
        load_algebra(str(p))
    assert "JSON" in str(exc.value)


def test_load_algebra_non_object(tmp_path):
    p = tmp_path / "arr.json"
    p.write_text("[1, 2]")
    with pytest.raises(FormatError):
        load_algebra(str(p))


def test_load_morphism_builtin_endpoints(tmp_path):
    p = tmp_path / "aug.json"
    p.write_text(json.dumps({
        "source": "dual",
        "target": "rationals",
        "matrix": [["1", "0"]],
    }))
    f = load_morphism(str(p))
    assert f.source.name == "dual"
    assert f.target.name == "rationals"
    assert f.matrix.entry(0, 0) == 1
    assert f.matrix.entry(0, 1) == 0


def test_load_morphism_inline_algebra(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({
        "source": algebra_to_dict(builtin_algebra("dual")),
        "target": "dual",
        "matrix": [["1", "0"], ["0", "1"]],
    }))
    f = load_morphism(str(p))
    assert f.source.dim == 2 and f.target.dim == 2


def test_load_morphism_shape_mismatch(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({
        "source": "dual", "target": "rationals", "matrix": [["1"]],
    }))
    with pytest.raises(FormatError):
        load_morphism(str(p))
