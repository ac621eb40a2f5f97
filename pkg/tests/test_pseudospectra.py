import json
import math

import numpy as np
import pytest

from ejspec import pseudospectra as ps
from ejspec.errors import DimensionError
from ejspec.operator import OperatorSpec
from ejspec.oracle import resolvent_norm

GRID = dict(dim=120, re_range=(-3, 3, 7), im_range=(-1, 1, 5))


@pytest.fixture(scope="module")
def real_field():
    return ps.field(OperatorSpec.standard(0.6), **GRID)


def test_field_shape_and_values(real_field):
    assert real_field.values.shape == (5, 7)
    z = complex(real_field.re_axis[2], real_field.im_axis[1])
    ref = math.log10(resolvent_norm(OperatorSpec.standard(0.6), z, 120, ps.DEFAULT_TOL, ps.point_seed(0, z)))
    assert real_field.values[1, 2] == ref
    assert real_field.at(z) == ref
    assert not real_field.values.flags.writeable


def test_field_independent_of_threads():
    spec = OperatorSpec.standard(0.3 + 0.5j)
    a = ps.field(spec, threads=1, **GRID)
    b = ps.field(spec, threads=3, **GRID)
    assert np.array_equal(a.values, b.values)


def test_thread_count(monkeypatch):
    monkeypatch.setenv("EJSPEC_THREADS", "3")
    assert ps.thread_count() == 3
    monkeypatch.setenv("EJSPEC_THREADS", "junk")
    assert ps.thread_count() >= 1


def test_real_parameter_is_conjugation_symmetric(real_field):
    assert np.array_equal(real_field.values, real_field.values[::-1])


def test_conjugate_parameter_mirrors_field():
    a = 0.3 + 0.5j
    f = ps.field(OperatorSpec.standard(a), **GRID)
    g = ps.field(OperatorSpec.standard(a.conjugate()), **GRID)
    assert np.allclose(g.values, f.values[::-1], atol=1e-3)


def test_sign_of_parameter_does_not_matter():
    a = 0.3 + 0.5j
    f = ps.field(OperatorSpec.standard(a), **GRID)
    g = ps.field(OperatorSpec.standard(-a), **GRID)
    assert np.array_equal(f.values, g.values)


def test_singular_point_is_infinite():
    f = ps.field(OperatorSpec.standard(0.5), dim=2, re_range=(-1, 1, 3), im_range=(0, 1, 2))
    assert f.values[0, 0] == math.inf and f.values[0, 2] == math.inf
    assert np.isfinite(f.values[0, 1])


def test_grid_count_check():
    with pytest.raises(DimensionError):
        ps.field(OperatorSpec.standard(0.5), dim=10, re_range=(0, 1, 1), im_range=(0, 1, 2))
    with pytest.raises(DimensionError):
        ps.PseudoField((0, 1), (0, 1, 2), np.zeros((2, 2)))


def test_csv_layout(real_field, tmp_path):
    text = ps.emit(real_field, "csv", str(tmp_path / "f.csv"))
    lines = text.splitlines()
    assert lines[0] == "re,im,log10_norm"
    assert len(lines) == 1 + 35
    first = lines[1].split(",")
    assert float(first[0]) == -3 and float(first[1]) == -1
    back = ps.load(str(tmp_path / "f.csv"))
    assert np.array_equal(back.values, real_field.values)


def test_json_round_trip_is_bitwise(tmp_path):
    f = ps.field(OperatorSpec.standard(0.5), dim=2, re_range=(-1, 1, 3), im_range=(0, 1, 2))
    path = tmp_path / "f.json"
    ps.emit(f, "json", str(path))
    doc = json.loads(path.read_text())
    assert doc["values"][0][0] == "inf"
    back = ps.load(str(path))
    assert np.array_equal(back.values, f.values)
    assert back.re_axis == f.re_axis and back.im_axis == f.im_axis
    assert back.meta == f.meta


def test_emit_rejects_unknown_format(real_field):
    with pytest.raises(ValueError):
        ps.emit(real_field, "xml")


def test_dumps():
    assert json.loads(ps.dumps({"z": 1 + 2j, "n": np.int64(3), "x": np.float64(0.1)})) == {"z": [1, 2], "n": 3, "x": 0.1}
    assert ps.dumps(-math.inf) == '"-inf"'
    assert ps.dumps([True, None]) == "[true, null]"


def test_point_seed_depends_on_abs_imag():
    assert ps.point_seed(1, 2 + 3j) == ps.point_seed(1, 2 - 3j)
    assert ps.point_seed(1, 2 + 3j) != ps.point_seed(2, 2 + 3j)
    assert ps.point_seed(1, 0.0 + 0j) == ps.point_seed(1, -0.0 + 0j)
