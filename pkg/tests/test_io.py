import json

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from complexmerge import io
from complexmerge.congruence import QuotientComplex, chain_congruence
from complexmerge.errors import SchemaError
from complexmerge.generate import make_grid
from complexmerge.sparse import ClassPartition
from conftest import CUBE_EV, CUBE_PATH

MINIMAL = {
    "schema_version": "1.0",
    "vertices": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
    "delta0": {"nrows": 1, "ncols": 2, "triples": [[1, 1, -1], [1, 2, 1]]},
    "delta1": {"nrows": 0, "ncols": 1, "triples": []},
}


def write(tmp_path, obj, name="f.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


def test_load_cube_fixture(cube):
    assert cube.counts == (24, 24, 6)
    assert cube.delta1.nnz == 24


def test_minimal_file(tmp_path):
    acc = io.load_complex(write(tmp_path, MINIMAL))
    assert acc.counts == (2, 1, 0)
    q = chain_congruence(acc)
    assert q.counts == (2, 1, 0)


def mutate(**changes):
    obj = json.loads(json.dumps(MINIMAL))
    for path, value in changes.items():
        *head, last = path.split("__")
        target = obj
        for k in head:
            target = target[k]
        target[last] = value
    return obj


@pytest.mark.parametrize(
    "obj, match",
    [
        (mutate(delta0__ncols=3), "columns but there are 2 vertices"),
        (mutate(delta1__ncols=2), "delta1 has 2 columns"),
        (mutate(delta0__triples=[[1, 1, -1], [1, 2, -1]]), "exactly one -1 and one \\+1"),
        (mutate(delta0__triples=[[1, 1, -1], [1, 3, 1]]), "field delta0: .*out of range"),
        (mutate(delta0__triples=[[1, 1, 0], [1, 2, 1]]), "delta0/triples/0"),
        (mutate(extra=1), "Additional properties"),
        (mutate(schema_version="0.9"), "schema_version"),
        (mutate(vertices=[[0.0, 0.0], [1.0, 0.0, 0.0]]), "vertices/0"),
        ({k: v for k, v in MINIMAL.items() if k != "delta1"}, "delta1"),
    ],
)
def test_load_rejects(tmp_path, obj, match):
    with pytest.raises(SchemaError, match=match):
        io.load_complex(write(tmp_path, obj))


def test_json_syntax_error_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "schema_version": "1.0",\n  "vertices": [,]\n}')
    with pytest.raises(SchemaError, match="line 3"):
        io.load_complex(p)


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError, match="cannot read"):
        io.load_complex(tmp_path / "nope.json")


def test_complex_round_trip(cube, tmp_path):
    a = tmp_path / "a.json"
    io.save_complex(cube, a)
    assert a.read_bytes() == CUBE_PATH.read_bytes()
    again = io.load_complex(a)
    assert np.array_equal(again.vertices, cube.vertices)
    assert again.delta0 == cube.delta0 and again.delta1 == cube.delta1


def test_cube_quotient_file(cube, tmp_path):
    p = tmp_path / "q.json"
    io.save_quotient(chain_congruence(cube), p)
    obj = json.loads(p.read_text())
    assert sorted(obj["ev"]) == CUBE_EV
    assert obj["classes"]["vertices"][0] == [1, 9, 17]
    assert obj["source_counts"] == [24, 24, 6]
    assert "delta0" in obj and "signs" in obj


def test_aa_quotient_has_no_deltas(cube, tmp_path):
    p = tmp_path / "q.json"
    io.save_quotient(chain_congruence(cube, engine="aa"), p)
    obj = json.loads(p.read_text())
    assert "delta0" not in obj and "delta1" not in obj and "signs" not in obj
    q = io.load_quotient(p)
    assert q.delta0 is None and q.engine == "aa"


def test_empty_quotient(tmp_path):
    empty = ClassPartition((), 0)
    q = QuotientComplex(np.zeros((0, 3)), [], [], empty, empty, empty, engine="aa")
    p = tmp_path / "e.json"
    io.save_quotient(q, p)
    assert io.load_quotient(p).counts == (0, 0, 0)
    text = p.read_text()
    io.save_quotient(io.load_quotient(p), p)
    assert p.read_text() == text


def test_quotient_schema_is_closed(cube, tmp_path):
    obj = io.quotient_to_dict(chain_congruence(cube))
    obj["note"] = "hi"
    with pytest.raises(SchemaError):
        io.quotient_from_dict(obj)
    obj = io.quotient_to_dict(chain_congruence(cube))
    del obj["signs"]
    with pytest.raises(SchemaError, match="signs"):
        io.quotient_from_dict(obj)


def test_report_file(cube, tmp_path):
    from complexmerge.validation import validate_quotient

    p = tmp_path / "r.json"
    io.save_report(validate_quotient(chain_congruence(cube, engine="aa")), p)
    obj = json.loads(p.read_text())
    assert obj["dd_zero"] == "skipped"
    assert obj["euler"] == {"expected": None, "value": 2}
    assert set(obj) >= {"dd_zero", "euler", "counts", "dropped", "violations"}


def test_float_formatting_is_shortest_round_trip():
    x = 0.1 + 0.2
    text = io.dumps({"v": [[x, 1.0, -0.0]]})
    assert "0.30000000000000004" in text
    assert json.loads(text)["v"][0][0] == x


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(
    st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 2)),
    st.integers(0, 2**32 - 1),
    st.floats(0, 2.4e-7),
    st.sampled_from(["aa", "sparse"]),
)
def test_quotient_round_trip_bytes(tmp_path, shape, seed, jitter, engine):
    q = chain_congruence(make_grid(shape, jitter=jitter, seed=seed), engine=engine)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    io.save_quotient(q, a)
    loaded = io.load_quotient(a)
    io.save_quotient(loaded, b)
    assert a.read_bytes() == b.read_bytes()
    assert np.array_equal(loaded.vertices, q.vertices)
    assert loaded.ev == q.ev and loaded.fe == q.fe
    assert loaded.fclasses == q.fclasses
