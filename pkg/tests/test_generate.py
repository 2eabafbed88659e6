import numpy as np
import pytest

from complexmerge.congruence import chain_congruence
from complexmerge.errors import ParameterError
from complexmerge.generate import grid_counts, make_cube, make_grid, parse_grid


def test_cube_matches_appendix_structure(cube):
    acc = make_cube(seed=42)
    assert acc.counts == (24, 24, 6)
    assert acc.delta0 == cube.delta0
    assert acc.delta1 == cube.delta1
    assert not np.allclose(acc.vertices, cube.vertices)


def test_unit_grid_is_cube_combinatorics(cube):
    acc = make_grid((1, 1, 1), seed=3)
    assert acc.delta0 == cube.delta0 and acc.delta1 == cube.delta1
    assert chain_congruence(acc).counts == (8, 12, 6)


def test_grid_222():
    acc = make_grid((2, 2, 2), seed=0)
    assert acc.counts == (144, 144, 36)
    assert chain_congruence(acc).counts == (27, 54, 36) == grid_counts(2, 2, 2)


def test_rigid_motion_preserves_edge_lengths():
    acc = make_grid((2, 3, 1), spacing=(0.5, 1.0, 2.0), seed=9)
    for idx, _ in acc.delta0.iter_rows():
        length = np.linalg.norm(acc.vertices[idx[0]] - acc.vertices[idx[1]])
        assert min(abs(length - s) for s in (0.5, 1.0, 2.0)) < 1e-12


def test_jitter_bounded():
    eps = 1e-6
    base = make_grid((2, 2, 2), seed=5, epsilon=eps)
    jit = make_grid((2, 2, 2), seed=5, jitter=0.49 * eps, epsilon=eps)
    d = np.linalg.norm(jit.vertices - base.vertices, axis=1)
    assert d.max() <= 0.49 * eps
    assert d.max() > 0


def test_seed_determinism():
    a = make_grid((3, 2, 1), seed=7, jitter=1e-7)
    b = make_grid((3, 2, 1), seed=7, jitter=1e-7)
    c = make_grid((3, 2, 1), seed=8, jitter=1e-7)
    assert np.array_equal(a.vertices, b.vertices)
    assert not np.array_equal(a.vertices, c.vertices)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"shape": (0, 1, 1)},
        {"shape": (1, 1)},
        {"jitter": 5e-7},
        {"jitter": -1e-9},
        {"spacing": (5e-6, 1.0, 1.0)},
        {"epsilon": 0.0},
    ],
)
def test_rejects_parameters(kwargs):
    with pytest.raises(ParameterError):
        make_grid(**kwargs)


@pytest.mark.parametrize("text, shape", [("5", (5, 5, 5)), ("2x3x4", (2, 3, 4)), ("1X1X2", (1, 1, 2))])
def test_parse_grid(text, shape):
    assert parse_grid(text) == shape


@pytest.mark.parametrize("text", ["0", "2x3", "axbxc", "1x1x0", ""])
def test_parse_grid_rejects(text):
    with pytest.raises(ParameterError):
        parse_grid(text)
