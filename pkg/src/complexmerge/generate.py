"""Synthetic accumulator fixtures: the 2-skeleton of a cuboid grid, exploded into
independent per-face local complexes, moved by a seeded rigid motion and jittered.

Every face is a quad with local vertices ``a, a+u, a+v, a+u+v`` (``u`` before
``v`` in axis order) and local edges ``(1,2), (3,4), (1,3), (2,4)``, oriented
from the first to the second vertex. The face row is ``+e1 - e2 - e3 + e4``.
"""
from __future__ import annotations

import itertools

import numpy as np
from scipy.spatial.transform import Rotation

from .congruence import AccumulatorComplex
from .errors import ParameterError
from .sparse import SignedSparseMatrix
from .vertex import DEFAULT_EPSILON, check_epsilon

_QUAD_EDGES = ((0, 1), (2, 3), (0, 2), (1, 3))
_QUAD_SIGNS = (1, -1, -1, 1)
# plane families in output order: xy, xz, yz
_FAMILIES = ((0, 1), (0, 2), (1, 2))


def grid_counts(p: int, q: int, r: int) -> tuple[int, int, int]:
    """Closed-form vertex, edge and face counts of the p x q x r grid 2-skeleton."""
    v = (p + 1) * (q + 1) * (r + 1)
    e = p * (q + 1) * (r + 1) + q * (p + 1) * (r + 1) + r * (p + 1) * (q + 1)
    f = p * q * (r + 1) + p * r * (q + 1) + q * r * (p + 1)
    return v, e, f


def grid_faces(shape: tuple[int, int, int], spacing=(1.0, 1.0, 1.0)) -> np.ndarray:
    """Corner coordinates of every grid face, shape ``(nfaces, 4, 3)``."""
    shape = tuple(int(s) for s in shape)
    spacing = np.asarray(spacing, dtype=float)
    faces = []
    for u, v in _FAMILIES:
        (w,) = {0, 1, 2} - {u, v}
        ranges = [range(shape[0]), range(shape[1]), range(shape[2])]
        ranges[w] = range(shape[w] + 1)
        # normal axis outermost, then the in-plane axes from slowest to fastest
        for kw in ranges[w]:
            for kv in ranges[v]:
                for ku in ranges[u]:
                    a = np.zeros(3)
                    a[u], a[v], a[w] = ku, kv, kw
                    du, dv = np.eye(3)[u], np.eye(3)[v]
                    faces.append([a, a + du, a + dv, a + du + dv])
    return np.array(faces, dtype=float).reshape(-1, 4, 3) * spacing


def explode(faces: np.ndarray) -> AccumulatorComplex:
    """Give every quad its own four vertex instances, four edges and one face row."""
    nf = len(faces)
    vertices = faces.reshape(-1, 3)
    d0 = []
    d1 = []
    for k in range(nf):
        for j, (a, b) in enumerate(_QUAD_EDGES):
            e = 4 * k + j
            d0.append((e, 4 * k + a, -1))
            d0.append((e, 4 * k + b, 1))
            d1.append((k, e, _QUAD_SIGNS[j]))
    delta0 = SignedSparseMatrix.from_triples(4 * nf, 4 * nf, d0, base=0)
    delta1 = SignedSparseMatrix.from_triples(nf, 4 * nf, d1, base=0)
    return AccumulatorComplex(vertices, delta0, delta1)


def _rigid_motion(rng: np.random.Generator):
    rot = Rotation.random(random_state=rng)
    shift = rng.uniform(-1.0, 1.0, size=3)
    return lambda x: rot.apply(x.reshape(-1, 3)).reshape(x.shape) + shift


def _jitter(rng: np.random.Generator, n: int, magnitude: float) -> np.ndarray:
    """Displacements uniformly distributed in the closed ball of radius ``magnitude``."""
    if magnitude == 0:
        return np.zeros((n, 3))
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return d * (magnitude * rng.uniform(size=(n, 1)) ** (1 / 3))


def make_grid(
    shape=(1, 1, 1),
    spacing=(1.0, 1.0, 1.0),
    jitter: float = 0.0,
    seed: int = 0,
    epsilon: float = DEFAULT_EPSILON,
) -> AccumulatorComplex:
    epsilon = check_epsilon(epsilon)
    shape = tuple(int(s) for s in shape)
    if len(shape) != 3 or min(shape) < 1:
        raise ParameterError(f"grid sizes must be three integers >= 1, got {shape}")
    if not 0 <= jitter < epsilon / 2:
        raise ParameterError(f"jitter must satisfy 0 <= jitter < epsilon/2 = {epsilon / 2!r}, got {jitter!r}")
    if min(spacing) <= 10 * epsilon:
        raise ParameterError(f"minimum edge length {min(spacing)!r} must exceed 10*epsilon = {10 * epsilon!r}")
    rng = np.random.default_rng(seed)
    move = _rigid_motion(rng)
    faces = move(grid_faces(shape, spacing))
    acc = explode(faces)
    verts = acc.vertices + _jitter(rng, len(acc.vertices), jitter)
    return AccumulatorComplex(verts, acc.delta0, acc.delta1)


def make_cube(jitter: float = 0.0, seed: int = 0, epsilon: float = DEFAULT_EPSILON) -> AccumulatorComplex:
    """A single box of random size and attitude, its six faces exploded."""
    rng = np.random.default_rng([seed, 1])
    size = tuple(rng.uniform(0.25, 1.0, size=3))
    return make_grid((1, 1, 1), size, jitter=jitter, seed=seed, epsilon=epsilon)


def parse_grid(text: str) -> tuple[int, int, int]:
    """``"5"`` means 5x5x5; otherwise ``"PxQxR"``."""
    parts = text.lower().split("x")
    try:
        sizes = [int(x) for x in parts]
    except ValueError:
        raise ParameterError(f"bad grid size {text!r}, expected N or PxQxR") from None
    if len(sizes) == 1:
        sizes *= 3
    if len(sizes) != 3 or min(sizes) < 1:
        raise ParameterError(f"bad grid size {text!r}, expected N or PxQxR with sizes >= 1")
    return tuple(sizes)


def all_shapes(values) -> list[tuple[int, int, int]]:
    return list(itertools.product(values, repeat=3))
