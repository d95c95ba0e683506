"""Seed polyhedra used throughout the tests, demos and CLI examples.

Each builder returns an ``EmbeddedPolyhedron`` whose Euclidean coordinates
are scaled into the Klein ball; face lists are counterclockwise viewed from
outside.
"""

import numpy as np

from .config import DEFAULT, Tolerances
from .polyhedron import CombinatorialType, EmbeddedPolyhedron, embed_euclidean

_TETRA_VERTICES = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
)
_TETRA_FACES = [[1, 3, 2], [0, 2, 3], [0, 3, 1], [0, 1, 2]]

_CUBE_VERTICES = np.array(
    [
        [-1.0, -1.0, -1.0],
        [-1.0, -1.0, 1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0],
        [1.0, 1.0, 1.0],
    ]
)
_CUBE_FACES = [
    [4, 6, 7, 5],  # x = +1
    [0, 1, 3, 2],  # x = -1
    [2, 3, 7, 6],  # y = +1
    [0, 4, 5, 1],  # y = -1
    [1, 5, 7, 3],  # z = +1
    [0, 2, 6, 4],  # z = -1
]


def tetrahedron(scale=0.3, tol: Tolerances = DEFAULT) -> EmbeddedPolyhedron:
    """Regular tetrahedron: |V|, |E|, |F| = 4, 6, 4."""
    comb = CombinatorialType(4, _TETRA_FACES)
    return embed_euclidean(comb, _TETRA_VERTICES, scale / np.sqrt(3.0), tol)


def cube(scale=0.3, tol: Tolerances = DEFAULT) -> EmbeddedPolyhedron:
    """Cube: |V|, |E|, |F| = 8, 12, 6."""
    comb = CombinatorialType(8, _CUBE_FACES)
    return embed_euclidean(comb, _CUBE_VERTICES, scale / np.sqrt(3.0), tol)


def triangular_prism(scale=0.3, tol: Tolerances = DEFAULT) -> EmbeddedPolyhedron:
    """Right prism over an equilateral triangle: |V|, |E|, |F| = 6, 9, 5."""
    ring = [(np.cos(2 * np.pi * k / 3), np.sin(2 * np.pi * k / 3)) for k in range(3)]
    verts = [(x, y, -1.0) for x, y in ring] + [(x, y, 1.0) for x, y in ring]
    faces = [
        [0, 2, 1],        # bottom, outward -z
        [3, 4, 5],        # top, outward +z
        [0, 1, 4, 3],
        [1, 2, 5, 4],
        [2, 0, 3, 5],
    ]
    comb = CombinatorialType(6, faces)
    return embed_euclidean(comb, np.array(verts), scale / np.sqrt(2.0), tol)


def pentagonal_pyramid(scale=0.3, tol: Tolerances = DEFAULT) -> EmbeddedPolyhedron:
    """Pyramid over a regular pentagon (apex valence 5): |V|, |E|, |F| = 6, 10, 6."""
    base = [(np.cos(2 * np.pi * k / 5), np.sin(2 * np.pi * k / 5), -0.5) for k in range(5)]
    verts = np.array(base + [(0.0, 0.0, 0.9)])
    faces = [[0, 4, 3, 2, 1]] + [[k, (k + 1) % 5, 5] for k in range(5)]
    comb = CombinatorialType(6, faces)
    return embed_euclidean(comb, verts, scale / np.sqrt(1.25), tol)


def square_pyramid(scale=0.3, apex_height=0.9, tol: Tolerances = DEFAULT) -> EmbeddedPolyhedron:
    """Pyramid over a square: |V|, |E|, |F| = 5, 8, 5."""
    base = [(1.0, 1.0, -0.5), (-1.0, 1.0, -0.5), (-1.0, -1.0, -0.5), (1.0, -1.0, -0.5)]
    verts = np.array(base + [(0.0, 0.0, apex_height)])
    faces = [[0, 3, 2, 1]] + [[k, (k + 1) % 4, 4] for k in range(4)]
    comb = CombinatorialType(5, faces)
    return embed_euclidean(comb, verts, scale / np.sqrt(2.25), tol)


STANDARD = {
    "tetrahedron": tetrahedron,
    "triangular_prism": triangular_prism,
    "cube": cube,
    "pentagonal_pyramid": pentagonal_pyramid,
}
