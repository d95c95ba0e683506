"""Shared oracles for the test suite, independent of the library paths they check."""

import numpy as np
from scipy.integrate import quad
from scipy.linalg import expm

from stokerlab import lorentz
from stokerlab.polyhedron import CombinatorialType, EmbeddedPolyhedron


def random_isometry(rng, scale=0.5):
    gens = lorentz.so31_basis()
    coeffs = rng.uniform(-scale, scale, 6)
    return expm(sum(c * g for c, g in zip(coeffs, gens)))


def klein_metric_inner(x, u, v):
    """Riemannian metric of the ball model in which chords are geodesics."""
    r2 = float(x @ x)
    return ((1.0 - r2) * float(u @ v) + float(x @ u) * float(x @ v)) / (1.0 - r2) ** 2


def segment_length(p, q):
    """Quadrature of the metric along the straight segment from p to q."""
    d = q - p

    def speed(t):
        return np.sqrt(klein_metric_inner(p + t * d, d, d))

    value, err = quad(speed, 0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert err < 1e-10
    return value


def intrinsic_dihedral_angle(poly, edge):
    """Angle between the faces at an edge midpoint, measured in the Klein
    metric between in-face directions orthogonal to the edge.

    Independent of the plane-normal route used by the library.
    """
    comb = poly.combinatorics
    pos = poly.positions
    fa, fb = comb.edge_faces(edge)
    mid = 0.5 * (pos[edge[0]] + pos[edge[1]])
    tang = pos[edge[1]] - pos[edge[0]]
    tt = klein_metric_inner(mid, tang, tang)

    def into_face(fi):
        face = comb.faces[fi]
        w = next(v for v in face if v not in edge)
        d = pos[w] - mid
        return d - (klein_metric_inner(mid, d, tang) / tt) * tang

    d1 = into_face(fa)
    d2 = into_face(fb)
    c = klein_metric_inner(mid, d1, d2) / np.sqrt(
        klein_metric_inner(mid, d1, d1) * klein_metric_inner(mid, d2, d2)
    )
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def corner_tetrahedron(leg=0.4):
    """Tetrahedron with three mutually orthogonal edges at the origin; the
    three coordinate-plane faces meet pairwise at exactly pi/2."""
    positions = np.array(
        [[0.0, 0.0, 0.0], [leg, 0.0, 0.0], [0.0, leg, 0.0], [0.0, 0.0, leg]]
    )
    faces = [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]]
    return EmbeddedPolyhedron(CombinatorialType(4, faces), positions)


def finite_difference_jacobian(func, x0, step=1e-6):
    """Central differences of a vector function of a flat vector."""
    x0 = np.asarray(x0, dtype=float)
    base = np.asarray(func(x0))
    jac = np.zeros((base.size, x0.size))
    for c in range(x0.size):
        dx = np.zeros_like(x0)
        dx[c] = step
        jac[:, c] = (np.asarray(func(x0 + dx)) - np.asarray(func(x0 - dx))) / (2 * step)
    return jac
