"""Constructive angle realization: deform an embedding to target angles.

The solver runs Gauss-Newton on the stacked residual

    [planarity determinants; dihedral angles - target]

over all vertex coordinates.  Each step is the minimum-norm least-squares
solution, which never moves along the 6-dimensional isometry kernel of the
Jacobian; the remaining gauge freedom is removed afterwards by a canonical
frame (vertex 0 at the origin, vertex 1 on the positive x-axis, vertex 2 in
the upper half of the xy-plane).
"""

from dataclasses import dataclass, field

import numpy as np

from . import lorentz
from .config import DEFAULT, Tolerances
from .errors import BallExit, ConvexityLost, DegenerateFrame, NoConvergence
from .polyhedron import (
    EmbeddedPolyhedron,
    convexity_margins,
    dihedral_angles,
    planarity_residuals,
    validate_angle_vector,
)
from .rigidity import angle_jacobian, constraint_jacobian


@dataclass(frozen=True)
class DeformOptions:
    max_iterations: int = 50
    residual_tol: float = 1e-11
    step_damping: float = 1.0      # initial fraction of the Gauss-Newton step
    continuation_steps: int = 1
    trust_radius: float = 0.1      # sup-norm bound on a vertex-coordinate step

    def __post_init__(self):
        if self.max_iterations <= 0 or self.continuation_steps < 1:
            raise ValueError("iteration counts must be positive")
        if self.residual_tol < 1e-14:
            raise ValueError("residual_tol must be at least 1e-14")
        if not 0.0 < self.step_damping <= 1.0:
            raise ValueError("step_damping must lie in (0, 1]")
        if self.trust_radius <= 0.0:
            raise ValueError("trust_radius must be positive")


@dataclass
class DeformResult:
    final: EmbeddedPolyhedron
    iterations_used: int
    residual_history: list = field(default_factory=list)
    planarity_history: list = field(default_factory=list)
    achieved_angles: np.ndarray = None
    gauge: str = ""


def gauge_fix(poly: EmbeddedPolyhedron, tol: Tolerances = DEFAULT) -> EmbeddedPolyhedron:
    """Canonical representative of the orientation-preserving isometry orbit.

    Moves vertex 0 to the origin by a hyperbolic translation, then rotates
    vertex 1 onto the positive x-axis and vertex 2 into the open upper half
    of the xy-plane.  Raises ``DegenerateFrame`` when the first three
    vertices are collinear.
    """
    pos = lorentz.apply_isometry(
        lorentz.translation_to_origin(poly.positions[0], tol), poly.positions, tol
    )
    y1 = pos[1]
    r1 = np.linalg.norm(y1)
    if r1 < tol.frame:
        raise DegenerateFrame("first two vertices coincide")
    rot1 = _rotation_taking(y1 / r1, np.array([1.0, 0.0, 0.0]))
    pos = pos @ rot1.T
    y2 = pos[2]
    rho = np.hypot(y2[1], y2[2])
    if rho < tol.frame:
        raise DegenerateFrame("first three vertices are collinear")
    phi = np.arctan2(y2[2], y2[1])
    c, s = np.cos(-phi), np.sin(-phi)
    rot2 = np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    return poly.with_positions(pos @ rot2.T)


def _rotation_taking(u, v):
    """Rotation matrix carrying unit vector u to unit vector v (Rodrigues)."""
    axis = np.cross(u, v)
    s = np.linalg.norm(axis)
    c = float(u @ v)
    if s < 1e-14:
        if c > 0:
            return np.eye(3)
        # u = -v: rotate by pi about any axis orthogonal to v
        helper = np.array([0.0, 0.0, 1.0]) if abs(v[2]) < 0.9 else np.array([0.0, 1.0, 0.0])
        axis = np.cross(v, helper)
        axis /= np.linalg.norm(axis)
        return 2.0 * np.outer(axis, axis) - np.eye(3)
    k = np.array(
        [[0.0, -axis[2], axis[1]], [axis[2], 0.0, -axis[0]], [-axis[1], axis[0], 0.0]]
    )
    return np.eye(3) + k + k @ k * ((1.0 - c) / (s * s))


def _stacked_residual(poly, target, tol):
    return np.concatenate([planarity_residuals(poly), dihedral_angles(poly, tol) - target])


def _stacked_jacobian(poly, tol):
    return np.vstack([constraint_jacobian(poly), angle_jacobian(poly, tol)])


def realize_angles(poly: EmbeddedPolyhedron, target, opts: DeformOptions = DeformOptions(),
                   tol: Tolerances = DEFAULT) -> DeformResult:
    """Deform an embedding until its dihedral angles match ``target``.

    Parameters
    ----------
    poly : valid convex embedding used as the starting point
    target : per-edge angles in (0, pi), in lexicographic edge order; must be
        close enough to the current angles for local convergence (use
        :func:`continuation_path` for larger moves)
    opts : iteration budget, residual tolerance, damping and trust radius

    Returns a ``DeformResult`` whose ``final`` embedding is gauge-fixed and
    achieves the target within ``opts.residual_tol`` in sup norm.  Raises
    ``NoConvergence``, ``ConvexityLost`` or ``BallExit``; the first suggests
    more continuation steps, the second that the target leaves the convex
    cell.
    """
    comb = poly.combinatorics
    target = validate_angle_vector(target, comb.edge_count)
    current = poly
    residual = _stacked_residual(current, target, tol)
    history = [float(np.max(np.abs(residual)))]
    n_planar = planarity_residuals(poly).size
    planar_history = [float(np.max(np.abs(residual[:n_planar]), initial=0.0))]

    iterations = 0
    while history[-1] > opts.residual_tol:
        if iterations >= opts.max_iterations:
            raise NoConvergence(
                f"residual {history[-1]:.3e} after {iterations} iterations"
            )
        jac = _stacked_jacobian(current, tol)
        step, *_ = np.linalg.lstsq(jac, -residual, rcond=tol.rank_svd)
        damping = opts.step_damping
        while damping * np.max(np.abs(step)) > opts.trust_radius:
            damping *= 0.5
            if damping < 1e-12:
                raise NoConvergence("trust-radius damping underflow")
        new_pos = current.positions + damping * step.reshape(-1, 3)
        if np.max(np.linalg.norm(new_pos, axis=1)) >= 1.0 - tol.ball:
            raise BallExit("a vertex left the unit ball")
        candidate = current.with_positions(new_pos)
        margins = convexity_margins(candidate)
        if margins.size and margins.min() <= 0.0:
            raise ConvexityLost(
                f"convexity margin {margins.min():.3e} crossed zero"
            )
        current = candidate
        residual = _stacked_residual(current, target, tol)
        history.append(float(np.max(np.abs(residual))))
        planar_history.append(float(np.max(np.abs(residual[:n_planar]), initial=0.0)))
        iterations += 1

    final = gauge_fix(current, tol)
    return DeformResult(
        final=final,
        iterations_used=iterations,
        residual_history=history,
        planarity_history=planar_history,
        achieved_angles=dihedral_angles(final, tol),
        gauge="vertex0 at origin, vertex1 on +x, vertex2 in upper xy half-plane",
    )


def continuation_path(poly: EmbeddedPolyhedron, target, n_steps=None,
                      opts: DeformOptions = DeformOptions(),
                      tol: Tolerances = DEFAULT):
    """Chain ``realize_angles`` along a straight segment in angle space.

    Interpolates linearly from the current angles to ``target`` in
    ``n_steps`` waypoints (defaults to ``opts.continuation_steps``), seeding
    each solve with the previous result.  Returns the list of per-waypoint
    results.  Solver errors are re-raised with ``waypoint`` set to the
    failing index and ``results`` holding the completed prefix.
    """
    if n_steps is None:
        n_steps = opts.continuation_steps
    comb = poly.combinatorics
    target = validate_angle_vector(target, comb.edge_count)
    start = dihedral_angles(poly, tol)
    results = []
    current = poly
    for k in range(1, n_steps + 1):
        waypoint = start + (k / n_steps) * (target - start)
        try:
            result = realize_angles(current, waypoint, opts, tol)
        except (NoConvergence, ConvexityLost, BallExit) as exc:
            exc.waypoint = k - 1
            exc.results = results
            raise
        results.append(result)
        current = result.final
    return results
