"""Constructive angle realization: hitting a target angle vector.

Gauss-Newton on [planarity; angles - target] with minimum-norm steps; the
isometry gauge is fixed afterwards so isometric inputs give identical
outputs.
"""

import numpy as np

from stokerlab import fixtures
from stokerlab.deform import DeformOptions, continuation_path, gauge_fix, realize_angles
from stokerlab.errors import BallExit, ConvexityLost
from stokerlab.polyhedron import dihedral_angles, planarity_residuals

rng = np.random.default_rng(7)
poly = fixtures.cube(0.3)
base = dihedral_angles(poly)

# Small random target: converges quadratically in a handful of steps.
target = base + rng.uniform(-1e-3, 1e-3, base.size)
result = realize_angles(poly, target)
print("iterations:", result.iterations_used)
print("residual history:", ["%.2e" % r for r in result.residual_history])
print("angle error:", np.max(np.abs(result.achieved_angles - target)))
print("planarity:", np.max(np.abs(planarity_residuals(result.final))))

# Round trip: returning to the original angles recovers the gauge-fixed
# original vertex positions.
back = realize_angles(result.final, base)
print("round-trip vertex error:",
      np.max(np.abs(back.final.positions - gauge_fix(poly).positions)))

# Larger moves chain the local solves along a straight segment in angle
# space.  Here one cube angle is opened by 0.05 radians.
target = base.copy()
target[0] += 0.05
path = continuation_path(poly, target, n_steps=10)
print("\ncontinuation iterations per waypoint:", [r.iterations_used for r in path])
print("final angle error:", np.max(np.abs(path[-1].achieved_angles - target)))

# Infeasible targets fail loudly, naming the failing waypoint.  Asking a
# regular tetrahedron for angles beyond the flat limit shrinks it through
# zero volume:
tetra = fixtures.tetrahedron(0.3)
try:
    continuation_path(tetra, np.full(6, np.arccos(1 / 3) + 0.05), n_steps=3,
                      opts=DeformOptions(max_iterations=25))
except ConvexityLost as exc:
    print("\nflat-limit target:", type(exc).__name__, "at waypoint", exc.waypoint)

# and asking for nearly ideal angles drives the vertices to the boundary:
try:
    continuation_path(tetra, np.full(6, np.pi / 3 + 1e-3), n_steps=4,
                      opts=DeformOptions(max_iterations=40, trust_radius=0.4))
except BallExit as exc:
    print("near-ideal target:", type(exc).__name__, "at waypoint", exc.waypoint,
          "after", len(exc.results), "completed waypoints")
