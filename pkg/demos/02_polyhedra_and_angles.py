"""Embedded convex polyhedra and their dihedral-angle map.

Because Klein planes are Euclidean planes, a Euclidean polyhedron scaled
into the unit ball is already a hyperbolic polyhedron; only the angle
measurements change.
"""

import numpy as np

from stokerlab import fixtures
from stokerlab.polyhedron import (
    convexity_margins,
    dihedral_angles,
    planarity_residuals,
    validate_combinatorics,
)

for name, build in fixtures.STANDARD.items():
    poly = build(0.3)
    comb = poly.combinatorics
    report = validate_combinatorics(comb)
    print(f"{name}: |V|={report.vertex_count} |E|={report.edge_count} "
          f"|F|={report.face_count} Euler={report.euler_characteristic} "
          f"valid={report.valid}")

# The constraint system: one determinant per extra vertex on a face
# (planarity) and one per face/vertex separation (strict convexity).
cube = fixtures.cube(0.3)
print("\ncube planarity residuals:", np.max(np.abs(planarity_residuals(cube))))
print("cube convexity margin:", convexity_margins(cube).min())

# The regular tetrahedron family: the common dihedral angle drops from the
# flat value arccos(1/3) toward pi/3 as the polyhedron grows.
print("\nscale   common angle   arccos(1/3) - angle")
for scale in (0.01, 0.1, 0.3, 0.5, 0.8):
    angle = dihedral_angles(fixtures.tetrahedron(scale))[0]
    print(f"{scale:5}   {angle:.8f}   {np.arccos(1 / 3) - angle:.2e}")

# Angle tables are indexed by lexicographically sorted vertex pairs.
prism = fixtures.triangular_prism(0.3)
print("\ntriangular prism angles per edge:")
for edge, angle in zip(prism.combinatorics.edges, dihedral_angles(prism)):
    print(f"  edge {edge}: {angle:.6f}")
