"""Points, planes and isometries of hyperbolic 3-space in the Klein ball.

The library keeps polyhedron vertices in Klein coordinates, where geodesics
and planes look Euclidean, and lifts them to the Minkowski hyperboloid when
metric quantities are needed.
"""

import numpy as np

from stokerlab import lorentz

# A Klein point is any vector of norm < 1.  Its lift lands on the unit
# future hyperboloid of R^{3,1}.
p = np.array([0.6, 0.0, 0.0])
lift = lorentz.klein_lift(p)
print("lift of (0.6, 0, 0):", lift)
print("Minkowski square of the lift:", lorentz.minkowski_inner(lift, lift))

# Hyperbolic distance grows much faster than the Euclidean chord as points
# approach the boundary sphere.
origin = np.zeros(3)
for radius in (0.3, 0.6, 0.9, 0.99):
    q = np.array([radius, 0.0, 0.0])
    print(f"radius {radius:4}: chord {radius:.2f}  hyperbolic "
          f"{lorentz.hyperbolic_distance(origin, q):.4f}")

# Planes are stored by a unit spacelike normal, oriented away from a chosen
# interior witness.
plane = lorentz.plane_through(
    [0.3, 0.0, 0.0], [0.0, 0.3, 0.0], [-0.2, -0.2, 0.0],
    interior_witness=[0.0, 0.0, -0.4],
)
print("normal of the z=0 plane seen from below:", plane.normal)

# The reflection in that plane is a Lorentz involution, and the product of
# two reflections along intersecting planes is an elliptic rotation.
refl = lorentz.reflect(plane)
print("reflection squared deviates from identity by",
      np.max(np.abs(refl @ refl - np.eye(4))))

rot = lorentz.rotation_about_edge(origin, [0.0, 0.0, 0.5], np.pi / 3)
print("rotation trace (should be 2 + 2cos(pi/3) = 3):", np.trace(rot))

# Every isometry lifts to SL(2,C), two-valued; the chosen branch has
# nonnegative real trace, and an elliptic with rotation angle t has lift
# trace 2cos(t/2).
s = lorentz.sl2c_lift(rot)
print("SL(2,C) lift trace:", np.trace(s), "expected", 2 * np.cos(np.pi / 6))

# The lift respects composition up to the double-cover sign.
rot2 = lorentz.rotation_about_edge([0.1, 0.2, 0.0], [0.0, 0.0, 0.3], 1.0)
lhs = lorentz.sl2c_lift(rot @ rot2)
rhs = lorentz.sl2c_lift(rot) @ lorentz.sl2c_lift(rot2)
print("composition defect (up to sign):",
      min(np.linalg.norm(lhs - rhs), np.linalg.norm(lhs + rhs)))
