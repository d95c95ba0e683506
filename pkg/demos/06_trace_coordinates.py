"""Trace coordinates on deformation spaces of link and surface groups.

First-order deformations of a representation modulo conjugation form the
quotient Z^1/B^1; the meridian trace functions give independent coordinates
on it.  For a d-cone-point link the unitary slice has dimension 3d-6 and the
d traces have rank d; for the genus-3 boundary surface of a tube around the
tetrahedron's edge graph the space has dimension 24 and the 6 meridian
traces give 12 independent real coordinates (half-dimensional level sets).

Also exports the surface fixture in the CLI formats under demos/output/.
"""

import pathlib

from stokerlab import fixtures, formats
from stokerlab.repvar import (
    coboundary_space,
    cocycle_space,
    link_representation,
    surface_group_fixture,
    trace_rank,
)

cases = [
    ("tetrahedron vertex", fixtures.tetrahedron(0.3), 0),
    ("square-pyramid apex", fixtures.square_pyramid(0.3), 4),
    ("pentagonal-pyramid apex", fixtures.pentagonal_pyramid(0.3), 5),
]
print("link                       d   unitary h1/rank   full h1/rank")
for label, poly, vertex in cases:
    link = link_representation(poly, vertex)
    rep = link.representation()
    d = len(link.edges)
    loops = [(k,) for k in range(1, d + 1)]
    unitary = trace_rank(rep, link.presentation, loops, restrict_to_unitary=True)
    full = trace_rank(rep, link.presentation, loops)
    print(f"{label:25}  {d}   {unitary.h1_dim:2}/{unitary.rank:<2}            "
          f"{full.h1_dim:2}/{full.rank:<2}")

# The boundary surface of the tetrahedron's edge-graph tube has genus
# |E| - |V| + 1 = 3; its presentation glues the four vertex links along a
# spanning tree and adds one commuting twist per remaining edge.
poly = fixtures.tetrahedron(0.3)
fx = surface_group_fixture(poly)
z = cocycle_space(fx.representation, fx.presentation)
b = coboundary_space(fx.representation)
print(f"\nsurface fixture: genus {fx.genus}, generators "
      f"{fx.presentation.generator_count}, relators {len(fx.presentation.relators)}")
print(f"Z1 = {z.shape[1]}, B1 = {b.shape[1]}, H1 = {z.shape[1] - b.shape[1]} "
      f"(12g - 12 = {12 * fx.genus - 12})")
report = trace_rank(fx.representation, fx.presentation, fx.meridian_loops())
print(f"6 meridian traces: {report.rank} independent real coordinates on H1")

out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)
(out / "k4_surface_presentation.txt").write_text(
    formats.dump_presentation(fx.presentation, fx.meridian_loops())
)
(out / "k4_surface_matrices.json").write_text(formats.dump_matrices(fx.representation))
(out / "tetrahedron.json").write_text(formats.dump_polyhedron(poly))
print(f"\nwrote CLI inputs to {out}/ -- try:")
print("  stokerlab tracerank demos/output/k4_surface_presentation.txt "
      "--matrices demos/output/k4_surface_matrices.json")
