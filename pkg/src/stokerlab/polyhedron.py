"""Convex polyhedra in the Klein ball and their dihedral-angle map.

A combinatorial type is a closed face-vertex incidence structure; an
embedding supplies Klein coordinates for every vertex.  Because Klein planes
are Euclidean planes, planarity and convexity of an embedding are expressed
by 3x3 determinants in the vertex coordinates:

* planarity: for each face, every vertex beyond the first three anchors is
  coplanar with them (determinant zero);
* convexity: every vertex not on a face lies strictly inside its supporting
  half-space (oriented determinant positive).

Faces are stored counterclockwise as seen from outside, so the cross product
of the first two anchor edges points outward; the convexity determinant
below is oriented to make interior vertices positive.
"""

from dataclasses import dataclass, field

import numpy as np

from . import lorentz
from .config import DEFAULT, Tolerances
from .errors import (
    BallBoundary,
    ConvexityViolation,
    InvalidCombinatorics,
    PlanarityViolation,
)


class CombinatorialType:
    """Face-vertex incidence structure of a closed convex polyhedron.

    Parameters
    ----------
    vertex_count : number of vertices, indexed 0..n-1
    faces : iterable of cyclic vertex-index lists, counterclockwise viewed
        from outside

    Derived data (edges, directed-edge owners, vertex stars) is computed on
    construction; use :func:`validate_combinatorics` for a full diagnostic.
    """

    def __init__(self, vertex_count, faces):
        self.vertex_count = int(vertex_count)
        self.faces = tuple(tuple(int(v) for v in f) for f in faces)
        self.edges = self._collect_edges()
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        self._directed = {}
        for fi, f in enumerate(self.faces):
            for a, b in _cyclic_pairs(f):
                self._directed.setdefault((a, b), fi)
        self._stars = None

    def _collect_edges(self):
        seen = set()
        for f in self.faces:
            for a, b in _cyclic_pairs(f):
                seen.add((min(a, b), max(a, b)))
        return tuple(sorted(seen))

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def face_count(self):
        return len(self.faces)

    def face_of_directed(self, a, b):
        """Index of the face containing the directed edge a -> b."""
        try:
            return self._directed[(a, b)]
        except KeyError:
            raise InvalidCombinatorics(f"no face contains directed edge {a}->{b}") from None

    def edge_faces(self, edge):
        """The two faces adjacent to an undirected edge (a, b) with a < b."""
        a, b = edge
        return self.face_of_directed(a, b), self.face_of_directed(b, a)

    def vertex_star(self, v):
        """Cyclic star at v: (edges, faces) with edge k between faces k-1, k.

        Edges are returned as sorted index pairs and faces as face indices;
        the walk crosses edges using the stored face orientations, so the two
        stars at the ends of an edge traverse its faces in opposite order.
        """
        if self._stars is None:
            self._stars = {}
        if v not in self._stars:
            self._stars[v] = self._walk_star(v)
        return self._stars[v]

    def _walk_star(self, v):
        incident = [fi for fi, f in enumerate(self.faces) if v in f]
        if not incident:
            raise InvalidCombinatorics(f"vertex {v} belongs to no face")
        start = min(incident)
        faces = [start]
        edges = []
        current = start
        for _ in range(len(incident)):
            f = self.faces[current]
            b = f[(f.index(v) + 1) % len(f)]
            edges.append((min(v, b), max(v, b)))
            current = self.face_of_directed(b, v)
            if current == start:
                break
            faces.append(current)
        if len(faces) != len(incident) or len(edges) != len(incident):
            raise InvalidCombinatorics(f"vertex {v} has a disconnected or pinched star")
        # rotate so the star is recorded as: edge k shared by faces[k-1], faces[k]
        edges = edges[-1:] + edges[:-1]
        return tuple(edges), tuple(faces)

    def vertex_valence(self, v):
        return len(self.vertex_star(v)[0])


def _cyclic_pairs(face):
    for i, a in enumerate(face):
        yield a, face[(i + 1) % len(face)]


@dataclass
class CombinatoricsReport:
    """Outcome of the combinatorial validation; ``issues`` is empty when valid."""

    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    issues: list = field(default_factory=list)

    @property
    def valid(self):
        return not self.issues


def validate_combinatorics(comb: CombinatorialType) -> CombinatoricsReport:
    """Check every incidence invariant and itemize violations.

    Verified: index ranges, faces of size >= 3 without repeats, each edge in
    exactly two faces with opposite traversal directions, Euler
    characteristic 2, vertex valences >= 3, single-cycle vertex stars and a
    connected edge graph.  Never raises; failures are listed in the report.
    """
    issues = []
    n = comb.vertex_count
    directed = {}
    for fi, f in enumerate(comb.faces):
        if len(f) < 3:
            issues.append(f"face {fi} has fewer than 3 vertices")
            continue
        if len(set(f)) != len(f):
            issues.append(f"face {fi} repeats a vertex")
        for v in f:
            if not 0 <= v < n:
                issues.append(f"face {fi} references vertex {v} outside 0..{n - 1}")
        for a, b in _cyclic_pairs(f):
            if (a, b) in directed:
                issues.append(
                    f"directed edge {a}->{b} appears in faces {directed[(a, b)]} and {fi}"
                )
            directed[(a, b)] = fi
    for a, b in comb.edges:
        if (a, b) not in directed or (b, a) not in directed:
            issues.append(f"edge {a}-{b} is not shared by two faces with opposite directions")

    euler = n + comb.face_count - comb.edge_count
    if euler != 2:
        issues.append(f"Euler characteristic {euler} != 2")

    adjacency = {v: set() for v in range(n)}
    for a, b in comb.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    for v in range(n):
        if len(adjacency[v]) < 3:
            issues.append(f"vertex {v} has valence {len(adjacency[v])} < 3")
    if n and not issues:
        seen = {0}
        stack = [0]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            issues.append("edge graph is not connected")
        for v in range(n):
            try:
                comb.vertex_star(v)
            except InvalidCombinatorics as exc:
                issues.append(str(exc))
    return CombinatoricsReport(n, comb.edge_count, comb.face_count, euler, issues)


class EmbeddedPolyhedron:
    """A combinatorial type together with Klein coordinates for each vertex."""

    def __init__(self, combinatorics: CombinatorialType, positions):
        self.combinatorics = combinatorics
        self.positions = np.asarray(positions, dtype=float).reshape(combinatorics.vertex_count, 3)

    def with_positions(self, positions):
        return EmbeddedPolyhedron(self.combinatorics, positions)


def _anchor_frame(positions, face):
    a1, a2, a3 = face[0], face[1], face[2]
    base = positions[a1]
    return base, positions[a2] - base, positions[a3] - base


def planarity_residual_index(comb: CombinatorialType):
    """(face index, vertex) pairs indexing the planarity residual vector."""
    idx = []
    for fi, f in enumerate(comb.faces):
        for v in f[3:]:
            idx.append((fi, v))
    return idx


def planarity_residuals(poly: EmbeddedPolyhedron):
    """One anchored determinant per face vertex beyond the first three.

    The residual for (face f, vertex v) is det(a2-a1, a3-a1, x_v-a1) with
    anchors a1, a2, a3 the first three vertices of f in stored order; it
    vanishes exactly when the face is planar.
    """
    pos = poly.positions
    out = []
    for fi, v in planarity_residual_index(poly.combinatorics):
        base, u, w = _anchor_frame(pos, poly.combinatorics.faces[fi])
        out.append(float(np.linalg.det(np.column_stack([u, w, pos[v] - base]))))
    return np.array(out)


def convexity_margin_index(comb: CombinatorialType):
    """(face index, vertex) pairs indexing the convexity margin vector."""
    idx = []
    for fi, f in enumerate(comb.faces):
        members = set(f)
        for v in range(comb.vertex_count):
            if v not in members:
                idx.append((fi, v))
    return idx


def convexity_margins(poly: EmbeddedPolyhedron):
    """Signed determinants separating each vertex from each non-incident face.

    With faces stored counterclockwise from outside, the anchor cross product
    points outward, so the determinant is oriented (anchors taken against the
    stored traversal) to make vertices on the interior side positive.  All
    entries positive means a strictly convex embedding; the minimum entry is
    the convexity margin.
    """
    pos = poly.positions
    out = []
    for fi, v in convexity_margin_index(poly.combinatorics):
        base, u, w = _anchor_frame(pos, poly.combinatorics.faces[fi])
        out.append(float(np.linalg.det(np.column_stack([w, u, pos[v] - base]))))
    return np.array(out)


def interior_point(poly: EmbeddedPolyhedron):
    """Euclidean centroid of the vertices; must be interior to all faces."""
    centroid = poly.positions.mean(axis=0)
    for fi, f in enumerate(poly.combinatorics.faces):
        base, u, w = _anchor_frame(poly.positions, f)
        if np.linalg.det(np.column_stack([w, u, centroid - base])) <= 0:
            raise ConvexityViolation(f"centroid is not interior to face {fi}")
    return centroid


def embed_euclidean(comb: CombinatorialType, euclidean_positions, scale=1.0,
                    tol: Tolerances = DEFAULT) -> EmbeddedPolyhedron:
    """Scale a Euclidean realization into the ball and validate it.

    Klein planes are Euclidean planes, so planarity and convexity of the
    scaled coordinates transfer verbatim to the hyperbolic polyhedron.
    """
    report = validate_combinatorics(comb)
    if not report.valid:
        raise InvalidCombinatorics("; ".join(report.issues))
    positions = scale * np.asarray(euclidean_positions, dtype=float)
    poly = EmbeddedPolyhedron(comb, positions)
    radii = np.linalg.norm(positions, axis=1)
    if radii.size and radii.max() >= 1.0 - tol.ball:
        raise BallBoundary(f"scaled vertex radius {radii.max():.17g} reaches the unit sphere")
    residuals = planarity_residuals(poly)
    if residuals.size and np.max(np.abs(residuals)) > tol.planar:
        raise PlanarityViolation(f"max planarity residual {np.max(np.abs(residuals)):.3e}")
    margins = convexity_margins(poly)
    if margins.size and margins.min() <= tol.convex:
        raise ConvexityViolation(f"minimum convexity margin {margins.min():.3e}")
    return poly


@dataclass
class EmbeddingReport:
    """Embedding diagnostics: ball containment, planarity, convexity."""

    max_radius: float
    max_planarity_residual: float
    min_convexity_margin: float
    issues: list = field(default_factory=list)

    @property
    def valid(self):
        return not self.issues


def validate_embedding(poly: EmbeddedPolyhedron, tol: Tolerances = DEFAULT) -> EmbeddingReport:
    """Non-raising version of the embedding invariants."""
    radii = np.linalg.norm(poly.positions, axis=1)
    max_radius = float(radii.max()) if radii.size else 0.0
    residuals = planarity_residuals(poly)
    max_res = float(np.max(np.abs(residuals))) if residuals.size else 0.0
    margins = convexity_margins(poly)
    min_margin = float(margins.min()) if margins.size else np.inf
    issues = []
    if max_radius >= 1.0 - tol.ball:
        issues.append(f"vertex radius {max_radius:.17g} reaches the unit sphere")
    if max_res > tol.planar:
        issues.append(f"max planarity residual {max_res:.3e} exceeds {tol.planar:.1e}")
    if min_margin <= tol.convex:
        issues.append(f"minimum convexity margin {min_margin:.3e} is not positive")
    return EmbeddingReport(max_radius, max_res, min_margin, issues)


def face_planes(poly: EmbeddedPolyhedron, tol: Tolerances = DEFAULT):
    """Interior-oriented hyperbolic plane of every face (anchored on the
    first three stored vertices).

    The vertex centroid orients the planes; degenerate anchor triples raise
    ``DegenerateFace`` and a centroid sitting on a face plane raises
    ``AmbiguousOrientation``.
    """
    witness = poly.positions.mean(axis=0)
    planes = []
    for f in poly.combinatorics.faces:
        planes.append(
            lorentz.plane_through(
                poly.positions[f[0]], poly.positions[f[1]], poly.positions[f[2]], witness, tol
            )
        )
    return planes


def dihedral_angles(poly: EmbeddedPolyhedron, tol: Tolerances = DEFAULT):
    """Interior dihedral angle of every edge, in lexicographic edge order.

    For an edge between faces with away-from-interior unit normals n, n' the
    angle is pi - arccos(<n, n'>); convex embeddings give values in (0, pi).
    """
    planes = face_planes(poly, tol)
    comb = poly.combinatorics
    angles = np.empty(comb.edge_count)
    for k, e in enumerate(comb.edges):
        fa, fb = comb.edge_faces(e)
        c = lorentz.minkowski_inner(planes[fa].normal, planes[fb].normal)
        angles[k] = np.pi - np.arccos(np.clip(c, -1.0, 1.0))
    return angles


def validate_angle_vector(angles, edge_count):
    """Check a target angle vector: right length, every entry in (0, pi)."""
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (edge_count,):
        raise ValueError(f"expected {edge_count} angles, got shape {angles.shape}")
    if np.any(angles <= 0.0) or np.any(angles >= np.pi):
        raise ValueError("angle entries must lie strictly between 0 and pi")
    return angles
