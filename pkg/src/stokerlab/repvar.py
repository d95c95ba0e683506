"""Holonomy, cocycles and trace coordinates for polyhedron link groups.

Meridians of polyhedron edges are realized as products of two face-plane
reflections, which makes the cyclic relation around every vertex telescope
exactly; their SL(2,C) lifts satisfy the relation up to the double-cover
sign.  First-order deformations of a representation are generator-indexed
traceless matrices obeying the twisted additivity rule

    u(g h) = u(g) + Ad(rho(g)) u(h),

computed here as real-linear algebra: cocycles are nullspaces of the relator
conditions, coboundaries the image of the conjugation map, and trace
differentials the pairing u, w |-> tr(u(w) rho(w)).
"""

from dataclasses import dataclass, field

import numpy as np

from . import lorentz
from .config import DEFAULT, Tolerances
from .errors import EigenFailure, IndexRange, InvalidCombinatorics
from .polyhedron import EmbeddedPolyhedron, dihedral_angles, face_planes
from .rigidity import numerical_rank, nullspace

_I2 = np.eye(2, dtype=complex)

# Real bases of the coefficient algebras.  Cocycle vectors list, per
# generator, the real coefficients over the chosen basis.
SL2_BASIS = (
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[1j, 0], [0, -1j]], dtype=complex),
    np.array([[0, 1], [0, 0]], dtype=complex),
    np.array([[0, 1j], [0, 0]], dtype=complex),
    np.array([[0, 0], [1, 0]], dtype=complex),
    np.array([[0, 0], [1j, 0]], dtype=complex),
)
SU2_BASIS = (
    np.array([[0, 1j], [1j, 0]], dtype=complex),
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[1j, 0], [0, -1j]], dtype=complex),
)


def algebra_basis(algebra):
    if algebra == "sl2":
        return SL2_BASIS
    if algebra == "su2":
        return SU2_BASIS
    raise ValueError(f"unknown algebra {algebra!r}")


def matrix_from_coords(coords, algebra="sl2"):
    basis = algebra_basis(algebra)
    return sum(float(c) * b for c, b in zip(coords, basis))


def coords_from_matrix(m, algebra="sl2"):
    if algebra == "sl2":
        return np.array([m[0, 0].real, m[0, 0].imag, m[0, 1].real,
                         m[0, 1].imag, m[1, 0].real, m[1, 0].imag])
    return np.array([0.5 * (m[0, 1] + m[1, 0]).imag,
                     0.5 * (m[0, 1] - m[1, 0]).real,
                     m[0, 0].imag])


def flatten_traceless(m):
    """Six real coordinates of a traceless complex 2x2 matrix."""
    return coords_from_matrix(m, "sl2")


@dataclass(frozen=True)
class Presentation:
    """Finite presentation: ``relators`` are words in signed 1-based indices."""

    generator_count: int
    relators: tuple = ()
    sign_strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "relators",
                           tuple(tuple(int(l) for l in r) for r in self.relators))
        for r in self.relators:
            if len(r) == 0:
                raise ValueError("relators must be nonempty words")
            for letter in r:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise IndexRange(f"letter {letter} outside 1..{self.generator_count}")

    @staticmethod
    def punctured_sphere(d):
        """<g_1, ..., g_d | g_1 ... g_d = 1>."""
        return Presentation(d, (tuple(range(1, d + 1)),))


@dataclass
class Representation:
    """Generator images in SL(2,C) (unit determinant 2x2 complex matrices)."""

    images: list

    def __post_init__(self):
        self.images = [np.asarray(m, dtype=complex).reshape(2, 2) for m in self.images]

    @property
    def generator_count(self):
        return len(self.images)


@dataclass
class Cocycle:
    """Traceless generator values; extended to words by twisted additivity."""

    values: list

    def __post_init__(self):
        self.values = [np.asarray(m, dtype=complex).reshape(2, 2) for m in self.values]


def _image(rep: Representation, letter):
    idx = abs(letter) - 1
    if letter == 0 or idx >= len(rep.images):
        raise IndexRange(f"letter {letter} outside 1..{len(rep.images)}")
    m = rep.images[idx]
    return m if letter > 0 else lorentz.sl2_inverse(m)


def evaluate_word(rep: Representation, word):
    """Ordered product of generator images and inverses over the word."""
    out = np.eye(2, dtype=complex)
    for letter in word:
        out = out @ _image(rep, letter)
    return out


def cocycle_extend(u: Cocycle, rep: Representation, word):
    """Value of the cocycle on a word.

    Inverse letters use u(g^-1) = -Ad(rho(g)^-1) u(g); the result is the
    derivative at t = 0 of t |-> rho_t(word) rho(word)^-1 for any deformation
    with rho_t(g) = exp(t u(g)) rho(g).
    """
    acc = np.zeros((2, 2), dtype=complex)
    prefix = _I2
    prefix_inv = _I2
    for letter in word:
        idx = abs(letter) - 1
        if letter == 0 or idx >= len(rep.images):
            raise IndexRange(f"letter {letter} outside 1..{len(rep.images)}")
        g = rep.images[idx]
        if letter > 0:
            val = u.values[idx]
            step = g
        else:
            ginv = lorentz.sl2_inverse(g)
            val = -(ginv @ u.values[idx] @ g)
            step = ginv
        acc = acc + prefix @ val @ prefix_inv
        prefix = prefix @ step
        prefix_inv = lorentz.sl2_inverse(step) @ prefix_inv
    return acc


def coboundary(v, rep: Representation) -> Cocycle:
    """The cocycle g |-> v - Ad(rho(g)) v induced by conjugation along v."""
    v = np.asarray(v, dtype=complex)
    return Cocycle([v - m @ v @ lorentz.sl2_inverse(m) for m in rep.images])


def representation_report(rep: Representation, pres: Presentation,
                          tol: Tolerances = DEFAULT):
    """Determinant defects and signed relator residuals.

    Returns (max |det - 1|, [(sign, residual)] per relator) where residual is
    the Frobenius distance of the relator value to sign * identity.
    """
    det_defect = max(
        (abs(np.linalg.det(m) - 1.0) for m in rep.images), default=0.0
    )
    relator_data = []
    for r in pres.relators:
        w = evaluate_word(rep, r)
        plus = float(np.linalg.norm(w - _I2))
        minus = float(np.linalg.norm(w + _I2))
        sign, residual = (1, plus) if plus <= minus else (-1, minus)
        if pres.sign_strict:
            sign, residual = 1, plus
        relator_data.append((sign, residual))
    return float(det_defect), relator_data


def cocycle_from_vector(vec, generator_count, algebra="sl2"):
    dim = len(algebra_basis(algebra))
    vec = np.asarray(vec, dtype=float).reshape(generator_count, dim)
    return Cocycle([matrix_from_coords(row, algebra) for row in vec])


def _relator_condition_matrix(rep: Representation, pres: Presentation, algebra):
    n = rep.generator_count
    dim = len(algebra_basis(algebra))
    rows = 6 * len(pres.relators)
    mat = np.zeros((rows, n * dim))
    for col in range(n * dim):
        e = np.zeros(n * dim)
        e[col] = 1.0
        u = cocycle_from_vector(e, n, algebra)
        for ri, r in enumerate(pres.relators):
            mat[6 * ri:6 * ri + 6, col] = flatten_traceless(cocycle_extend(u, rep, r))
    return mat


def cocycle_space(rep: Representation, pres: Presentation, algebra="sl2",
                  tol: Tolerances = DEFAULT):
    """Orthonormal basis (columns) of the first-order deformation space.

    Solves the linearized relator conditions over generator assignments with
    values in the chosen coefficient algebra; for a free group the basis is
    the identity on all of them.
    """
    n = rep.generator_count
    dim = len(algebra_basis(algebra))
    if not pres.relators:
        return np.eye(n * dim)
    return nullspace(_relator_condition_matrix(rep, pres, algebra), tol.rank_svd)


def coboundary_space(rep: Representation, algebra="sl2", tol: Tolerances = DEFAULT):
    """Orthonormal basis (columns) of the conjugation-induced deformations.

    The real dimension equals the algebra dimension (6 over SL(2,C)) exactly
    when the representation is irreducible.
    """
    basis = algebra_basis(algebra)
    n = rep.generator_count
    cols = []
    for b in basis:
        cob = coboundary(b, rep)
        cols.append(np.concatenate([coords_from_matrix(v, algebra) for v in cob.values]))
    mat = np.column_stack(cols) if cols else np.zeros((n * len(basis), 0))
    u, sing, _ = np.linalg.svd(mat, full_matrices=False)
    rank = numerical_rank(sing, tol.rank_svd)
    return u[:, :rank]


def cohomology_basis(rep: Representation, pres: Presentation, algebra="sl2",
                     tol: Tolerances = DEFAULT):
    """Orthonormal basis of a complement of the coboundaries inside the
    cocycles; its width is the first-cohomology real dimension."""
    z = cocycle_space(rep, pres, algebra, tol)
    b = coboundary_space(rep, algebra, tol)
    if b.shape[1] == 0:
        return z
    reduced = z - b @ (b.T @ z)
    u, sing, _ = np.linalg.svd(reduced, full_matrices=False)
    rank = numerical_rank(sing, tol.rank_svd)
    return u[:, :rank]


def trace_differential(rep: Representation, u: Cocycle, word):
    """Derivative of the trace of a word along a deformation direction:
    tr(u(word) rho(word))."""
    return complex(np.trace(cocycle_extend(u, rep, word) @ evaluate_word(rep, word)))


@dataclass
class TraceRankReport:
    """Rank of the trace coordinates on first cohomology."""

    algebra: str
    z1_dim: int
    b1_dim: int
    h1_dim: int
    loop_count: int
    rank: int
    singular_values: np.ndarray
    gap_ratio: float
    threshold: float


def trace_rank(rep: Representation, pres: Presentation, loops,
               restrict_to_unitary=False, tol: Tolerances = DEFAULT) -> TraceRankReport:
    """Rank of the real-linear map H^1 -> (traces of the loops).

    Full group: one (Re, Im) row pair per loop over sl(2,C)-valued cocycles.
    Unitary restriction: su(2)-valued cocycles, only the Re rows.  Rank is
    decided at ``tol.rank_svd`` relative threshold; ``gap_ratio`` is the jump
    across the cutoff (infinite when the map has full rank).
    """
    if not loops:
        raise ValueError("need at least one loop")
    algebra = "su2" if restrict_to_unitary else "sl2"
    z = cocycle_space(rep, pres, algebra, tol)
    b = coboundary_space(rep, algebra, tol)
    h = cohomology_basis(rep, pres, algebra, tol)
    rows = []
    for w in loops:
        re_row = np.zeros(h.shape[1])
        im_row = np.zeros(h.shape[1])
        for j in range(h.shape[1]):
            u = cocycle_from_vector(h[:, j], rep.generator_count, algebra)
            t = trace_differential(rep, u, w)
            re_row[j] = t.real
            im_row[j] = t.imag
        rows.append(re_row)
        if not restrict_to_unitary:
            rows.append(im_row)
    mat = np.vstack(rows)
    sing = np.linalg.svd(mat, compute_uv=False)
    rank = numerical_rank(sing, tol.rank_svd)
    if 0 < rank < len(sing) and sing[rank] > 0:
        gap = float(sing[rank - 1] / sing[rank])
    else:
        gap = np.inf
    return TraceRankReport(
        algebra=algebra,
        z1_dim=z.shape[1],
        b1_dim=b.shape[1],
        h1_dim=h.shape[1],
        loop_count=len(loops),
        rank=rank,
        singular_values=sing,
        gap_ratio=gap,
        threshold=tol.rank_svd,
    )


# --- geometric holonomy ----------------------------------------------------


def meridian_holonomy(poly: EmbeddedPolyhedron, edge, tol: Tolerances = DEFAULT):
    """Meridian isometry of an edge and its SL(2,C) lift.

    The product of the reflections in the two adjacent face planes is an
    elliptic isometry about the edge geodesic rotating by twice the dihedral
    angle, so the lift trace satisfies |tr| = 2|cos(angle)|.
    """
    comb = poly.combinatorics
    edge = (min(edge), max(edge))
    planes = face_planes(poly, tol)
    fa, fb = comb.edge_faces(edge)
    iso = lorentz.reflect(planes[fa]) @ lorentz.reflect(planes[fb])
    return iso, lorentz.sl2c_lift(iso, tol)


@dataclass
class LinkRepresentation:
    """Spherical holonomy of a vertex link, based at the vertex.

    ``meridians`` are SL(2,C) lifts in star order, conjugated so the vertex
    sits at the hyperboloid basepoint (making them numerically unitary); the
    cyclic product is the identity up to the double-cover sign.
    """

    vertex: int
    edges: tuple
    meridians: list
    meridians_so31: list
    cone_angles: np.ndarray
    presentation: Presentation = field(init=False)

    def __post_init__(self):
        self.presentation = Presentation.punctured_sphere(len(self.meridians))

    def representation(self) -> Representation:
        return Representation(list(self.meridians))

    def relation_residual(self):
        """Frobenius distance of the cyclic lift product to the nearer of +I, -I."""
        prod = _I2
        for m in self.meridians:
            prod = prod @ m
        return float(min(np.linalg.norm(prod - _I2), np.linalg.norm(prod + _I2)))


def link_representation(poly: EmbeddedPolyhedron, vertex,
                        tol: Tolerances = DEFAULT) -> LinkRepresentation:
    """Meridian holonomy around every edge at a vertex, in star order.

    Each meridian is the product of the reflections in the two face planes
    adjacent to its edge, ordered along the star walk so the cyclic product
    telescopes to the identity; everything is conjugated by the translation
    taking the vertex to the origin so the lifts live in SU(2).
    """
    comb = poly.combinatorics
    star_edges, star_faces = comb.vertex_star(vertex)
    d = len(star_edges)
    if d < 3:
        raise InvalidCombinatorics(f"vertex {vertex} has valence {d} < 3")
    planes = face_planes(poly, tol)
    angles = dihedral_angles(poly, tol)
    move = lorentz.translation_to_origin(poly.positions[vertex], tol)
    move_inv = lorentz.J @ move.T @ lorentz.J
    reflections = {fi: lorentz.reflect(planes[fi]) for fi in star_faces}
    meridians_so31 = []
    cone = np.empty(d)
    for k in range(d):
        before = star_faces[(k - 1) % d]
        after = star_faces[k]
        m = reflections[before] @ reflections[after]
        meridians_so31.append(move @ m @ move_inv)
        cone[k] = 2.0 * angles[comb.edge_index[star_edges[k]]]
    lifts = [lorentz.sl2c_lift(m, tol) for m in meridians_so31]
    return LinkRepresentation(vertex, tuple(star_edges), lifts, meridians_so31, cone)


# --- boundary-surface fixture ----------------------------------------------


@dataclass
class SurfaceGroupFixture:
    """Representation of the boundary surface of a tube around the edge graph.

    The surface is assembled from the vertex links: gluing along a spanning
    tree of the edge graph identifies each child meridian with the inverse of
    its parent copy (exact at the matrix level, since the two star walks
    traverse an edge's faces in opposite order), and every remaining edge
    contributes both meridian copies plus a twist generator commuting with
    them.  The resulting genus is |E| - |V| + 1.
    """

    presentation: Presentation
    representation: Representation
    meridian_words: dict     # edge (a, b) -> single-letter word for its meridian
    generator_names: list
    genus: int
    euler_characteristic: int

    def meridian_loops(self):
        """Loops of the edge meridians in lexicographic edge order."""
        return [self.meridian_words[e] for e in sorted(self.meridian_words)]


def surface_group_fixture(poly: EmbeddedPolyhedron, tol: Tolerances = DEFAULT) -> SurfaceGroupFixture:
    """Build the boundary-surface representation for an embedded polyhedron.

    All meridians are taken in one global frame as two-reflection products,
    so no conjugation bookkeeping is needed; the construction is validated by
    the Euler characteristic of the presentation and exact inverse matching
    of the two copies of every meridian.
    """
    comb = poly.combinatorics
    nv = comb.vertex_count
    planes = face_planes(poly, tol)
    angles = dihedral_angles(poly, tol)
    reflections = [lorentz.reflect(pl) for pl in planes]

    slot_matrix = {}
    star_order = {}
    for v in range(nv):
        star_edges, star_faces = comb.vertex_star(v)
        star_order[v] = star_edges
        for k, e in enumerate(star_edges):
            before = star_faces[(k - 1) % len(star_faces)]
            after = star_faces[k]
            slot_matrix[(v, e)] = reflections[before] @ reflections[after]
    for e in comb.edges:
        a, b = e
        mismatch = np.max(np.abs(slot_matrix[(a, e)] @ slot_matrix[(b, e)] - np.eye(4)))
        if mismatch > 1e-9:
            raise InvalidCombinatorics(
                f"meridian copies of edge {e} are not inverse (defect {mismatch:.3e})"
            )

    # spanning tree of the edge graph, rooted at vertex 0
    parent_edge = {}
    seen = {0}
    queue = [0]
    adjacency = {v: [] for v in range(nv)}
    for a, b in comb.edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    while queue:
        u = queue.pop(0)
        for w in sorted(adjacency[u]):
            if w not in seen:
                seen.add(w)
                parent_edge[w] = (u, (min(u, w), max(u, w)))
                queue.append(w)
    tree_edges = {e for _, e in parent_edge.values()}
    cross_edges = [e for e in comb.edges if e not in tree_edges]

    generators = []      # ("slot", v, e) or ("twist", e)
    names = []
    gen_index = {}

    def add_generator(key, name):
        generators.append(key)
        names.append(name)
        gen_index[key] = len(generators)

    for e in comb.edges:
        a, b = e
        if e in tree_edges:
            parent = a if parent_edge.get(b, (None, None))[1] == e and parent_edge[b][0] == a else b
            add_generator(("slot", parent, e), f"m{a}_{b}")
        else:
            add_generator(("slot", a, e), f"m{a}_{b}a")
            add_generator(("slot", b, e), f"m{a}_{b}b")
    for e in cross_edges:
        add_generator(("twist", e), f"t{e[0]}_{e[1]}")

    def slot_letter(v, e):
        if ("slot", v, e) in gen_index:
            return gen_index[("slot", v, e)]
        other = e[0] if e[1] == v else e[1]
        return -gen_index[("slot", other, e)]

    images = []
    for key in generators:
        if key[0] == "slot":
            _, v, e = key
            images.append(lorentz.sl2c_lift(slot_matrix[(v, e)], tol))
        else:
            _, e = key
            twist = lorentz.rotation_about_edge(
                poly.positions[e[0]], poly.positions[e[1]],
                angles[comb.edge_index[e]], tol,
            )
            images.append(lorentz.sl2c_lift(twist, tol))

    relators = []
    for v in range(nv):
        relators.append(tuple(slot_letter(v, e) for e in star_order[v]))
    for e in cross_edges:
        t = gen_index[("twist", e)]
        relators.append((t, slot_letter(e[0], e), -t, slot_letter(e[1], e)))

    genus = comb.edge_count - nv + 1
    euler = 1 - len(generators) + len(relators)
    if euler != 2 - 2 * genus:
        raise InvalidCombinatorics(
            f"presentation Euler characteristic {euler} != {2 - 2 * genus}"
        )

    meridian_words = {}
    for e in comb.edges:
        if e in tree_edges:
            key = next(k for k in gen_index if k[0] == "slot" and k[2] == e)
        else:
            key = ("slot", e[0], e)
        meridian_words[e] = (gen_index[key],)

    return SurfaceGroupFixture(
        presentation=Presentation(len(generators), tuple(relators)),
        representation=Representation(images),
        meridian_words=meridian_words,
        generator_names=names,
        genus=genus,
        euler_characteristic=euler,
    )


@dataclass
class IrreducibilityReport:
    irreducible: bool
    residual: float
    witness: np.ndarray = None


def irreducibility_check(rep: Representation, tol: Tolerances = DEFAULT) -> IrreducibilityReport:
    """Decide whether all generator images share a projective eigenvector.

    Scans the eigenvectors of the first non-central generator: the
    representation is reducible exactly when one of them is (projectively)
    fixed by every generator, measured by the normalized wedge residual.
    Raises ``EigenFailure`` when the eigenvector extraction is too inaccurate
    to trust near the threshold.
    """
    probe = None
    for m in rep.images:
        if min(np.linalg.norm(m - _I2), np.linalg.norm(m + _I2)) > 1e-10:
            probe = m
            break
    if probe is None:
        # central representation: every line is invariant
        return IrreducibilityReport(False, 0.0, np.array([1.0, 0.0], dtype=complex))

    eigvals, eigvecs = np.linalg.eig(probe)
    best_residual = np.inf
    best_vec = None
    for i in range(2):
        xi = eigvecs[:, i]
        norm = np.linalg.norm(xi)
        if norm < 1e-12 or np.linalg.norm(probe @ xi - eigvals[i] * xi) > 1e-6 * norm:
            raise EigenFailure("unreliable eigenvector for a borderline generator")
        xi = xi / norm
        worst = 0.0
        for m in rep.images:
            mxi = m @ xi
            denom = np.linalg.norm(mxi)
            if denom < 1e-12:
                raise EigenFailure("generator image nearly singular")
            wedge = abs(mxi[0] * xi[1] - mxi[1] * xi[0]) / denom
            worst = max(worst, float(wedge))
        if worst < best_residual:
            best_residual = worst
            best_vec = xi
    reducible = best_residual < tol.irreducible
    return IrreducibilityReport(
        irreducible=not reducible,
        residual=best_residual,
        witness=best_vec if reducible else None,
    )
