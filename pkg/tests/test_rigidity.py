import numpy as np
import pytest

from helpers import finite_difference_jacobian, random_isometry
from stokerlab import fixtures, lorentz
from stokerlab.errors import DimensionMismatch
from stokerlab.polyhedron import EmbeddedPolyhedron, dihedral_angles, planarity_residuals
from stokerlab.rigidity import (
    angle_jacobian,
    constraint_jacobian,
    isometry_directions,
    numerical_rank,
    rigidity_report,
    tangent_space,
)

SCALES = (0.1, 0.3, 0.5)


def reshape_positions(poly, flat):
    return poly.with_positions(np.asarray(flat).reshape(-1, 3))


class TestConstraintJacobian:
    def test_tetrahedron_is_empty(self):
        jac = constraint_jacobian(fixtures.tetrahedron())
        assert jac.shape == (0, 12)

    def test_cube_shape_and_rank(self):
        jac = constraint_jacobian(fixtures.cube(0.3))
        assert jac.shape == (6, 24)
        sing = np.linalg.svd(jac, compute_uv=False)
        assert numerical_rank(sing, 1e-9) == 6

    @pytest.mark.parametrize("name", sorted(fixtures.STANDARD))
    def test_matches_finite_differences(self, name):
        poly = fixtures.STANDARD[name](0.3)
        analytic = constraint_jacobian(poly)
        if analytic.shape[0] == 0:
            return  # fully triangulated: nothing to differentiate
        fd = finite_difference_jacobian(
            lambda x: planarity_residuals(reshape_positions(poly, x)),
            poly.positions.ravel(),
        )
        assert np.max(np.abs(analytic - fd)) < 1e-6


class TestAngleJacobian:
    @pytest.mark.parametrize("name", sorted(fixtures.STANDARD))
    def test_matches_finite_differences(self, name):
        poly = fixtures.STANDARD[name](0.3)
        fd = finite_difference_jacobian(
            lambda x: dihedral_angles(reshape_positions(poly, x)),
            poly.positions.ravel(),
        )
        assert np.max(np.abs(angle_jacobian(poly) - fd)) < 1e-6

    def test_regular_tetrahedron_row_norms_equal(self):
        jac = angle_jacobian(fixtures.tetrahedron(0.3))
        norms = np.linalg.norm(jac, axis=1)
        assert np.ptp(norms) < 1e-10

    def test_relabeling_equivariance(self):
        poly = fixtures.tetrahedron(0.3)
        comb = poly.combinatorics
        perm = np.array([1, 2, 3, 0])
        new_faces = [[int(perm[v]) for v in f] for f in comb.faces]
        new_pos = np.empty_like(poly.positions)
        for old, new in enumerate(perm):
            new_pos[new] = poly.positions[old]
        relabeled = EmbeddedPolyhedron(
            poly.combinatorics.__class__(4, new_faces), new_pos
        )
        jac = angle_jacobian(poly)
        jac2 = angle_jacobian(relabeled)
        comb2 = relabeled.combinatorics
        for k, (a, b) in enumerate(comb.edges):
            image = (min(perm[a], perm[b]), max(perm[a], perm[b]))
            row2 = jac2[comb2.edge_index[image]]
            for old in range(4):
                new = perm[old]
                assert np.max(
                    np.abs(jac[k, 3 * old:3 * old + 3] - row2[3 * new:3 * new + 3])
                ) < 1e-12


class TestTangentSpace:
    @pytest.mark.parametrize(
        "name,expected",
        [("tetrahedron", 12), ("cube", 18), ("triangular_prism", 15),
         ("pentagonal_pyramid", 16)],
    )
    def test_dimension_is_edges_plus_six(self, name, expected):
        poly = fixtures.STANDARD[name](0.3)
        basis = tangent_space(poly)
        assert basis.shape[1] == expected == poly.combinatorics.edge_count + 6
        assert np.max(np.abs(basis.T @ basis - np.eye(expected))) < 1e-12

    def test_degenerate_embedding_rejected(self):
        poly = fixtures.cube(0.3)
        flat = poly.with_positions(poly.positions * np.array([1.0, 1.0, 0.0]))
        with pytest.raises(DimensionMismatch):
            tangent_space(flat)


class TestIsometryDirections:
    def test_rank_six(self):
        cols = isometry_directions(fixtures.tetrahedron(0.3))
        assert cols.shape == (12, 6)
        assert np.linalg.matrix_rank(cols) == 6

    @pytest.mark.parametrize("name", sorted(fixtures.STANDARD))
    def test_annihilated_by_both_jacobians(self, name):
        poly = fixtures.STANDARD[name](0.3)
        cols = isometry_directions(poly)
        constraints = constraint_jacobian(poly)
        if constraints.size:
            assert np.max(np.abs(constraints @ cols)) < 1e-9
        assert np.max(np.abs(angle_jacobian(poly) @ cols)) < 1e-8


class TestRigidityReport:
    @pytest.mark.parametrize("name", sorted(fixtures.STANDARD))
    @pytest.mark.parametrize("scale", SCALES)
    def test_certified_with_spectral_gap(self, name, scale):
        poly = fixtures.STANDARD[name](scale)
        report = rigidity_report(poly)
        e = poly.combinatorics.edge_count
        assert report.certified, report.notes
        assert report.tangent_dim == e + 6
        assert report.angle_rank == e
        assert report.kernel_dim == 6
        assert report.isometry_containment_residual < 1e-6
        lead, trail = report.spectral_gap
        assert lead > 1e-6
        assert trail < 1e-9

    def test_coplanar_input_not_certified(self):
        poly = fixtures.cube(0.3)
        flat = poly.with_positions(poly.positions * np.array([1.0, 1.0, 0.0]))
        report = rigidity_report(flat)
        assert not report.certified
        assert any("nullity" in note for note in report.notes)

    def test_invariant_under_isometries_and_rescaling(self):
        poly = fixtures.triangular_prism(0.2)
        base = rigidity_report(poly)
        rng = np.random.default_rng(3)
        for _ in range(3):
            iso = random_isometry(rng, scale=0.3)
            moved = poly.with_positions(lorentz.apply_isometry(iso, poly.positions))
            report = rigidity_report(moved)
            assert (report.tangent_dim, report.angle_rank, report.kernel_dim) == (
                base.tangent_dim, base.angle_rank, base.kernel_dim,
            )
            assert report.certified
        for scale in SCALES:
            report = rigidity_report(fixtures.triangular_prism(scale))
            assert (report.tangent_dim, report.angle_rank, report.kernel_dim) == (
                base.tangent_dim, base.angle_rank, base.kernel_dim,
            )
