from functools import reduce

import numpy as np
import pytest
from scipy.linalg import expm

from helpers import corner_tetrahedron
from stokerlab import fixtures
from stokerlab.polyhedron import dihedral_angles
from stokerlab.repvar import (
    Cocycle,
    Presentation,
    Representation,
    coboundary,
    coboundary_space,
    cocycle_extend,
    cocycle_from_vector,
    cocycle_space,
    cohomology_basis,
    evaluate_word,
    irreducibility_check,
    link_representation,
    matrix_from_coords,
    meridian_holonomy,
    representation_report,
    surface_group_fixture,
    trace_differential,
    trace_rank,
)
from stokerlab import lorentz

I2 = np.eye(2, dtype=complex)


def random_sl2(rng, scale=0.8):
    x = rng.normal(size=6) * scale
    return expm(matrix_from_coords(x, "sl2"))


def random_representation(rng, n, scale=0.8):
    return Representation([random_sl2(rng, scale) for _ in range(n)])


def random_cocycle_values(rng, n, scale=0.5):
    return Cocycle([matrix_from_coords(rng.normal(size=6) * scale, "sl2") for _ in range(n)])


def random_word(rng, n, length):
    letters = rng.integers(1, n + 1, size=length)
    signs = rng.choice([-1, 1], size=length)
    return tuple(int(l * s) for l, s in zip(letters, signs))


def numeric_cocycle_extension(u, rep, word, step=1e-5):
    """Central-difference derivative of t -> rho_t(word) rho(word)^-1."""

    def shifted(t):
        return Representation([expm(t * v) @ m for v, m in zip(u.values, rep.images)])

    plus = evaluate_word(shifted(step), word)
    minus = evaluate_word(shifted(-step), word)
    base_inv = lorentz.sl2_inverse(evaluate_word(rep, word))
    return (plus - minus) @ base_inv / (2 * step)


class TestEvaluateWord:
    def test_empty_word(self):
        rep = random_representation(np.random.default_rng(0), 2)
        assert np.array_equal(evaluate_word(rep, ()), I2)

    def test_cancellation(self):
        rep = random_representation(np.random.default_rng(1), 1)
        assert np.max(np.abs(evaluate_word(rep, (1, -1)) - I2)) < 1e-13

    def test_matches_left_fold(self):
        rng = np.random.default_rng(2)
        rep = random_representation(rng, 3)
        word = random_word(rng, 3, 20)
        factors = [
            rep.images[abs(l) - 1] if l > 0 else lorentz.sl2_inverse(rep.images[abs(l) - 1])
            for l in word
        ]
        assert np.array_equal(evaluate_word(rep, word), reduce(np.matmul, factors))


class TestCocycleExtend:
    def test_single_generator(self):
        rng = np.random.default_rng(3)
        rep = random_representation(rng, 2)
        u = random_cocycle_values(rng, 2)
        assert np.array_equal(cocycle_extend(u, rep, (1,)), u.values[0])

    def test_cancellation(self):
        rng = np.random.default_rng(4)
        rep = random_representation(rng, 1)
        u = random_cocycle_values(rng, 1)
        assert np.max(np.abs(cocycle_extend(u, rep, (1, -1)))) < 1e-12

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            rep = random_representation(rng, 3)
            u = random_cocycle_values(rng, 3)
            word = random_word(rng, 3, 6)
            numeric = numeric_cocycle_extension(u, rep, word)
            assert np.max(np.abs(cocycle_extend(u, rep, word) - numeric)) < 1e-6


class TestCoboundary:
    def test_zero_vector(self):
        rep = random_representation(np.random.default_rng(6), 2)
        cob = coboundary(np.zeros((2, 2), dtype=complex), rep)
        assert all(np.max(np.abs(v)) == 0.0 for v in cob.values)

    def test_trivial_representation(self):
        rep = Representation([I2, I2])
        v = matrix_from_coords(np.arange(1, 7, dtype=float), "sl2")
        cob = coboundary(v, rep)
        assert all(np.max(np.abs(val)) < 1e-15 for val in cob.values)

    def test_satisfies_relators(self):
        rng = np.random.default_rng(7)
        poly = fixtures.tetrahedron(0.3)
        link = link_representation(poly, 0)
        rep = link.representation()
        for _ in range(10):
            v = matrix_from_coords(rng.normal(size=6), "sl2")
            cob = coboundary(v, rep)
            for relator in link.presentation.relators:
                assert np.max(np.abs(cocycle_extend(cob, rep, relator))) < 1e-10


class TestCocycleSpaces:
    def test_free_group_dimension(self):
        rng = np.random.default_rng(8)
        for n in (1, 2, 3):
            rep = random_representation(rng, n)
            basis = cocycle_space(rep, Presentation(n))
            assert basis.shape == (6 * n, 6 * n)

    @pytest.mark.parametrize(
        "builder,vertex,valence",
        [(fixtures.tetrahedron, 0, 3), (fixtures.square_pyramid, 4, 4),
         (fixtures.pentagonal_pyramid, 5, 5)],
    )
    def test_link_dimensions(self, builder, vertex, valence):
        link = link_representation(builder(0.3), vertex)
        rep = link.representation()
        z = cocycle_space(rep, link.presentation)
        b = coboundary_space(rep)
        assert z.shape[1] == 6 * (valence - 1)
        assert b.shape[1] == 6
        assert z.shape[1] - b.shape[1] == 6 * valence - 12

    def test_coboundary_space_of_central_rep(self):
        rep = Representation([I2, -I2])
        assert coboundary_space(rep).shape[1] == 0

    def test_coboundary_space_of_diagonal_rep(self):
        diag = np.diag([2.0 + 0j, 0.5 + 0j])
        diag2 = np.diag([1.5 + 0j, 1.0 / 1.5 + 0j])
        rep = Representation([diag, diag2])
        dim = coboundary_space(rep).shape[1]
        assert dim <= 4

    def test_cohomology_complements_coboundaries(self):
        link = link_representation(fixtures.cube(0.3), 0)
        rep = link.representation()
        z = cocycle_space(rep, link.presentation)
        b = coboundary_space(rep)
        h = cohomology_basis(rep, link.presentation)
        assert h.shape[1] == z.shape[1] - b.shape[1]
        assert np.max(np.abs(b.T @ h)) < 1e-9


class TestTraceDifferential:
    def test_zero_cocycle(self):
        rng = np.random.default_rng(9)
        rep = random_representation(rng, 2)
        u = Cocycle([np.zeros((2, 2), dtype=complex)] * 2)
        assert trace_differential(rep, u, (1, 2)) == 0

    def test_vanishes_on_coboundaries(self):
        rng = np.random.default_rng(10)
        rep = random_representation(rng, 3)
        for _ in range(20):
            v = matrix_from_coords(rng.normal(size=6), "sl2")
            cob = coboundary(v, rep)
            word = random_word(rng, 3, 8)
            assert abs(trace_differential(rep, cob, word)) < 1e-10

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            rep = random_representation(rng, 2)
            u = random_cocycle_values(rng, 2)
            word = random_word(rng, 2, 6)
            step = 1e-5

            def trace_at(t):
                shifted = Representation(
                    [expm(t * v) @ m for v, m in zip(u.values, rep.images)]
                )
                return np.trace(evaluate_word(shifted, word))

            numeric = (trace_at(step) - trace_at(-step)) / (2 * step)
            assert abs(trace_differential(rep, u, word) - numeric) < 1e-6


class TestTraceRank:
    @pytest.mark.parametrize(
        "builder,vertex,valence",
        [(fixtures.tetrahedron, 0, 3), (fixtures.square_pyramid, 4, 4),
         (fixtures.pentagonal_pyramid, 5, 5)],
    )
    def test_meridian_ranks(self, builder, vertex, valence):
        link = link_representation(builder(0.3), vertex)
        rep = link.representation()
        loops = [(k,) for k in range(1, valence + 1)]
        unitary = trace_rank(rep, link.presentation, loops, restrict_to_unitary=True)
        assert unitary.h1_dim == 3 * valence - 6
        assert unitary.rank == valence
        assert unitary.gap_ratio > 1e3
        full = trace_rank(rep, link.presentation, loops, restrict_to_unitary=False)
        assert full.h1_dim == 6 * valence - 12
        assert full.rank == 2 * valence
        assert full.gap_ratio > 1e3


class TestMeridianHolonomy:
    def test_right_angle_edge_has_traceless_lift(self):
        poly = corner_tetrahedron()
        _, lift = meridian_holonomy(poly, (0, 1))
        assert abs(np.trace(lift)) < 1e-10

    def test_trace_identity_regular_tetrahedron(self):
        poly = fixtures.tetrahedron(0.3)
        angles = dihedral_angles(poly)
        comb = poly.combinatorics
        for k, e in enumerate(comb.edges):
            _, lift = meridian_holonomy(poly, e)
            assert abs(np.trace(lift)) == pytest.approx(
                2.0 * abs(np.cos(angles[k])), abs=1e-10
            )

    def test_fixes_edge_endpoints(self):
        poly = fixtures.cube(0.3)
        e = poly.combinatorics.edges[0]
        iso, _ = meridian_holonomy(poly, e)
        for v in e:
            lift = lorentz.klein_lift(poly.positions[v])
            assert np.max(np.abs(iso @ lift - lift)) < 1e-11


class TestLinkRepresentation:
    @pytest.mark.parametrize("name", sorted(fixtures.STANDARD))
    def test_relation_residuals(self, name):
        poly = fixtures.STANDARD[name](0.3)
        for v in range(poly.combinatorics.vertex_count):
            link = link_representation(poly, v)
            assert link.relation_residual() < 1e-10

    def test_square_pyramid_apex_symmetry(self):
        link = link_representation(fixtures.square_pyramid(0.3), 4)
        traces = [abs(np.trace(m)) for m in link.meridians]
        assert len(traces) == 4
        assert np.ptp(traces) < 1e-12

    def test_cone_angles_below_full_turn(self):
        for name, build in fixtures.STANDARD.items():
            poly = build(0.4)
            for v in range(poly.combinatorics.vertex_count):
                link = link_representation(poly, v)
                assert np.all(link.cone_angles > 0)
                assert np.all(link.cone_angles < 2 * np.pi)

    def test_meridians_are_numerically_unitary(self):
        link = link_representation(fixtures.pentagonal_pyramid(0.3), 5)
        for m in link.meridians:
            assert np.max(np.abs(m @ m.conj().T - I2)) < 1e-12

    def test_trace_matches_cone_angle(self):
        link = link_representation(fixtures.tetrahedron(0.3), 2)
        for m, cone in zip(link.meridians, link.cone_angles):
            assert abs(np.trace(m)) == pytest.approx(
                2.0 * abs(np.cos(cone / 2.0)), abs=1e-9
            )


class TestIrreducibility:
    def test_links_are_irreducible(self):
        for name, build in fixtures.STANDARD.items():
            poly = build(0.3)
            for v in range(poly.combinatorics.vertex_count):
                report = irreducibility_check(link_representation(poly, v).representation())
                assert report.irreducible

    def test_diagonal_representation_reducible(self):
        rep = Representation([np.diag([2.0 + 0j, 0.5]), np.diag([3.0 + 0j, 1.0 / 3.0])])
        report = irreducibility_check(rep)
        assert not report.irreducible
        assert np.max(np.abs(np.abs(report.witness) - np.array([1.0, 0.0]))) < 1e-12

    def test_distinct_elliptic_axes_irreducible(self):
        rng = np.random.default_rng(12)
        a = lorentz.sl2c_lift(lorentz.rotation_about_edge([0.0, 0.0, 0.0], [0.0, 0.0, 0.4], 1.0))
        b = lorentz.sl2c_lift(lorentz.rotation_about_edge([0.1, 0.0, 0.0], [0.1, 0.4, 0.0], 0.7))
        report = irreducibility_check(Representation([a, b]))
        assert report.irreducible


class TestSurfaceGroupFixture:
    def test_genus_three_counts(self):
        fx = surface_group_fixture(fixtures.tetrahedron(0.3))
        assert fx.genus == 3
        assert fx.euler_characteristic == -4
        assert fx.presentation.generator_count == 12
        assert len(fx.presentation.relators) == 7

    def test_relators_hold_up_to_sign(self):
        fx = surface_group_fixture(fixtures.tetrahedron(0.3))
        det_defect, relator_data = representation_report(fx.representation, fx.presentation)
        assert det_defect < 1e-10
        assert all(residual < 1e-8 for _, residual in relator_data)

    def test_dimension_counts(self):
        fx = surface_group_fixture(fixtures.tetrahedron(0.3))
        z = cocycle_space(fx.representation, fx.presentation)
        b = coboundary_space(fx.representation)
        assert z.shape[1] - b.shape[1] == 24  # 12g - 12 at genus 3
        assert b.shape[1] == 6

    def test_meridian_traces_have_half_rank(self):
        fx = surface_group_fixture(fixtures.tetrahedron(0.3))
        report = trace_rank(fx.representation, fx.presentation, fx.meridian_loops())
        assert report.h1_dim == 24
        assert report.rank == 12
        assert irreducibility_check(fx.representation).irreducible

    def test_meridian_traces_match_dihedral_angles(self):
        poly = fixtures.tetrahedron(0.3)
        fx = surface_group_fixture(poly)
        angles = dihedral_angles(poly)
        comb = poly.combinatorics
        for k, e in enumerate(comb.edges):
            word = fx.meridian_words[e]
            tr = np.trace(evaluate_word(fx.representation, word))
            assert abs(tr.imag) < 1e-10
            assert abs(tr.real) == pytest.approx(2.0 * abs(np.cos(angles[k])), abs=1e-9)
