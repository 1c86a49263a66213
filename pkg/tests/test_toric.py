import itertools
from math import inf

import pytest

from torrigid.toric import (
    FanValidationError,
    TorusFactorError,
    WeightSystem,
    affine_cone,
    class_group,
    faces,
    gorenstein,
    graph_gamma,
    graph_gamma_f,
    irrelevant_ideal,
    is_complete,
    is_fano,
    is_simplicial,
    is_smooth,
    proper_faces_fan,
    q_gorenstein,
    simplicial_codim,
    singular_codim,
    smooth_subfan,
    validate_fan,
    wps_normalize,
    wps_rigidity_condition,
    wps_singular_ideal,
    wps_well_formed,
)


class TestValidateFan:
    def test_p2(self, p2_fan):
        assert p2_fan.num_rays == 3
        assert p2_fan.warnings == ()

    def test_normalizes_ray(self):
        fan = validate_fan([(2, 0), (0, 1)], [(0, 1)])
        assert fan.rays[0] == (1, 0)
        assert len(fan.warnings) == 1

    def test_opposite_rays(self):
        with pytest.raises(FanValidationError, match="pointed"):
            validate_fan([(1, 0), (-1, 0)], [(0, 1)])

    def test_duplicate_rays(self):
        with pytest.raises(FanValidationError, match="coincide"):
            validate_fan([(2, 0), (1, 0)], [(0,), (1,)])

    def test_empty_cone_list(self):
        with pytest.raises(FanValidationError):
            validate_fan([(1, 0)], [])


class TestFaces:
    def test_square_cone(self, square_cone):
        fs = set(faces(square_cone))
        expected = {
            frozenset(),
            frozenset({0}),
            frozenset({1}),
            frozenset({2}),
            frozenset({3}),
            frozenset({0, 1}),
            frozenset({1, 2}),
            frozenset({2, 3}),
            frozenset({0, 3}),
            frozenset({0, 1, 2, 3}),
        }
        assert fs == expected  # in particular no diagonals {0,2}, {1,3}

    def test_2d_cone(self, a1_cone):
        assert set(faces(a1_cone)) == {
            frozenset(),
            frozenset({0}),
            frozenset({1}),
            frozenset({0, 1}),
        }

    def test_single_ray(self):
        c = affine_cone([(1, 2)])
        assert set(faces(c)) == {frozenset(), frozenset({0})}

    def test_closed_under_face_relation(self, square_cone, hexagon_cone):
        for cone in (square_cone, hexagon_cone):
            all_faces = set(faces(cone))
            for f in all_faces:
                for sub in faces(cone.fan.cone(f)):
                    assert sub in all_faces


class TestSmoothSimplicial:
    def test_basic(self):
        assert is_smooth(affine_cone([(1, 0), (0, 1)]))
        a1 = affine_cone([(1, 0), (1, 2)])
        assert is_simplicial(a1) and not is_smooth(a1)

    def test_square_not_simplicial(self, square_cone):
        assert not is_simplicial(square_cone)

    def test_smooth_implies_simplicial(self, square_cone, hexagon_cone, third_cone):
        for cone in (square_cone, hexagon_cone, third_cone):
            for f in faces(cone):
                sub = cone.fan.cone(f)
                if is_smooth(sub):
                    assert is_simplicial(sub)


class TestCodims:
    def test_third_cone(self, third_cone):
        assert singular_codim(third_cone) == 3
        assert simplicial_codim(third_cone) == inf

    def test_a1(self, a1_cone):
        assert singular_codim(a1_cone) == 2

    def test_p2(self, p2_fan):
        assert singular_codim(p2_fan) == inf
        assert simplicial_codim(p2_fan) == inf

    def test_square(self, square_cone):
        assert singular_codim(square_cone) == 3
        assert simplicial_codim(square_cone) == 3


class TestClassGroup:
    def test_p2(self, p2_fan):
        cox = class_group(p2_fan)
        assert cox.free_rank == 1
        assert cox.torsion == ()
        row = cox.grading_matrix[0]
        assert row in ((1, 1, 1), (-1, -1, -1))

    def test_square(self, square_cone):
        cox = class_group(square_cone.fan)
        assert cox.free_rank == 1
        assert cox.torsion == ()
        assert cox.grading_matrix[0] in ((1, -1, 1, -1), (-1, 1, -1, 1))

    def test_a1_torsion(self, a1_cone):
        cox = class_group(a1_cone.fan)
        assert cox.free_rank == 0
        assert cox.torsion == (2,)

    def test_annihilates_row_lattice(self, square_cone, hexagon_cone, p2_fan):
        for fan in (square_cone.fan, hexagon_cone.fan, p2_fan):
            cox = class_group(fan)
            n = cox.ambient_rank
            for u in itertools.product(range(-2, 3), repeat=n):
                p = [sum(u[k] * v[k] for k in range(n)) for v in fan.rays]
                for row in cox.grading_matrix:
                    assert sum(a * b for a, b in zip(row, p)) == 0

    def test_torus_factor_rejected(self):
        fan = validate_fan([(1, 0), (-1, 0)], [(0,), (1,)])
        with pytest.raises(TorusFactorError):
            class_group(fan)


class TestIrrelevantIdeal:
    def test_p2(self, p2_fan):
        b = irrelevant_ideal(p2_fan)
        assert set(b.generators) == {frozenset({0}), frozenset({1}), frozenset({2})}

    def test_square_proper_faces(self, square_cone):
        fan = proper_faces_fan(square_cone)
        b = irrelevant_ideal(fan)
        assert set(b.generators) == {
            frozenset({2, 3}),
            frozenset({0, 3}),
            frozenset({0, 1}),
            frozenset({1, 2}),
        }

    def test_a1_proper_faces(self, a1_cone):
        fan = proper_faces_fan(a1_cone)
        b = irrelevant_ideal(fan)
        assert set(b.generators) == {frozenset({0}), frozenset({1})}


class TestQGorenstein:
    def test_square(self, square_cone):
        cert = q_gorenstein(square_cone)
        assert cert is not None
        assert (cert.covector, cert.index) == ((0, 0, 1), 1)
        assert gorenstein(square_cone)

    def test_third(self, third_cone):
        cert = q_gorenstein(third_cone)
        assert (cert.covector, cert.index) == ((0, 0, 1), 1)

    def test_2d(self):
        cone = affine_cone([(1, 0), (1, 3)])
        cert = q_gorenstein(cone)
        assert (cert.covector, cert.index) == ((1, 0), 1)

    def test_not_qgorenstein(self):
        cone = affine_cone([(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 2)])
        assert q_gorenstein(cone) is None


class TestCompleteFano:
    def test_p2(self, p2_fan):
        assert is_complete(p2_fan)
        assert is_fano(p2_fan)

    def test_proper_faces_not_complete(self, square_cone):
        assert not is_complete(proper_faces_fan(square_cone))

    def test_f2_complete_not_fano(self, f2_fan):
        assert is_complete(f2_fan)
        assert not is_fano(f2_fan)

    def test_p4(self, p4_fan):
        assert is_complete(p4_fan)
        assert is_fano(p4_fan)


class TestWps:
    def test_well_formed(self):
        assert wps_well_formed(WeightSystem((1, 1, 2, 3)))
        assert wps_well_formed(WeightSystem((1, 1, 2, 2)))
        assert not wps_well_formed(WeightSystem((1, 2, 2, 2)))

    def test_normalize(self):
        assert wps_normalize(WeightSystem((1, 2, 2, 2))).weights == (1, 1, 1, 1)
        assert wps_normalize(WeightSystem((1, 1, 2, 3))).weights == (1, 1, 2, 3)

    def test_rigidity_condition(self):
        assert wps_rigidity_condition(WeightSystem((1, 1, 2, 3)))
        assert not wps_rigidity_condition(WeightSystem((1, 1, 2, 2)))
        assert wps_rigidity_condition(WeightSystem((1, 1, 1, 1, 1)))

    def test_singular_ideal(self):
        j = wps_singular_ideal(WeightSystem((1, 1, 2, 3)))
        assert set(j.generators) == {
            frozenset({0}),
            frozenset({1}),
            frozenset({2, 3}),
        }
        assert j.height() == 3
        assert wps_singular_ideal(WeightSystem((1, 1, 1))).is_unit

    def test_condition_matches_codim(self):
        for n in (2, 3):
            for w in itertools.product(range(1, 5), repeat=n + 1):
                q = WeightSystem(w)
                cond = wps_rigidity_condition(q)
                codim = wps_singular_ideal(q).height()
                assert cond == (codim >= 3), (w, cond, codim)


class TestGraphs:
    def test_square_gamma(self, square_cone):
        fan = proper_faces_fan(square_cone)
        g = graph_gamma(fan)
        assert g.edges == frozenset(
            frozenset(e) for e in [(0, 1), (1, 2), (2, 3), (0, 3)]
        )

    def test_third_gamma_complete(self, third_cone):
        fan = proper_faces_fan(third_cone)
        g = graph_gamma(fan)
        assert g.edges == frozenset(
            frozenset(e) for e in [(0, 1), (1, 2), (0, 2)]
        )

    def test_single_ray(self):
        fan = validate_fan([(1, 0)], [(0,)])
        g = graph_gamma(fan)
        assert g.vertices == frozenset({0}) and not g.edges

    def test_gamma_f_square(self, square_cone):
        g = graph_gamma_f(square_cone)
        assert g.edges == frozenset(
            frozenset(e) for e in [(0, 1), (1, 2), (2, 3), (0, 3)]
        )

    def test_gamma_f_subgraph_of_gamma(self, square_cone, hexagon_cone, third_cone):
        for cone in (square_cone, hexagon_cone, third_cone):
            gf = graph_gamma_f(cone)
            g = graph_gamma(proper_faces_fan(cone))
            assert gf.vertices == g.vertices
            assert gf.edges <= g.edges

    def test_components(self, square_cone):
        g = graph_gamma_f(square_cone)
        assert g.is_connected()
        sub = g.induced({0, 2})
        assert len(sub.connected_components()) == 2


def test_smooth_subfan_of_a1(a1_cone):
    fan = smooth_subfan(a1_cone)
    assert set(fan.max_cones) == {frozenset({0}), frozenset({1})}
