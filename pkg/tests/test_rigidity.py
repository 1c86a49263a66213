import random

import pytest

from torrigid.rigidity import (
    Connected,
    Verdict,
    der_vanishing_gamma,
    fano_rigidity,
    polytope_edge_graph,
    polytope_halfspace_connectivity,
    qgorenstein_rigidity,
    quotient_rigidity,
    wps_rigidity,
)
from torrigid.toric import WeightSystem, affine_cone, proper_faces_fan, validate_fan


class TestDerVanishingGamma:
    def test_square_cone(self, square_cone):
        cert = der_vanishing_gamma(square_cone, search_bound=4)
        assert cert.verdict is Verdict.DER_PART_VANISHES

    def test_third_cone(self, third_cone):
        cert = der_vanishing_gamma(third_cone, search_bound=4)
        assert cert.verdict is Verdict.DER_PART_VANISHES

    def test_a1_inconclusive(self, a1_cone):
        cert = der_vanishing_gamma(a1_cone, search_bound=4)
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert cert.hypotheses[0].name == "smooth_in_codim_2"
        assert cert.hypotheses[0].status == "failed"

    def test_strict_mode_agrees(self, square_cone, hexagon_cone):
        for cone in (square_cone, hexagon_cone):
            cert = der_vanishing_gamma(cone, search_bound=4, strict=True)
            assert cert.verdict is Verdict.DER_PART_VANISHES

    def test_refuses_huge_cones(self, square_cone):
        big = [(i, 1, 1) for i in range(21)]
        with pytest.raises(ValueError, match="20"):
            der_vanishing_gamma(affine_cone(big), search_bound=2)


class TestQGorensteinRigidity:
    def test_third_cone_rigid(self, third_cone):
        cert = qgorenstein_rigidity(third_cone)
        assert cert.verdict is Verdict.RIGID

    def test_square_cone_not(self, square_cone):
        cert = qgorenstein_rigidity(square_cone)
        assert cert.verdict is Verdict.CONDITION_NOT_SATISFIED
        failing = {h.name for h in cert.hypotheses if h.status == "failed"}
        assert failing == {"simplicial_in_codim_3"}

    def test_smooth_cone_rigid(self):
        cone = affine_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert qgorenstein_rigidity(cone).verdict is Verdict.RIGID


class TestQuotientRigidity:
    def test_third_cone(self, third_cone):
        assert quotient_rigidity(third_cone).verdict is Verdict.RIGID

    def test_a1(self, a1_cone):
        cert = quotient_rigidity(a1_cone)
        assert cert.verdict is Verdict.CONDITION_NOT_SATISFIED

    def test_smooth(self):
        cone = affine_cone([(1, 0), (0, 1)])
        assert quotient_rigidity(cone).verdict is Verdict.RIGID


class TestFanoRigidity:
    def test_p2(self, p2_fan):
        assert fano_rigidity(p2_fan).verdict is Verdict.RIGID

    def test_p4(self, p4_fan):
        assert fano_rigidity(p4_fan).verdict is Verdict.RIGID

    def test_weighted_simplex(self):
        rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -3)]
        cones = [tuple(j for j in range(4) if j != i) for i in range(4)]
        fan = validate_fan(rays, cones)
        cert = fano_rigidity(fan)
        assert cert.verdict is Verdict.RIGID
        assert any(h.name.startswith("cone_") for h in cert.hypotheses)

    def test_not_complete(self, square_cone):
        cert = fano_rigidity(proper_faces_fan(square_cone))
        assert cert.verdict is Verdict.CONDITION_NOT_SATISFIED
        assert cert.reason == "completeness"

    def test_f2_not_fano(self, f2_fan):
        cert = fano_rigidity(f2_fan)
        assert cert.verdict is Verdict.CONDITION_NOT_SATISFIED
        failing = {h.name for h in cert.hypotheses if h.status == "failed"}
        assert "fano" in failing


class TestWpsRigidity:
    def test_rigid(self):
        assert wps_rigidity(WeightSystem((1, 1, 2, 3))).verdict is Verdict.RIGID

    def test_not_rigid(self):
        cert = wps_rigidity(WeightSystem((1, 1, 2, 2)))
        assert cert.verdict is Verdict.CONDITION_NOT_SATISFIED
        assert "2" in cert.reason

    def test_projective_space(self):
        assert wps_rigidity(WeightSystem((1, 1, 1, 1, 1))).verdict is Verdict.RIGID


SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


class TestPolytopeConnectivity:
    def test_unit_square(self):
        res = polytope_halfspace_connectivity(SQUARE, (0, 0), (1, 0), 0)
        assert isinstance(res, Connected)

    def test_triangle(self):
        tri = [(0, 0), (2, 0), (0, 2)]
        res = polytope_halfspace_connectivity(tri, (0, 0), (1, 1), 0)
        assert isinstance(res, Connected)

    def test_cube_interior_cut(self):
        cube = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
        res = polytope_halfspace_connectivity(cube, (0, 0, 0), (1, 1, -1), 0)
        assert isinstance(res, Connected)

    def test_edge_graph_of_square(self):
        edges = polytope_edge_graph([tuple(p) for p in SQUARE])
        assert edges == {
            frozenset({0, 1}),
            frozenset({1, 2}),
            frozenset({2, 3}),
            frozenset({0, 3}),
        }

    def test_off_hyperplane_rejected(self):
        with pytest.raises(ValueError, match="hyperplane"):
            polytope_halfspace_connectivity(SQUARE, (0, 0), (1, 0), 5)

    def test_non_vertex_rejected(self):
        pts = SQUARE + [(0, 0)]
        with pytest.raises(ValueError):
            polytope_halfspace_connectivity(pts, (0, 0), (1, 0), 0)

    def test_fuzz_small(self):
        rng = random.Random(31415)
        checked = 0
        while checked < 30:
            dim = rng.choice([2, 3])
            raw = {
                tuple(rng.randint(-3, 3) for _ in range(dim))
                for _ in range(rng.randint(dim + 1, 7))
            }
            pts = sorted(raw)
            if len(pts) < dim + 1:
                continue
            from torrigid.rigidity import _is_vertex

            verts = [p for i, p in enumerate(pts) if _is_vertex(pts, i)]
            if len(verts) < 3:
                continue
            v = rng.choice(verts)
            normal = tuple(rng.randint(-3, 3) for _ in range(dim))
            if not any(normal):
                continue
            offset = sum(a * x for a, x in zip(normal, v))
            res = polytope_halfspace_connectivity(verts, v, normal, offset)
            assert isinstance(res, Connected), (verts, v, normal, offset)
            checked += 1
