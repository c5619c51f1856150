import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvkit.geom import (
    Chart,
    Geodesic,
    Geometry,
    GeometryError,
    IdealPoint,
    ModelPoint,
    antipode_guard,
    convert,
    distance,
    embed,
    foot_of_perpendicular,
    geodesic_relation,
    midpoint,
    signed_distance_to_geodesic,
    unembed,
)

RNG = np.random.default_rng(20240901)


def random_disc_points(n, radius=0.95):
    r = radius * np.sqrt(RNG.random(n))
    a = 2.0 * np.pi * RNG.random(n)
    return np.column_stack([r * np.cos(a), r * np.sin(a)])


def klein_cross_ratio_distance(a, b):
    """Independent oracle: half log cross ratio along the Klein chord."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    d = b - a
    # chord endpoints: |a + t d| = 1
    A = d @ d
    B = 2.0 * (a @ d)
    C = a @ a - 1.0
    disc = math.sqrt(B * B - 4 * A * C)
    t1 = (-B - disc) / (2 * A)
    t2 = (-B + disc) / (2 * A)
    P = a + t1 * d  # behind a
    Q = a + t2 * d  # beyond b
    ap, aq = np.linalg.norm(a - P), np.linalg.norm(a - Q)
    bp, bq = np.linalg.norm(b - P), np.linalg.norm(b - Q)
    return 0.5 * abs(math.log((ap * bq) / (bp * aq)))


class TestConvert:
    def test_center_fixed(self):
        p = convert(ModelPoint(Chart.POINCARE, 0.0, 0.0), Chart.KLEIN)
        assert p.x == 0.0 and p.y == 0.0

    def test_poincare_to_klein_on_axis(self):
        # k = 2p/(1+|p|^2) gives 0.8 for p = 0.5
        k = convert(ModelPoint(Chart.POINCARE, 0.5, 0.0), Chart.KLEIN)
        assert abs(k.x - 0.8) < 1e-15 and abs(k.y) < 1e-15

    def test_klein_to_poincare_on_axis(self):
        p = convert(ModelPoint(Chart.KLEIN, 0.8, 0.0), Chart.POINCARE)
        assert abs(p.x - 0.5) < 1e-15 and abs(p.y) < 1e-15

    def test_chart_mismatch_rejected(self):
        with pytest.raises(GeometryError):
            convert(ModelPoint(Chart.POINCARE, 0.1, 0.2), Chart.GNOMONIC)

    @pytest.mark.parametrize(
        "charts",
        [(Chart.POINCARE, Chart.KLEIN), (Chart.GNOMONIC, Chart.STEREOGRAPHIC)],
    )
    def test_roundtrips_bulk(self, charts):
        a, b = charts
        pts = random_disc_points(10_000, radius=0.98 if a is Chart.POINCARE else 3.0)
        for x, y in pts:
            p = ModelPoint(a, float(x), float(y))
            q = convert(convert(p, b), a)
            assert abs(q.x - p.x) <= 1e-14 and abs(q.y - p.y) <= 1e-14

    @given(st.floats(-0.97, 0.97), st.floats(-0.97, 0.97))
    @settings(max_examples=200, deadline=None)
    def test_roundtrip_property(self, x, y):
        if x * x + y * y >= 0.97:
            return
        p = ModelPoint(Chart.POINCARE, x, y)
        q = convert(convert(p, Chart.KLEIN), Chart.POINCARE)
        assert math.hypot(q.x - p.x, q.y - p.y) < 1e-14


class TestDistance:
    def test_zero_on_equal(self):
        p = ModelPoint(Chart.POINCARE, 0.3, -0.2)
        assert distance(p, p) == 0.0

    def test_conformal_radial(self):
        for r in (0.1, 0.5, 0.9):
            d = distance(ModelPoint(Chart.POINCARE, 0, 0), ModelPoint(Chart.POINCARE, r, 0))
            assert abs(d - 2.0 * math.atanh(r)) < 1e-14

    def test_cross_ratio_oracle(self):
        a = ModelPoint(Chart.KLEIN, 0.3, 0.0)
        b = ModelPoint(Chart.KLEIN, 0.6, 0.2)
        assert abs(distance(a, b) - klein_cross_ratio_distance((0.3, 0.0), (0.6, 0.2))) < 1e-13

    def test_chart_independence(self):
        pts = random_disc_points(500, radius=0.9)
        for (x1, y1), (x2, y2) in zip(pts[0::2], pts[1::2]):
            a = ModelPoint(Chart.KLEIN, float(x1), float(y1))
            b = ModelPoint(Chart.KLEIN, float(x2), float(y2))
            d1 = distance(a, b)
            d2 = distance(convert(a, Chart.POINCARE), convert(b, Chart.POINCARE))
            assert abs(d1 - d2) <= 1e-12

    def test_triangle_inequality(self):
        pts = random_disc_points(300, radius=0.9)
        for (x1, y1), (x2, y2), (x3, y3) in zip(pts[0::3], pts[1::3], pts[2::3]):
            a = ModelPoint(Chart.POINCARE, float(x1), float(y1))
            b = ModelPoint(Chart.POINCARE, float(x2), float(y2))
            c = ModelPoint(Chart.POINCARE, float(x3), float(y3))
            assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12

    def test_spherical_distance(self):
        a = ModelPoint(Chart.GNOMONIC, 0.0, 0.0)
        b = ModelPoint(Chart.GNOMONIC, 1.0, 0.0)  # 45 degrees up the sphere
        assert abs(distance(a, b) - math.pi / 4) < 1e-14


class TestSignedDistance:
    def setup_method(self):
        self.real_axis = Geodesic.from_ideal(IdealPoint(0.0), IdealPoint(math.pi))

    def test_zero_on_line(self):
        p = ModelPoint(Chart.POINCARE, 0.37, 0.0)
        assert abs(signed_distance_to_geodesic(p, self.real_axis)) < 1e-15

    def test_reflection_negates(self):
        p = ModelPoint(Chart.POINCARE, 0.21, 0.4)
        q = ModelPoint(Chart.POINCARE, 0.21, -0.4)
        d1 = signed_distance_to_geodesic(p, self.real_axis)
        d2 = signed_distance_to_geodesic(q, self.real_axis)
        assert abs(d1 + d2) < 1e-14

    def test_perpendicular_foot_oracle(self):
        p = ModelPoint(Chart.POINCARE, 0.0, 0.4)
        want = abs(signed_distance_to_geodesic(p, self.real_axis))
        # minimize distance to points of the real axis by golden search
        lo, hi = -0.999, 0.999

        def f(t):
            return distance(p, ModelPoint(Chart.POINCARE, t, 0.0))

        phi = (math.sqrt(5) - 1) / 2
        a, b = lo, hi
        c, d = b - phi * (b - a), a + phi * (b - a)
        for _ in range(120):
            if f(c) < f(d):
                b, d = d, c
                c = b - phi * (b - a)
            else:
                a, c = c, d
                d = a + phi * (b - a)
        assert abs(f((a + b) / 2) - want) < 1e-10

    def test_foot_lies_on_line_and_realizes_distance(self):
        p = ModelPoint(Chart.POINCARE, 0.2, 0.5)
        foot = foot_of_perpendicular(p, self.real_axis)
        assert abs(signed_distance_to_geodesic(foot, self.real_axis)) < 1e-14
        assert abs(distance(p, foot) - abs(signed_distance_to_geodesic(p, self.real_axis))) < 1e-13

    def test_side_flag(self):
        p = ModelPoint(Chart.POINCARE, 0.0, 0.4)
        assert signed_distance_to_geodesic(p, self.real_axis, +1) == -signed_distance_to_geodesic(
            p, self.real_axis, -1
        )


class TestAntipodeGuard:
    def test_south_pole(self):
        assert antipode_guard(ModelPoint(Chart.GNOMONIC, 0.0, 0.0))

    def test_equator(self):
        assert not antipode_guard(np.array([1.0, 0.0, 0.0]))
        # equator is stereographically representable at radius 2
        assert not antipode_guard(ModelPoint(Chart.STEREOGRAPHIC, 2.0, 0.0))

    def test_north_pole(self):
        assert not antipode_guard(np.array([0.0, 0.0, 1.0]))

    def test_wrong_geometry(self):
        with pytest.raises(GeometryError):
            antipode_guard(ModelPoint(Chart.POINCARE, 0.0, 0.0))


class TestGeodesics:
    def test_normal_form_roundtrip(self):
        for _ in range(200):
            t1, t2 = sorted(RNG.uniform(0, 2 * math.pi, 2))
            if t2 - t1 < 1e-3 or t2 - t1 > 2 * math.pi - 1e-3:
                continue
            g = Geodesic.from_ideal(IdealPoint(t1), IdealPoint(t2))
            g2 = Geodesic.from_normal(Geometry.HYPERBOLIC, g.normal())
            assert g.close_to(g2, 1e-12)

    def test_klein_chord_and_poincare_orthogonality(self):
        pts = random_disc_points(40, radius=0.8)
        for (x1, y1), (x2, y2) in zip(pts[0::2], pts[1::2]):
            a = ModelPoint(Chart.KLEIN, float(x1), float(y1))
            b = ModelPoint(Chart.KLEIN, float(x2), float(y2))
            if distance(a, b) < 0.1:
                continue
            g = Geodesic.through(a, b)
            # sample geodesic points as feet of random projections
            feet = [
                foot_of_perpendicular(ModelPoint(Chart.KLEIN, float(x), float(y)), g)
                for x, y in random_disc_points(8, radius=0.7)
            ]
            klein = np.array([[f.x, f.y] for f in feet])
            d = klein[1] - klein[0]
            for f in klein[2:]:
                v = f - klein[0]
                assert abs(d[0] * v[1] - d[1] * v[0]) < 1e-10  # collinear in Klein
            # in the conformal chart the carrier circle is orthogonal to S^1
            conf = np.array(
                [[q.x, q.y] for q in (convert(f, Chart.POINCARE) for f in feet[:3])]
            )
            ax, ay = conf[0]
            bx, by = conf[1]
            cx, cy = conf[2]
            m = np.array([[bx - ax, by - ay], [cx - ax, cy - ay]])
            rhs = 0.5 * np.array(
                [bx * bx + by * by - ax * ax - ay * ay, cx * cx + cy * cy - ax * ax - ay * ay]
            )
            try:
                center = np.linalg.solve(m, rhs)
            except np.linalg.LinAlgError:
                continue  # diameter: orthogonal by definition
            rho2 = (ax - center[0]) ** 2 + (ay - center[1]) ** 2
            assert abs(center @ center - (1.0 + rho2)) < 1e-9

    def test_relations(self):
        g1 = Geodesic.from_ideal(IdealPoint(0.0), IdealPoint(math.pi))
        g2 = Geodesic.from_ideal(IdealPoint(math.pi / 2), IdealPoint(3 * math.pi / 2))
        kind, p = geodesic_relation(g1, g2)
        assert kind == "intersect"
        assert distance(p, ModelPoint(Chart.POINCARE, 0, 0)) < 1e-12

        g3 = Geodesic.from_ideal(IdealPoint(0.0), IdealPoint(math.pi / 2))
        kind, q = geodesic_relation(g1, g3)
        assert kind == "parallel" and abs(q.theta) < 1e-12

        g4 = Geodesic.from_ideal(IdealPoint(0.4), IdealPoint(math.pi - 0.4))
        kind, (dist_, perp) = geodesic_relation(g4, g1)
        assert kind == "ultraparallel" and dist_ > 0
        # common perpendicular crosses both orthogonally: here it is the imaginary axis
        assert perp.close_to(
            Geodesic.from_ideal(IdealPoint(math.pi / 2), IdealPoint(3 * math.pi / 2)), 1e-9
        )

    def test_midpoint(self):
        a = ModelPoint(Chart.POINCARE, 0.5, 0.1)
        b = ModelPoint(Chart.POINCARE, -0.3, 0.4)
        m = midpoint(a, b)
        assert abs(distance(a, m) - distance(b, m)) < 1e-13
        assert abs(distance(a, m) + distance(m, b) - distance(a, b)) < 1e-13

    def test_embed_unembed_sphere(self):
        p = ModelPoint(Chart.STEREOGRAPHIC, 0.3, -0.8)
        u = embed(p)
        assert abs(np.linalg.norm(u) - 1.0) < 1e-15
        q = unembed(u, Chart.GNOMONIC)
        assert distance(p, convert(q, Chart.STEREOGRAPHIC)) < 1e-13
