"""Model charts and metric primitives for the three planar geometries.

Internally every point is embedded:

* hyperbolic plane: upper sheet of the hyperboloid <u,u> = -1 in R^{2,1},
  with <u,v> = ux*vx + uy*vy - ut*vt,
* sphere: unit vectors in R^3, the chart centre being the south pole
  (0, 0, -1), charts only cover (part of) the open southern hemisphere,
* Euclidean plane: R^2 itself.

Charts map between embedded vectors and the (x, y) coordinates the public
types carry.  Geodesics are stored in chart-independent normal form: a pair
of ideal angles for the hyperbolic plane, a unit normal for the sphere, and
unit-normal line coefficients for the Euclidean plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import tolerances as tol


class Geometry(Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"

    @property
    def curvature(self) -> float:
        return {"spherical": 1.0, "euclidean": 0.0, "hyperbolic": -1.0}[self.value]


class Chart(Enum):
    KLEIN = "klein"
    POINCARE = "poincare"
    GNOMONIC = "gnomonic"
    STEREOGRAPHIC = "stereographic"
    CARTESIAN = "cartesian"


_CHARTS = {
    Geometry.HYPERBOLIC: (Chart.KLEIN, Chart.POINCARE),
    Geometry.SPHERICAL: (Chart.GNOMONIC, Chart.STEREOGRAPHIC),
    Geometry.EUCLIDEAN: (Chart.CARTESIAN,),
}

#: the collinear chart of each geometry (straight lines are geodesics there)
COLLINEAR_CHART = {
    Geometry.HYPERBOLIC: Chart.KLEIN,
    Geometry.SPHERICAL: Chart.GNOMONIC,
    Geometry.EUCLIDEAN: Chart.CARTESIAN,
}

#: the conformal chart of each geometry (chart angles are true angles)
CONFORMAL_CHART = {
    Geometry.HYPERBOLIC: Chart.POINCARE,
    Geometry.SPHERICAL: Chart.STEREOGRAPHIC,
    Geometry.EUCLIDEAN: Chart.CARTESIAN,
}


class GeometryError(ValueError):
    """Chart/geometry mismatch or a point outside its chart domain."""


def chart_geometry(chart: Chart) -> Geometry:
    for geom, charts in _CHARTS.items():
        if chart in charts:
            return geom
    raise GeometryError(f"unknown chart {chart}")


@dataclass(frozen=True)
class ModelPoint:
    chart: Chart
    x: float
    y: float

    def __post_init__(self):
        if self.chart in (Chart.KLEIN, Chart.POINCARE):
            if self.x * self.x + self.y * self.y >= 1.0:
                raise GeometryError(
                    f"({self.x}, {self.y}) outside the unit disc of {self.chart}"
                )

    @property
    def geometry(self) -> Geometry:
        return chart_geometry(self.chart)

    @property
    def xy(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class IdealPoint:
    """Boundary point of the hyperbolic model circle, as an angle mod 2*pi."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", self.theta % (2.0 * math.pi))

    @property
    def direction(self) -> np.ndarray:
        return np.array([math.cos(self.theta), math.sin(self.theta)])


# -- Minkowski / embedding helpers -------------------------------------------

_J = np.diag([1.0, 1.0, -1.0])


def mdot(u, v) -> float:
    """Bilinear form of R^{2,1} (last coordinate timelike)."""
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]


def mdot_many(us: np.ndarray, v: np.ndarray) -> np.ndarray:
    return us[..., 0] * v[0] + us[..., 1] * v[1] - us[..., 2] * v[2]


def mcross(u, v) -> np.ndarray:
    """Minkowski cross product: <mcross(u,v), w> = det[u; v; w]."""
    return _J @ np.cross(u, v)


def normalize_point(u: np.ndarray) -> np.ndarray:
    """Rescale to the upper hyperboloid sheet <u,u> = -1."""
    s = -mdot(u, u)
    if s <= 0.0:
        raise GeometryError("vector is not timelike")
    u = u / math.sqrt(s)
    return u if u[2] > 0 else -u

def normalize_spacelike(u: np.ndarray) -> np.ndarray:
    s = mdot(u, u)
    if s <= 0.0:
        raise GeometryError("vector is not spacelike")
    return u / math.sqrt(s)


def ideal_vector(theta: float) -> np.ndarray:
    """Lightlike representative of the ideal point at angle theta."""
    return np.array([math.cos(theta), math.sin(theta), 1.0])


def ideal_angle(u: np.ndarray) -> float:
    """Angle of a lightlike vector on the boundary circle."""
    return math.atan2(u[1], u[0]) % (2.0 * math.pi)


# -- chart <-> embedding ------------------------------------------------------

def embed(p: ModelPoint) -> np.ndarray:
    """Embedded coordinates of a chart point."""
    x, y = p.x, p.y
    c = p.chart
    if c == Chart.POINCARE:
        s = 1.0 - (x * x + y * y)
        return np.array([2.0 * x / s, 2.0 * y / s, (2.0 - s) / s])
    if c == Chart.KLEIN:
        t = 1.0 / math.sqrt(1.0 - (x * x + y * y))
        return np.array([x * t, y * t, t])
    if c == Chart.GNOMONIC:
        n = 1.0 / math.sqrt(1.0 + x * x + y * y)
        return np.array([x * n, y * n, -n])
    if c == Chart.STEREOGRAPHIC:
        s = x * x + y * y
        return np.array([4.0 * x, 4.0 * y, s - 4.0]) / (s + 4.0)
    return np.array([x, y])


def unembed(u: np.ndarray, chart: Chart) -> ModelPoint:
    """Chart coordinates of an embedded point."""
    if chart == Chart.POINCARE:
        return ModelPoint(chart, u[0] / (1.0 + u[2]), u[1] / (1.0 + u[2]))
    if chart == Chart.KLEIN:
        return ModelPoint(chart, u[0] / u[2], u[1] / u[2])
    if chart == Chart.GNOMONIC:
        if u[2] >= 0.0:
            raise GeometryError("point outside the open southern hemisphere")
        return ModelPoint(chart, -u[0] / u[2], -u[1] / u[2])
    if chart == Chart.STEREOGRAPHIC:
        if u[2] >= 1.0 - 1e-15:
            raise GeometryError("north pole is not stereographically representable")
        return ModelPoint(chart, 2.0 * u[0] / (1.0 - u[2]), 2.0 * u[1] / (1.0 - u[2]))
    return ModelPoint(Chart.CARTESIAN, u[0], u[1])


def convert(p: ModelPoint, target: Chart) -> ModelPoint:
    """Re-express a point in another chart of the same geometry."""
    if chart_geometry(target) is not p.geometry:
        raise GeometryError(f"chart {target} not admissible for {p.geometry}")
    if target == p.chart:
        return p
    return unembed(embed(p), target)


def origin(geometry: Geometry) -> ModelPoint:
    return ModelPoint(COLLINEAR_CHART[geometry], 0.0, 0.0)


def center_vector(geometry: Geometry) -> np.ndarray:
    if geometry is Geometry.HYPERBOLIC:
        return np.array([0.0, 0.0, 1.0])
    if geometry is Geometry.SPHERICAL:
        return np.array([0.0, 0.0, -1.0])
    return np.array([0.0, 0.0])


# -- metric -------------------------------------------------------------------

def distance(p: ModelPoint, q: ModelPoint) -> float:
    if p.geometry is not q.geometry:
        raise GeometryError("points from different geometries")
    return embedded_distance(p.geometry, embed(p), embed(q))


def embedded_distance(geometry: Geometry, u, v) -> float:
    if geometry is Geometry.HYPERBOLIC:
        return math.acosh(max(1.0, -mdot(u, v)))
    if geometry is Geometry.SPHERICAL:
        return math.acos(min(1.0, max(-1.0, float(np.dot(u, v)))))
    return math.hypot(u[0] - v[0], u[1] - v[1])


def embedded_distance_many(geometry: Geometry, us: np.ndarray, v: np.ndarray) -> np.ndarray:
    if geometry is Geometry.HYPERBOLIC:
        return np.arccosh(np.maximum(1.0, -mdot_many(us, v)))
    if geometry is Geometry.SPHERICAL:
        return np.arccos(np.clip(us @ v, -1.0, 1.0))
    return np.hypot(us[..., 0] - v[0], us[..., 1] - v[1])


def midpoint(p: ModelPoint, q: ModelPoint) -> ModelPoint:
    """Geodesic midpoint (shorter arc on the sphere)."""
    g = p.geometry
    u, v = embed(p), embed(q)
    if g is Geometry.HYPERBOLIC:
        return unembed(normalize_point(u + v), p.chart)
    if g is Geometry.SPHERICAL:
        w = u + v
        n = np.linalg.norm(w)
        if n < 1e-14:
            raise GeometryError("midpoint of antipodal points is undefined")
        return unembed(w / n, p.chart)
    return ModelPoint(Chart.CARTESIAN, (p.x + q.x) / 2.0, (p.y + q.y) / 2.0)


def antipode_guard(p) -> bool:
    """True iff a spherical point lies in the open southern hemisphere.

    Accepts either a ModelPoint or an embedded unit 3-vector (the latter is
    the only way to name points, such as the north pole, that no southern
    chart can represent).
    """
    if isinstance(p, ModelPoint):
        if p.geometry is not Geometry.SPHERICAL:
            raise GeometryError("antipode guard applies to spherical points")
        u = embed(p)
    else:
        u = np.asarray(p, dtype=float)
    return bool(u[2] < 0.0)


# -- geodesics ----------------------------------------------------------------

@dataclass(frozen=True)
class Geodesic:
    """A complete geodesic in normal form.

    hyperbolic: the ordered pair (theta1 < theta2) of ideal angles;
    spherical:  a unit normal of the great circle;
    euclidean:  unit normal (nx, ny) and offset c of the line n.x = c.
    """

    geometry: Geometry
    data: tuple

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_ideal(a: IdealPoint, b: IdealPoint) -> "Geodesic":
        t1, t2 = a.theta, b.theta
        if abs((t1 - t2) % (2.0 * math.pi)) < 1e-15:
            raise GeometryError("ideal endpoints must be distinct")
        lo, hi = min(t1, t2), max(t1, t2)
        return Geodesic(Geometry.HYPERBOLIC, (lo, hi))

    @staticmethod
    def from_normal(geometry: Geometry, normal, offset: float = 0.0) -> "Geodesic":
        n = np.asarray(normal, dtype=float)
        if geometry is Geometry.HYPERBOLIC:
            n = normalize_spacelike(n)
            rho = math.hypot(n[0], n[1])
            phi = math.atan2(n[1], n[0])
            half = math.acos(min(1.0, max(-1.0, n[2] / rho)))
            return Geodesic.from_ideal(IdealPoint(phi - half), IdealPoint(phi + half))
        if geometry is Geometry.SPHERICAL:
            n = n / np.linalg.norm(n)
            i = int(np.argmax(np.abs(n)))
            if n[i] < 0:
                n = -n
            return Geodesic(Geometry.SPHERICAL, (n[0], n[1], n[2]))
        nx, ny = n[0], n[1]
        h = math.hypot(nx, ny)
        nx, ny, c = nx / h, ny / h, offset / h
        if ny < 0 or (ny == 0 and nx < 0):
            nx, ny, c = -nx, -ny, -c
        return Geodesic(Geometry.EUCLIDEAN, (nx, ny, c))

    @staticmethod
    def through(p: ModelPoint, q: ModelPoint) -> "Geodesic":
        g = p.geometry
        if g is not q.geometry:
            raise GeometryError("points from different geometries")
        u, v = embed(p), embed(q)
        if g is Geometry.HYPERBOLIC:
            return Geodesic.from_normal(g, mcross(u, v))
        if g is Geometry.SPHERICAL:
            return Geodesic.from_normal(g, np.cross(u, v))
        d = v - u
        n = np.array([-d[1], d[0]])
        return Geodesic.from_normal(g, n, float(np.dot(n, u)))

    @staticmethod
    def through_ideal(q: IdealPoint, p: ModelPoint) -> "Geodesic":
        """Hyperbolic geodesic through a finite point and an ideal point."""
        if p.geometry is not Geometry.HYPERBOLIC:
            raise GeometryError("ideal points only exist in the hyperbolic plane")
        return Geodesic.from_normal(
            Geometry.HYPERBOLIC, mcross(embed(p), ideal_vector(q.theta))
        )

    # -- normal-form accessors ------------------------------------------------

    @property
    def ideal_angles(self) -> tuple:
        if self.geometry is not Geometry.HYPERBOLIC:
            raise GeometryError("only hyperbolic geodesics carry ideal angles")
        return self.data

    def normal(self) -> np.ndarray:
        """Unit (space-like) normal in embedded coordinates.

        The sign convention is fixed by the normal form, so signed distances
        taken against the same Geodesic value are mutually consistent.
        """
        if self.geometry is Geometry.HYPERBOLIC:
            t1, t2 = self.data
            return normalize_spacelike(mcross(ideal_vector(t1), ideal_vector(t2)))
        if self.geometry is Geometry.SPHERICAL:
            return np.array(self.data)
        return np.array(self.data[:2])

    def close_to(self, other: "Geodesic", eps: float = 1e-9) -> bool:
        """Same unoriented geodesic, within eps."""
        if self.geometry is not other.geometry:
            return False
        if self.geometry is Geometry.EUCLIDEAN:
            n1, n2 = np.array(self.data), np.array(other.data)
            return bool(np.allclose(n1, n2, atol=eps) or np.allclose(n1, -n2, atol=eps))
        n1, n2 = self.normal(), other.normal()
        return bool(np.allclose(n1, n2, atol=eps) or np.allclose(n1, -n2, atol=eps))


def signed_distance_to_geodesic(p: ModelPoint, line: Geodesic, side: int = +1) -> float:
    """Signed distance, positive on the chosen side of the geodesic."""
    if p.geometry is not line.geometry:
        raise GeometryError("point and geodesic from different geometries")
    return side * embedded_signed_distance(line.geometry, embed(p), line)


def embedded_signed_distance(geometry: Geometry, u, line: Geodesic) -> float:
    if geometry is Geometry.HYPERBOLIC:
        return math.asinh(mdot(u, line.normal()))
    if geometry is Geometry.SPHERICAL:
        return math.asin(min(1.0, max(-1.0, float(np.dot(u, line.normal())))))
    nx, ny, c = line.data
    return u[0] * nx + u[1] * ny - c


def foot_of_perpendicular(p: ModelPoint, line: Geodesic) -> ModelPoint:
    """Nearest point of a geodesic (orthogonal projection)."""
    g = p.geometry
    u = embed(p)
    if g is Geometry.HYPERBOLIC:
        n = line.normal()
        return unembed(normalize_point(u - mdot(u, n) * n), p.chart)
    if g is Geometry.SPHERICAL:
        n = line.normal()
        w = u - float(np.dot(u, n)) * n
        nn = np.linalg.norm(w)
        if nn < 1e-14:
            raise GeometryError("pole of the great circle has no unique foot")
        return unembed(w / nn, p.chart)
    nx, ny, c = line.data
    d = u[0] * nx + u[1] * ny - c
    return ModelPoint(Chart.CARTESIAN, u[0] - d * nx, u[1] - d * ny)


def perpendicular_at(line: Geodesic, p: ModelPoint) -> Geodesic:
    """The geodesic through p orthogonal to `line` (p need not lie on it)."""
    foot = foot_of_perpendicular(p, line)
    g = line.geometry
    f = embed(foot)
    n = line.normal()
    if g is Geometry.HYPERBOLIC:
        return Geodesic.from_normal(g, mcross(f, n))
    if g is Geometry.SPHERICAL:
        return Geodesic.from_normal(g, np.cross(f, n))
    t = np.array([-n[1], n[0]])  # direction of `line`
    return Geodesic.from_normal(g, t, float(np.dot(t, f)))


def perpendicular_from_ideal(q: IdealPoint, line: Geodesic) -> Geodesic:
    """The unique hyperbolic geodesic through ideal point q orthogonal to line."""
    if line.geometry is not Geometry.HYPERBOLIC:
        raise GeometryError("ideal perpendicular is hyperbolic-only")
    ell = ideal_vector(q.theta)
    n = line.normal()
    if abs(mdot(ell, n)) < 1e-13:
        raise GeometryError("ideal point lies on the geodesic")
    return Geodesic.from_normal(Geometry.HYPERBOLIC, mcross(ell, n))


def geodesic_relation(a: Geodesic, b: Geodesic):
    """Mutual position of two hyperbolic geodesics.

    Returns one of
      ("equal", None)
      ("intersect", crossing ModelPoint)
      ("parallel", shared IdealPoint)
      ("ultraparallel", (distance, common perpendicular Geodesic))
    """
    if a.geometry is not Geometry.HYPERBOLIC or b.geometry is not Geometry.HYPERBOLIC:
        raise GeometryError("relation classification is hyperbolic-only")
    n1, n2 = a.normal(), b.normal()
    c = mdot(n1, n2)
    if a.close_to(b):
        return ("equal", None)
    w = mcross(n1, n2)
    s = mdot(w, w)
    if abs(c) < 1.0 - 1e-12:
        return ("intersect", unembed(normalize_point(w), Chart.POINCARE))
    if abs(c) < 1.0 + 1e-12 or abs(s) < 1e-12:
        return ("parallel", IdealPoint(ideal_angle(w if w[2] > 0 else -w)))
    dist = math.acosh(abs(c))
    return ("ultraparallel", (dist, Geodesic.from_normal(Geometry.HYPERBOLIC, w)))
