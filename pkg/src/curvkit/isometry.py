"""Rigid motions of the three geometries.

Hyperbolic motions are kept in disc-automorphism form

    z  |->  c (z - alpha) / (1 - conj(alpha) z),        |c| = 1, |alpha| < 1,

optionally pre-composed with conjugation (the `reflect` flag).  Euclidean
motions are angle + translation (+ optional conjugation), spherical ones are
orthogonal 3x3 matrices acting on embedded unit vectors.

Composition of hyperbolic motions goes through the 2x2 complex matrix
representation and is re-normalized back to (c, alpha) afterwards.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .geom import (
    CONFORMAL_CHART,
    Chart,
    Geodesic,
    Geometry,
    GeometryError,
    IdealPoint,
    ModelPoint,
    convert,
    embed,
    embedded_distance,
    embedded_distance_many,
    ideal_vector,
    mcross,
    mdot,
    normalize_point,
    normalize_spacelike,
    unembed,
)


@dataclass(frozen=True)
class Isometry:
    geometry: Geometry
    # hyperbolic: (c, alpha) complex pair; euclidean: (angle, translation);
    # spherical: 3x3 orthogonal matrix (held as a tuple of tuples).
    params: tuple
    reflect: bool = False

    def __post_init__(self):
        if self.geometry is Geometry.HYPERBOLIC:
            c, alpha = self.params
            if abs(abs(c) - 1.0) > tol.ISOMETRY_PARAM:
                raise GeometryError("|c| must be 1")
            if abs(alpha) >= 1.0:
                raise GeometryError("|alpha| must be < 1")
        elif self.geometry is Geometry.SPHERICAL:
            m = np.array(self.params)
            if np.max(np.abs(m @ m.T - np.eye(3))) > 10 * tol.ISOMETRY_PARAM:
                raise GeometryError("matrix is not orthogonal")

    # convenience accessors ---------------------------------------------------

    @property
    def c(self) -> complex:
        return self.params[0]

    @property
    def alpha(self) -> complex:
        return self.params[1]

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.params)

    def is_identity(self, eps: float = 1e-12) -> bool:
        if self.reflect and self.geometry is not Geometry.SPHERICAL:
            return False
        if self.geometry is Geometry.HYPERBOLIC:
            return abs(self.c - 1.0) < eps and abs(self.alpha) < eps
        if self.geometry is Geometry.EUCLIDEAN:
            ang, t = self.params
            return abs(cmath.exp(1j * ang) - 1.0) < eps and abs(t) < eps
        return bool(np.max(np.abs(self.matrix - np.eye(3))) < eps)


def identity(geometry: Geometry) -> Isometry:
    if geometry is Geometry.HYPERBOLIC:
        return Isometry(geometry, (1.0 + 0.0j, 0.0 + 0.0j))
    if geometry is Geometry.EUCLIDEAN:
        return Isometry(geometry, (0.0, 0.0 + 0.0j))
    return Isometry(geometry, tuple(map(tuple, np.eye(3))))


def mobius(c: complex, alpha: complex, reflect: bool = False) -> Isometry:
    c = c / abs(c)
    return Isometry(Geometry.HYPERBOLIC, (complex(c), complex(alpha)), reflect)


# -- hyperbolic matrix form ---------------------------------------------------

def _mobius_matrix(g: Isometry) -> np.ndarray:
    c, a = g.c, g.alpha
    return np.array([[c, -c * a], [-np.conj(a), 1.0]], dtype=complex)


def _from_mobius_matrix(m: np.ndarray, reflect: bool) -> Isometry:
    a, b = m[0]
    c2, d = m[1]
    alpha = -b / a
    c = a / d
    return mobius(c, alpha, reflect)


def _apply_mobius(g: Isometry, z: complex) -> complex:
    if g.reflect:
        z = z.conjugate()
    c, a = g.c, g.alpha
    return c * (z - a) / (1.0 - np.conj(a) * z)


def _apply_mobius_many(g: Isometry, z: np.ndarray) -> np.ndarray:
    if g.reflect:
        z = np.conj(z)
    c, a = g.c, g.alpha
    return c * (z - a) / (1.0 - np.conj(a) * z)


# -- action -------------------------------------------------------------------

def apply(g: Isometry, p: ModelPoint) -> ModelPoint:
    """Move a point; the result is reported in the point's own chart."""
    if g.geometry is not p.geometry:
        raise GeometryError("isometry and point from different geometries")
    if g.geometry is Geometry.HYPERBOLIC:
        q = convert(p, Chart.POINCARE)
        w = _apply_mobius(g, q.as_complex())
        return convert(ModelPoint(Chart.POINCARE, w.real, w.imag), p.chart)
    if g.geometry is Geometry.EUCLIDEAN:
        ang, t = g.params
        z = p.as_complex()
        if g.reflect:
            z = z.conjugate()
        w = cmath.exp(1j * ang) * z + t
        return ModelPoint(Chart.CARTESIAN, w.real, w.imag)
    u = g.matrix @ embed(p)
    return unembed(u, p.chart)


def apply_embedded(g: Isometry, u: np.ndarray) -> np.ndarray:
    """Action on embedded coordinates (vectorized over leading axes)."""
    if g.geometry is Geometry.HYPERBOLIC:
        z = u[..., 0] / (1.0 + u[..., 2]) + 1j * (u[..., 1] / (1.0 + u[..., 2]))
        w = _apply_mobius_many(g, z)
        s = 1.0 - np.abs(w) ** 2
        return np.stack([2 * w.real / s, 2 * w.imag / s, (2.0 - s) / s], axis=-1)
    if g.geometry is Geometry.EUCLIDEAN:
        ang, t = g.params
        z = u[..., 0] + 1j * u[..., 1]
        if g.reflect:
            z = np.conj(z)
        w = np.exp(1j * ang) * z + t
        return np.stack([w.real, w.imag], axis=-1)
    return u @ g.matrix.T


def apply_ideal(g: Isometry, q: IdealPoint) -> IdealPoint:
    """Boundary action of a hyperbolic isometry."""
    if g.geometry is not Geometry.HYPERBOLIC:
        raise GeometryError("ideal points are hyperbolic-only")
    z = cmath.exp(1j * q.theta)
    if g.reflect:
        z = z.conjugate()
    c, a = g.c, g.alpha
    w = c * (z - a) / (1.0 - complex(a).conjugate() * z)
    return IdealPoint(cmath.phase(w))


def apply_geodesic(g: Isometry, line: Geodesic) -> Geodesic:
    if g.geometry is not line.geometry:
        raise GeometryError("isometry and geodesic from different geometries")
    if g.geometry is Geometry.HYPERBOLIC:
        t1, t2 = line.ideal_angles
        return Geodesic.from_ideal(apply_ideal(g, IdealPoint(t1)), apply_ideal(g, IdealPoint(t2)))
    if g.geometry is Geometry.SPHERICAL:
        return Geodesic.from_normal(g.geometry, g.matrix @ line.normal())
    nx, ny, c = line.data
    p = apply(g, ModelPoint(Chart.CARTESIAN, nx * c, ny * c))
    q = apply(g, ModelPoint(Chart.CARTESIAN, nx * c - ny, ny * c + nx))
    return Geodesic.through(p, q)


# -- group operations ---------------------------------------------------------

def compose(g: Isometry, h: Isometry) -> Isometry:
    """The motion p -> g(h(p))."""
    if g.geometry is not h.geometry:
        raise GeometryError("isometries from different geometries")
    if g.geometry is Geometry.HYPERBOLIC:
        mg, mh = _mobius_matrix(g), _mobius_matrix(h)
        m = mg @ (np.conj(mh) if g.reflect else mh)
        return _from_mobius_matrix(m, g.reflect != h.reflect)
    if g.geometry is Geometry.EUCLIDEAN:
        ag, tg = g.params
        ah, th = h.params
        sign = -1.0 if g.reflect else 1.0
        ang = (ag + sign * ah) % (2.0 * math.pi)
        th_c = th.conjugate() if g.reflect else th
        t = cmath.exp(1j * ag) * th_c + tg
        return Isometry(Geometry.EUCLIDEAN, (ang, t), g.reflect != h.reflect)
    return Isometry(Geometry.SPHERICAL, tuple(map(tuple, g.matrix @ h.matrix)))


def inverse(g: Isometry) -> Isometry:
    if g.geometry is Geometry.HYPERBOLIC:
        m = _mobius_matrix(g)
        minv = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
        if g.reflect:
            minv = np.conj(minv)
        return _from_mobius_matrix(minv, g.reflect)
    if g.geometry is Geometry.EUCLIDEAN:
        ang, t = g.params
        if not g.reflect:
            return Isometry(g.geometry, ((-ang) % (2 * math.pi), -cmath.exp(-1j * ang) * t))
        # (e^{ia} conj(z) + t)^{-1}: z -> e^{ia} conj(z - t)
        return Isometry(
            g.geometry, (ang, -cmath.exp(1j * ang) * t.conjugate()), True
        )
    return Isometry(Geometry.SPHERICAL, tuple(map(tuple, g.matrix.T)))


def orientation_preserving(g: Isometry) -> bool:
    if g.geometry is Geometry.SPHERICAL:
        return bool(np.linalg.det(g.matrix) > 0)
    return not g.reflect


# -- convergence metric -------------------------------------------------------

def _polar_grid(geometry: Geometry, radius: float, n_angles: int = 24, n_radii: int = 16):
    """Deterministic polar sample of the closed metric ball about the centre."""
    ang = 2.0 * math.pi * np.arange(n_angles) / n_angles
    rad = radius * np.arange(1, n_radii + 1) / n_radii
    dirs = np.column_stack([np.cos(ang), np.sin(ang)])
    pts = []
    for r in rad:
        if geometry is Geometry.HYPERBOLIC:
            rho = math.tanh(r / 2.0)  # conformal radius
            for d in dirs:
                x, y = rho * d
                s = 1.0 - (x * x + y * y)
                pts.append([2 * x / s, 2 * y / s, (2.0 - s) / s])
        elif geometry is Geometry.SPHERICAL:
            for d in dirs:
                pts.append([math.sin(r) * d[0], math.sin(r) * d[1], -math.cos(r)])
        else:
            for d in dirs:
                pts.append([r * d[0], r * d[1]])
    return np.array(pts)


def uniform_metric(g: Isometry, h: Isometry, compact_radius: float) -> float:
    """sup of d(gx, hx) over a fixed polar grid of the ball of given radius."""
    if compact_radius <= 0:
        raise GeometryError("compact radius must be positive")
    if g.geometry is not h.geometry:
        raise GeometryError("isometries from different geometries")
    grid = _polar_grid(g.geometry, compact_radius)
    gu = apply_embedded(g, grid)
    hu = apply_embedded(h, grid)
    if g.geometry is Geometry.HYPERBOLIC:
        d = np.arccosh(
            np.maximum(
                1.0,
                -(gu[:, 0] * hu[:, 0] + gu[:, 1] * hu[:, 1] - gu[:, 2] * hu[:, 2]),
            )
        )
    elif g.geometry is Geometry.SPHERICAL:
        d = np.arccos(np.clip(np.sum(gu * hu, axis=1), -1.0, 1.0))
    else:
        d = np.hypot(gu[:, 0] - hu[:, 0], gu[:, 1] - hu[:, 1])
    return float(np.max(d))


@dataclass(frozen=True)
class IsometryDistance:
    compact_radius: float
    value: float


def isometry_distance(g: Isometry, h: Isometry, compact_radius: float) -> IsometryDistance:
    return IsometryDistance(compact_radius, uniform_metric(g, h, compact_radius))


# -- elementary motions -------------------------------------------------------

def reflection_across(line: Geodesic) -> Isometry:
    """Orientation-reversing involution fixing the geodesic pointwise."""
    g = line.geometry
    if g is Geometry.HYPERBOLIC:
        t1, t2 = line.ideal_angles
        delta = (t2 - t1) / 2.0
        mu = (t1 + t2) / 2.0
        if abs(math.sin(delta)) > 1.0 - 1e-13:
            # diameter: z -> e^{2 i mu} conj(z)
            m = np.array([[cmath.exp(2j * mu), 0.0], [0.0, 1.0]])
            return _from_mobius_matrix(m, True)
        center = cmath.exp(1j * mu) / math.cos(delta)
        # inversion in the orthogonal circle, as matrix acting on conj(z)
        m = np.array([[center, -1.0], [1.0, -center.conjugate()]])
        return _from_mobius_matrix(m, True)
    if g is Geometry.SPHERICAL:
        n = line.normal()
        return Isometry(g, tuple(map(tuple, np.eye(3) - 2.0 * np.outer(n, n))))
    nx, ny, c = line.data
    # reflect across n.x = c: z -> e^{2 i phi} conj(z) + t with phi = angle of line
    phi = math.atan2(ny, nx) + math.pi / 2.0
    p0 = complex(nx * c, ny * c)
    ang = 2.0 * phi
    t = p0 - cmath.exp(1j * ang) * p0.conjugate()
    return Isometry(Geometry.EUCLIDEAN, (ang % (2 * math.pi), t), True)


def rotation_about(p: ModelPoint, angle: float) -> Isometry:
    g = p.geometry
    if g is Geometry.HYPERBOLIC:
        z = convert(p, Chart.POINCARE).as_complex()
        move = mobius(1.0, -z)  # 0 -> z
        rot = mobius(cmath.exp(1j * angle), 0.0)
        return compose(move, compose(rot, inverse(move)))
    if g is Geometry.EUCLIDEAN:
        z = p.as_complex()
        e = cmath.exp(1j * angle)
        return Isometry(g, (angle % (2 * math.pi), z - e * z))
    axis = embed(p)
    k = np.array(
        [[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]]
    )
    m = np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)
    return Isometry(g, tuple(map(tuple, m)))


def translation_along(line: Geodesic, length: float) -> Isometry:
    """Translation with the given axis (rotation of the sphere about its poles)."""
    g = line.geometry
    if g is Geometry.HYPERBOLIC:
        frame = frame_at_geodesic(line)
        shift = mobius(1.0, -math.tanh(length / 2.0))  # 0 -> tanh(length/2)
        return compose(frame, compose(shift, inverse(frame)))
    if g is Geometry.EUCLIDEAN:
        nx, ny, _ = line.data
        t = complex(-ny, nx) * length  # direction of the line
        return Isometry(g, (0.0, t))
    n = line.normal()
    pole = unembed(n if n[2] < 0 else -n, Chart.GNOMONIC)
    return rotation_about(pole, length)


def parabolic_about(q: IdealPoint, parameter: float) -> Isometry:
    """Parabolic motion fixing exactly the ideal point q."""
    s = parameter
    m = np.array([[2j - s, s], [-s, s + 2j]])  # parabolic fixing 1
    rot = np.array([[cmath.exp(1j * q.theta), 0], [0, 1.0]])
    rot_inv = np.array([[cmath.exp(-1j * q.theta), 0], [0, 1.0]])
    return _from_mobius_matrix(rot @ m @ rot_inv, False)


# -- frames and synthesis -----------------------------------------------------

def frame_at_geodesic(line: Geodesic) -> Isometry:
    """Orientation-preserving motion taking the real axis onto the geodesic.

    The centre goes to the point of the geodesic closest to the centre, and
    the positive real direction to the direction of increasing ideal angle
    order (theta1 -> theta2 in the stored normal form).
    """
    if line.geometry is not Geometry.HYPERBOLIC:
        raise GeometryError("frame_at_geodesic is hyperbolic-only")
    t1, t2 = line.ideal_angles
    a = cmath.exp(1j * t1)
    b = cmath.exp(1j * t2)
    mu = (t1 + t2) / 2.0
    delta = (t2 - t1) / 2.0
    z0 = cmath.exp(1j * mu) * math.tan(math.pi / 4 - min(delta, math.pi - delta) / 2)
    if delta > math.pi / 2:
        z0 = -z0
    move = mobius(1.0, z0)  # z0 -> 0
    b_img = _apply_mobius(move, b)
    rot = mobius(b_img.conjugate() / abs(b_img), 0.0)  # send image of b to +1
    return inverse(compose(rot, move))


def frame_at(p: ModelPoint, direction: float) -> Isometry:
    """Motion taking the centre to p with the x-axis turned to `direction`.

    `direction` is an angle in the conformal chart at p (true angle).
    """
    g = p.geometry
    if g is Geometry.HYPERBOLIC:
        z = convert(p, Chart.POINCARE).as_complex()
        move = mobius(1.0, -z)  # 0 -> z
        # derivative of move at 0 is positive real, so pre-rotate by direction
        return compose(move, mobius(cmath.exp(1j * direction), 0.0))
    if g is Geometry.EUCLIDEAN:
        return Isometry(g, (direction % (2 * math.pi), p.as_complex()))
    u = embed(p)
    # tangent frame at the south pole maps to tangent frame at u
    south = np.array([0.0, 0.0, -1.0])
    axis = np.cross(south, u)
    s = np.linalg.norm(axis)
    if s < 1e-15:
        base = np.eye(3) if u[2] < 0 else np.diag([1.0, -1.0, -1.0])
    else:
        axis = axis / s
        ang = math.acos(max(-1.0, min(1.0, float(np.dot(south, u)))))
        k = np.array(
            [[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]]
        )
        base = np.eye(3) + math.sin(ang) * k + (1 - math.cos(ang)) * (k @ k)
    spin = rotation_about(ModelPoint(Chart.GNOMONIC, 0.0, 0.0), direction).matrix
    return Isometry(g, tuple(map(tuple, base @ spin)))


def direction_of(p: ModelPoint, q: ModelPoint) -> float:
    """Initial direction (conformal-chart angle) of the geodesic from p to q."""
    g = p.geometry
    u, v = embed(p), embed(q)
    if g is Geometry.HYPERBOLIC:
        d = embedded_distance(g, u, v)
        t = (v - math.cosh(d) * u) / math.sinh(d)
        jac = np.array([1.0 + u[2], 1.0 + u[2]])
        dxy = t[:2] * (1.0 + u[2]) - u[:2] * t[2]
        return math.atan2(dxy[1], dxy[0])
    if g is Geometry.EUCLIDEAN:
        return math.atan2(q.y - p.y, q.x - p.x)
    d = embedded_distance(g, u, v)
    t = (v - math.cos(d) * u) / math.sin(d)
    dxy = t[:2] * (1.0 - u[2]) + u[:2] * t[2]  # stereographic pushforward (up to scale)
    return math.atan2(dxy[1], dxy[0])


def motion_taking(p1: ModelPoint, q1: ModelPoint, p2: ModelPoint, q2: ModelPoint,
                  reflect: bool = False) -> Isometry:
    """The unique motion with p1 -> p2 and the direction p1->q1 to p2->q2.

    With reflect=True the result is orientation-reversing.  Requires
    d(p1, q1) = d(p2, q2) if the pair (p2, q2) is to be matched exactly.
    """
    g = p1.geometry
    f1 = frame_at(p1, direction_of(p1, q1))
    f2 = frame_at(p2, direction_of(p2, q2))
    if not reflect:
        return compose(f2, inverse(f1))
    if g is Geometry.HYPERBOLIC:
        flip = mobius(1.0, 0.0, True)
    elif g is Geometry.EUCLIDEAN:
        flip = Isometry(g, (0.0, 0.0 + 0.0j), True)
    else:
        flip = Isometry(g, tuple(map(tuple, np.diag([1.0, -1.0, 1.0]))))
    return compose(f2, compose(flip, inverse(f1)))


# -- structure extraction -----------------------------------------------------

def embedded_matrix(g: Isometry) -> np.ndarray:
    """Linear representation on embedded coordinates (O(2,1) or O(3))."""
    if g.geometry is Geometry.SPHERICAL:
        return g.matrix
    if g.geometry is Geometry.HYPERBOLIC:
        basis = np.array([[0.1, 0, 0], [0, 0.1, 0], [0.05, 0.05, 0]])
        pts = np.array([normalize_point(b + np.array([0, 0, 1.0])) for b in basis])
        imgs = apply_embedded(g, pts)
        return np.linalg.solve(pts.T @ np.diag([1.0, 1, -1]) @ pts,
                               pts.T @ np.diag([1.0, 1, -1]) @ imgs).T
    raise GeometryError("no linear representation for Euclidean motions")


def reflection_axis(g: Isometry) -> Geodesic:
    """Axis of an orientation-reversing involution."""
    if orientation_preserving(g):
        raise GeometryError("not a reflection")
    if g.geometry is Geometry.EUCLIDEAN:
        ang, t = g.params
        e = cmath.exp(1j * ang / 2.0)
        glide = (t / e).real
        if abs(glide) > 1e-9:
            raise GeometryError("glide reflection has no axis")
        b = (t / (2j * e)).real
        p0 = 1j * b * e
        p1 = p0 + e
        return Geodesic.through(
            ModelPoint(Chart.CARTESIAN, p0.real, p0.imag),
            ModelPoint(Chart.CARTESIAN, p1.real, p1.imag),
        )
    m = embedded_matrix(g)
    vals, vecs = np.linalg.eig(m)
    idx = int(np.argmin(np.abs(vals + 1.0)))
    if abs(vals[idx] + 1.0) > 1e-6:
        raise GeometryError("not an involution across a geodesic")
    n = np.real(vecs[:, idx])
    return Geodesic.from_normal(g.geometry, n)


def fixed_point(g: Isometry) -> ModelPoint:
    """Fixed point of an elliptic (rotation-like) motion."""
    if g.geometry is Geometry.EUCLIDEAN:
        ang, t = g.params
        if g.reflect:
            raise GeometryError("reflections do not have an isolated fixed point")
        denom = 1.0 - cmath.exp(1j * ang)
        if abs(denom) < 1e-12:
            raise GeometryError("translation has no fixed point")
        z = t / denom
        return ModelPoint(Chart.CARTESIAN, z.real, z.imag)
    m = embedded_matrix(g)
    vals, vecs = np.linalg.eig(m)
    best = None
    for i in range(3):
        if abs(vals[i] - 1.0) < 1e-6:
            v = np.real(vecs[:, i])
            if g.geometry is Geometry.HYPERBOLIC and mdot(v, v) < 0:
                best = normalize_point(v)
            if g.geometry is Geometry.SPHERICAL:
                cand = v / np.linalg.norm(v)
                if best is None or abs(cand[2]) > abs(best[2]):
                    best = cand
    if best is None:
        raise GeometryError("no fixed point in the plane")
    if g.geometry is Geometry.SPHERICAL and best[2] > 0:
        best = -best  # report the representative in the chart hemisphere
    chart = Chart.POINCARE if g.geometry is Geometry.HYPERBOLIC else Chart.GNOMONIC
    return unembed(best, chart)


# -- serialization ------------------------------------------------------------

def to_json_dict(g: Isometry) -> dict:
    if g.geometry is Geometry.HYPERBOLIC:
        return {
            "geometry": "hyperbolic",
            "c": [g.c.real, g.c.imag],
            "alpha": [g.alpha.real, g.alpha.imag],
            "reflect": g.reflect,
        }
    if g.geometry is Geometry.EUCLIDEAN:
        ang, t = g.params
        return {
            "geometry": "euclidean",
            "angle": ang,
            "translation": [t.real, t.imag],
            "reflect": g.reflect,
        }
    return {"geometry": "spherical", "matrix": [list(r) for r in g.params]}


def from_json_dict(d: dict) -> Isometry:
    g = Geometry(d["geometry"])
    if g is Geometry.HYPERBOLIC:
        return Isometry(
            g,
            (complex(*d["c"]), complex(*d["alpha"])),
            bool(d.get("reflect", False)),
        )
    if g is Geometry.EUCLIDEAN:
        return Isometry(
            g, (d["angle"], complex(*d["translation"])), bool(d.get("reflect", False))
        )
    return Isometry(g, tuple(map(tuple, d["matrix"])))


def dumps(g: Isometry) -> str:
    return json.dumps(to_json_dict(g))


def loads(s: str) -> Isometry:
    return from_json_dict(json.loads(s))
