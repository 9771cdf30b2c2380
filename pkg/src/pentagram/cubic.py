"""The pencil of plane cubics carrying the level sets of ``psi``.

    V(x, y, z) = x^3 - y^3 - x^2 y + x y^2 - x z^2 + y z^2 - lam x y z

is the homogenised numerator of ``psi(x, y) - lam``.  Every member passes
through [1:1:0] and [+-i:1:0]; it is singular only for lam in
{0, 2, -2, 4i sqrt2, -4i sqrt2}.  For the remaining real lam the real
locus is two smooth loops, one bounded and one through [1:1:0], both
symmetric under reflection in the antidiagonal L = {y = -x}.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np
from skimage.measure import find_contours

from .errors import ResolutionTooCoarse, SingularLevel
from .projective import HomogeneousPoint

SINGULAR_REAL = (-2, 0, 2)
SINGULAR_COMPLEX = (4j * math.sqrt(2), -4j * math.sqrt(2))
POINTS_AT_INFINITY = ((1, 1, 0), (1j, 1, 0), (-1j, 1, 0))

DEFAULT_WINDOW = 6.0
DEFAULT_RESOLUTION = 2048


@dataclass(frozen=True)
class CubicLevel:
    lam: object

    def V(self, x, y, z=1):
        return cubic_value(self.lam, x, y, z)

    def grad(self, x, y, z=1):
        return cubic_gradient(self.lam, x, y, z)


def _lam(level):
    return level.lam if isinstance(level, CubicLevel) else level


def _xyz(p):
    if isinstance(p, HomogeneousPoint):
        return p.coords
    if len(p) == 2:
        return (p[0], p[1], 1)
    return tuple(p)


def cubic_value(lam, x, y, z=1):
    """V at (x, y, z); works on scalars, complex numbers and arrays."""
    return x**3 - y**3 - x * x * y + x * y * y - x * z * z + y * z * z - lam * x * y * z


def cubic_gradient(lam, x, y, z=1):
    vx = -lam * y * z + 3 * x * x - 2 * x * y + y * y - z * z
    vy = -lam * x * z - x * x + 2 * x * y - 3 * y * y + z * z
    vz = 2 * z * (y - x) - lam * x * y
    return vx, vy, vz


def evaluate_V(level, p):
    if isinstance(_lam(level), int):
        level = Fraction(_lam(level))
    return cubic_value(_lam(level), *_xyz(p))


def gradient_V(level, p):
    return cubic_gradient(_lam(level), *_xyz(p))


# -- singular members -------------------------------------------------------


def branch_conditions(lam):
    """The two scalars whose vanishing decides singularity off infinity.

    On y = -x the gradient can only vanish at x = 4/lam, where V equals
    the first value; on y = x - lam/2, V is the constant second value.
    """
    first = None if lam == 0 else 256 / lam**3 + 8 / lam
    second = lam * (4 - lam * lam) / 8
    return first, second


@dataclass(frozen=True)
class SingularityReport:
    singular: bool
    witness: tuple | None = None
    branch: str | None = None


def _grad_norm(lam, p):
    return max(abs(c) for c in cubic_gradient(lam, *p))


def is_singular_level(lam, tol: float = 1e-9) -> SingularityReport:
    """Decide whether E_lam is singular, returning a singular point if so.

    ``lam`` may be real or complex.  ``tol`` is the distance in the lam
    plane from a singular parameter that still counts as singular.
    """
    lam = complex(lam) if isinstance(lam, complex) else lam
    # points at infinity: V_z = -lam x y and V_x = 3x^2 - 2xy + y^2 never both vanish
    for p in POINTS_AT_INFINITY:
        if _grad_norm(lam, p) == 0:
            return SingularityReport(True, p, "infinity")

    if lam != 0 and min(abs(lam - r) for r in SINGULAR_COMPLEX) <= tol:
        r = min(SINGULAR_COMPLEX, key=lambda r: abs(lam - r))
        x = 4 / r
        return SingularityReport(True, (x, -x, 1), "antidiagonal")

    near = [r for r in SINGULAR_REAL if abs(lam - r) <= tol]
    if near:
        r = near[0]
        # on y = x - r/2, V_x = 2x^2 - r x + 3r^2/4 - 1
        h = r / 2
        a, b, c = 2, -r, 3 * r * r / 4 - 1
        disc = cmath.sqrt(b * b - 4 * a * c)
        best = None
        for x in ((-b + disc) / (2 * a), (-b - disc) / (2 * a)):
            x = x.real if abs(x.imag) < 1e-15 else x
            p = (x, x - h, 1)
            err = max(_grad_norm(r, p), abs(cubic_value(r, *p)))
            if best is None or err < best[0]:
                best = (err, p)
        return SingularityReport(True, best[1], "y=x-lam/2")
    return SingularityReport(False)


# -- intersections with the antidiagonal ------------------------------------


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def antidiagonal_roots(lam) -> tuple:
    """x-coordinates of E_lam ∩ {y = -x}: 0 and (-lam ± sqrt(lam^2 + 32))/8."""
    if isinstance(lam, Rational):
        lam = Fraction(lam)
        s = _rational_sqrt(lam * lam + 32)
        if s is not None:
            return (Fraction(0), (-lam + s) / 8, (-lam - s) / 8)
    s = math.sqrt(float(lam) ** 2 + 32)
    return (0.0, (-float(lam) + s) / 8, (-float(lam) - s) / 8)


def antidiagonal_points(lam) -> list[HomogeneousPoint]:
    return [HomogeneousPoint.affine(x, -x) for x in antidiagonal_roots(lam)]


# -- tracing the real locus -------------------------------------------------


@dataclass
class RealCurveComponent:
    """One connected component of the real locus, as an affine polyline."""

    polyline: np.ndarray
    bounded: bool
    l_crossings: list = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return self.bounded

    def max_residual(self, lam) -> float:
        x, y = self.polyline[:, 0], self.polyline[:, 1]
        return float(np.max(np.abs(cubic_value(lam, x, y, 1.0))))


def check_real_level(lam, margin: float = 1e-6) -> float:
    lam = float(lam)
    for r in SINGULAR_REAL:
        if abs(lam - r) <= margin:
            raise SingularLevel(f"lambda = {lam} is within {margin} of singular value {r}")
    return lam


def newton_polish(lam, pts: np.ndarray, steps: int = 1) -> np.ndarray:
    """Move affine points onto V = 0 along the gradient."""
    x, y = pts[:, 0].copy(), pts[:, 1].copy()
    for _ in range(steps):
        v = cubic_value(lam, x, y, 1.0)
        gx, gy, _ = cubic_gradient(lam, x, y, 1.0)
        g2 = gx * gx + gy * gy
        with np.errstate(divide="ignore", invalid="ignore"):
            k = np.where(g2 > 0, v / g2, 0.0)
        x -= k * gx
        y -= k * gy
    return np.column_stack([x, y])


def _antidiagonal_crossings(lam, poly: np.ndarray, closed: bool) -> list:
    s = poly[:, 0] + poly[:, 1]
    pts = poly
    if closed:
        pts = np.vstack([poly, poly[:1]])
        s = np.append(s, s[0])
    out = []
    for i in np.nonzero(np.sign(s[:-1]) * np.sign(s[1:]) <= 0)[0]:
        a, b = pts[i], pts[i + 1]
        if s[i] == s[i + 1]:
            continue
        t = s[i] / (s[i] - s[i + 1])
        px, py = a + t * (b - a)
        x = (px - py) / 2
        # root of V(x, -x, 1) = x (4x^2 + lam x - 2) near the interpolated guess
        for _ in range(50):
            g = 4 * x**3 + lam * x * x - 2 * x
            dg = 12 * x * x + 2 * lam * x - 2
            dx = g / dg
            x -= dx
            if abs(dx) < 1e-16:
                break
        if not any(abs(x - c[0]) < 1e-9 for c in out):
            out.append((float(x), float(-x)))
    return out


def _links_through_infinity(lam, ends: np.ndarray, window: float) -> bool:
    """Both ends of an open piece lie on the real branch through [1:1:0].

    In the chart (u, w) -> [1:u:w] the branch is a graph u(w) near w = 0;
    each end is solved for on that graph and compared.
    """
    ws = []
    for x, y in ends:
        if max(abs(x), abs(y)) < window * (1 - 1e-3):
            return False
        u, w = y / x, 1.0 / x
        ub = 1.0
        for _ in range(60):
            f = 1 - ub**3 - ub + ub * ub - w * w + ub * w * w - lam * ub * w
            df = -3 * ub * ub - 1 + 2 * ub + w * w - lam * w
            step = f / df
            ub -= step
            if abs(step) < 1e-15:
                break
        if abs(ub - u) > 1e-3:
            return False
        ws.append(w)
    return ws[0] * ws[1] < 0


def trace_real_curve(
    lam, resolution: int = DEFAULT_RESOLUTION, window: float = DEFAULT_WINDOW, polish_steps: int = 3
) -> list[RealCurveComponent]:
    """Trace the real affine locus of E_lam on [-window, window]^2.

    Components come back bounded first, then the unbounded one.
    """
    lam = check_real_level(lam)
    if resolution < 256:
        raise ValueError("resolution must be at least 256")
    g = np.linspace(-window, window, resolution + 1)
    X, Y = np.meshgrid(g, g, indexing="ij")
    F = cubic_value(lam, X, Y, 1.0)
    h = g[1] - g[0]
    comps = []
    open_pieces = []
    for c in find_contours(F, 0.0):
        pts = -window + c * h  # rows index x, columns index y
        closed = np.allclose(pts[0], pts[-1])
        if closed:
            pts = pts[:-1]
        pts = newton_polish(lam, pts, polish_steps)
        if closed:
            comps.append(RealCurveComponent(pts, True, _antidiagonal_crossings(lam, pts, True)))
        else:
            open_pieces.append(pts)
    if len(open_pieces) != 1:
        raise ResolutionTooCoarse(f"expected one open piece in the window, found {len(open_pieces)}")
    piece = open_pieces[0]
    if not _links_through_infinity(lam, piece[[0, -1]], window):
        raise ResolutionTooCoarse("open piece does not close up through [1:1:0]")
    comps.append(RealCurveComponent(piece, False, _antidiagonal_crossings(lam, piece, False)))
    return comps


# -- projective continuation ------------------------------------------------


def _unit(v):
    return v / np.linalg.norm(v)


def _project_to_curve(lam, p):
    for _ in range(8):
        v = cubic_value(lam, *p)
        gr = np.array(cubic_gradient(lam, *p))
        gr -= np.dot(gr, p) * p  # keep the step tangent to the sphere
        p = _unit(p - v * gr / np.dot(gr, gr))
        if abs(v) < 1e-15:
            break
    return p


def trace_projective_loop(lam, seed, step: float = 2e-3, max_steps: int = 200_000) -> np.ndarray:
    """Follow the component of E_lam through ``seed`` on the unit sphere.

    Returns unit vectors in order, ending just before the loop closes at
    ``seed`` or ``-seed`` (the loop is closed in the projective plane, so
    the odd branch lifts to a path between antipodes).  Works equally for
    the bounded and the unbounded component.
    """
    lam = float(lam)
    p = _unit(np.array(_xyz(seed), dtype=float))
    p = _project_to_curve(lam, p)
    start = p.copy()
    pts = [p]
    travelled = 0.0
    for _ in range(max_steps):
        t = np.cross(p, cubic_gradient(lam, *p))
        t = _unit(np.asarray(t, dtype=float))
        q = _project_to_curve(lam, _unit(p + step * t))
        travelled += np.linalg.norm(q - p)
        p = q
        if travelled > 10 * step:
            d = min(np.linalg.norm(p - start), np.linalg.norm(p + start))
            if d < 0.75 * step:
                return np.array(pts)
        pts.append(p)
    raise ResolutionTooCoarse("continuation did not close up")
