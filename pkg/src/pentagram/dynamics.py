"""Orbits of the (8,3) map, convexity escape, and rotation numbers."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from scipy.spatial import cKDTree

from .cubic import check_real_level, cubic_value, trace_projective_loop
from .errors import DegenerateInput, InvalidRotation, PoleOfMap, SeedOffCurve
from .octagon import (
    SymmetricOctagon,
    _xy,
    canonical_vertices,
    diagonal_step,
    dual_D,
    psi_or_none,
    t3,
    t3_arrays,
    t3_inverse,
    t3_inverse_arrays,
)

DEFAULT_CAP = 10_000


# -- convexity --------------------------------------------------------------


def _sign(v) -> int:
    return 1 if v > 0 else (-1 if v < 0 else 0)


def is_convex_affine(points) -> bool:
    """Strict convexity of a closed affine polygon given as (x, y) pairs.

    Every turn must have the same strict sign and the total turning must
    be one full revolution (this rules out star polygons).
    """
    n = len(points)
    turns = []
    total = 0.0
    for i in range(n):
        ax, ay = points[i]
        bx, by = points[(i + 1) % n]
        cx, cy = points[(i + 2) % n]
        ux, uy, vx, vy = bx - ax, by - ay, cx - bx, cy - by
        if (ux == 0 and uy == 0) or (vx == 0 and vy == 0):
            raise DegenerateInput("consecutive vertices coincide")
        c = ux * vy - uy * vx
        turns.append(_sign(c))
        total += math.atan2(float(c), float(ux * vx + uy * vy))
    if turns[0] == 0 or any(t != turns[0] for t in turns):
        return False
    return abs(abs(total) - 2 * math.pi) < 1e-6


def is_convex_octagon(o) -> bool:
    vs = canonical_vertices(o)
    return is_convex_affine([(v[0], v[1]) for v in vs])


def in_convex_region(x, y):
    """Vectorised membership in the convex region: the semidisk where
    the two distinct turn determinants x+y-1 and x+y-x^2-y^2 are positive."""
    return (x + y - 1 > 0) & (x + y - x * x - y * y > 0)


# -- orbits -----------------------------------------------------------------


@dataclass(frozen=True)
class OrbitStep:
    j: int
    x: object
    y: object
    psi: object
    convex: bool
    pole: bool = False


@dataclass
class OrbitRecord:
    steps: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def at(self, j: int) -> OrbitStep:
        for s in self.steps:
            if s.j == j:
                return s
        raise KeyError(j)

    @property
    def indices(self) -> list[int]:
        return [s.j for s in self.steps]

    def psi_values(self) -> list:
        return [s.psi for s in self.steps if s.psi is not None]

    def f_orbit(self) -> list[OrbitStep]:
        """Every second entry from j = 0 on: the orbit of T3 squared."""
        return [s for s in self.steps if s.j >= 0 and s.j % 2 == 0]


def _convex_or_false(o) -> bool:
    try:
        return is_convex_octagon(o)
    except DegenerateInput:
        return False


def _step_record(j, o, pole=False) -> OrbitStep:
    return OrbitStep(j, o.x, o.y, psi_or_none(o), _convex_or_false(o), pole)


def _walk(o, n: int, step) -> tuple[list[SymmetricOctagon], bool]:
    out = []
    for _ in range(n):
        try:
            o = step(o)
        except PoleOfMap:
            return out, True
        out.append(o)
    return out, False


def orbit(o, n_fwd: int, n_bwd: int = 0) -> OrbitRecord:
    """Iterates P_j for -n_bwd <= j <= n_fwd, ascending in j.

    A pole ends the walk in that direction; the last computed entry on
    that side carries ``pole=True``.
    """
    o = SymmetricOctagon(*_xy(o))
    fwd, fwd_pole = _walk(o, n_fwd, t3)
    bwd, bwd_pole = _walk(o, n_bwd, t3_inverse)
    steps = []
    for i, b in reversed(list(enumerate(bwd, 1))):
        steps.append(_step_record(-i, b, bwd_pole and i == len(bwd)))
    steps.append(_step_record(0, o, (fwd_pole and not fwd) or (bwd_pole and not bwd)))
    for i, f in enumerate(fwd, 1):
        steps.append(_step_record(i, f, fwd_pole and i == len(fwd)))
    return OrbitRecord(steps)


# -- escape times -----------------------------------------------------------


def _to_backend(o, dps):
    x, y = _xy(o)
    if dps is None:
        return float(x), float(y)
    return mpmath.mpf(x), mpmath.mpf(y)


def unit_circle_seed(degrees, dps: int | None = None) -> SymmetricOctagon:
    """(cos t, sin t), computed at ``dps`` digits when given.

    High-precision seeds must be built at the working precision: a
    double rounded onto the circle is already 1e-17 off it.
    """
    if dps is None:
        t = math.radians(degrees)
        return SymmetricOctagon(math.cos(t), math.sin(t))
    with mpmath.workdps(dps):
        t = mpmath.pi * mpmath.mpf(degrees) / 180
        return SymmetricOctagon(mpmath.cos(t), mpmath.sin(t))


def _first_exit(x, y, cap: int, step) -> int | None:
    o = (x, y)
    for j in range(1, cap + 1):
        try:
            o = step(o)
        except PoleOfMap:
            return j
        if not bool(in_convex_region(o.x, o.y)):
            return j
    return None


def escape_times(o, cap: int = DEFAULT_CAP, dps: int | None = None):
    """(first j > 0, last i < 0) with P_j outside the convex region.

    Either entry is ``None`` when the orbit stays convex up to ``cap``
    steps.  Landing on a pole counts as leaving.  Orbits near the saddle
    at the regular octagon lose about 0.77 decimal digits per step, so
    seeds on the unit circle need ``dps`` of roughly 0.8 * cap for their
    backward orbit to be trustworthy; ``dps=None`` runs in doubles.
    """
    with mpmath.workdps(dps or mpmath.mp.dps):
        x, y = _to_backend(o, dps)
        fwd = _first_exit(x, y, cap, t3)
        bwd = _first_exit(x, y, cap, t3_inverse)
    return fwd, (None if bwd is None else -bwd)


def dps_for_cap(cap: int) -> int:
    return int(0.8 * cap) + 50


def circle_backward_orbit(o, n: int) -> list[SymmetricOctagon]:
    """P_{-1}, ..., P_{-n} for a seed on the unit circle.

    Uses T3^{-1} = D T3 D with D swapping the circle and the diagonal,
    where T3 is the stable one-dimensional map x -> (1+x)/(1+2x).  This
    avoids the loss of precision of iterating T3^{-1} near its saddle.
    """
    u = dual_D(o).x  # D(o) lies on the diagonal
    out = []
    for _ in range(n):
        try:
            u = diagonal_step(u)
            out.append(dual_D((u, u)))
        except PoleOfMap:
            break
    return out


def circle_backward_escape(o, cap: int = DEFAULT_CAP) -> int | None:
    """Backward escape time of a unit-circle seed via the duality conjugacy."""
    orbit = circle_backward_orbit(o, cap)
    for j, p in enumerate(orbit, 1):
        if not bool(in_convex_region(p.x, p.y)):
            return -j
    return None if len(orbit) == cap else -(len(orbit) + 1)


@dataclass
class EscapeField:
    """Escape times on a grid.  -1 marks censored cells, 0 cells outside
    the convex region, and backward times are stored as positive counts."""

    xs: np.ndarray
    ys: np.ndarray
    fwd: np.ndarray
    bwd: np.ndarray
    cap: int

    @property
    def convex(self) -> np.ndarray:
        X, Y = np.meshgrid(self.xs, self.ys)
        return in_convex_region(X, Y)


def _escape_arrays(x: np.ndarray, y: np.ndarray, cap: int, step) -> np.ndarray:
    out = np.full(x.shape, -1, dtype=np.int64)
    alive = np.ones(x.shape, dtype=bool)
    for j in range(1, cap + 1):
        if not alive.any():
            break
        idx = np.nonzero(alive)[0]
        nx, ny, pole = step(x[idx], y[idx])
        left = pole | ~in_convex_region(nx, ny)
        out[idx[left]] = j
        alive[idx[left]] = False
        x[idx], y[idx] = nx, ny
    return out


def escape_arrays(x, y, cap: int = DEFAULT_CAP):
    """Forward and backward escape times of many float seeds at once."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    fwd = _escape_arrays(x.copy(), y.copy(), cap, t3_arrays)
    bwd = _escape_arrays(x.copy(), y.copy(), cap, t3_inverse_arrays)
    return fwd, bwd


def convexity_region_scan(
    window=(0.0, 1.25, 0.0, 1.25), resolution: int = 128, cap: int = DEFAULT_CAP
) -> EscapeField:
    xmin, xmax, ymin, ymax = window
    xs = np.linspace(xmin, xmax, resolution)
    ys = np.linspace(ymin, ymax, resolution)
    X, Y = np.meshgrid(xs, ys)
    inside = in_convex_region(X, Y)
    fwd = np.zeros(X.shape, dtype=np.int64)
    bwd = np.zeros(X.shape, dtype=np.int64)
    f, b = escape_arrays(X[inside], Y[inside], cap)
    fwd[inside] = f
    bwd[inside] = b
    return EscapeField(xs, ys, fwd, bwd, cap)


# -- the nontriviality residual ---------------------------------------------


def antidiagonal_fixed_residual(x):
    """Sum of the coordinates of T3^2(x, -x), in closed form."""
    x2 = x * x
    num = 4 * x2 * (-1 - 2 * x2 + x2**2 - 6 * x2**3 + 32 * x2**5)
    den = (-1 + x2 + 4 * x2**2) * (1 - 2 * x2 + x2**2 + 24 * x2**3 + 16 * x2**4)
    if den == 0 or (not isinstance(den, Fraction) and abs(den) < 1e-14):
        raise PoleOfMap(f"residual denominator vanishes at x = {x}")
    return num / den


X_STAR = 0.5 * math.sqrt((1 + math.sqrt(17)) / 2)


def order_two_level() -> float:
    """The level of psi through (x*, -x*), where T3^2 has order 2."""
    x = X_STAR
    return (2 * x) * (2 * x * x - 1) / (-x * x)


# -- rotation numbers -------------------------------------------------------


@dataclass(frozen=True)
class RotationEstimate:
    value: float
    cauchy_error: float
    n: int
    loop_length: float


def _loop_parameter(loop: np.ndarray):
    seg = np.linalg.norm(np.diff(np.vstack([loop, loop[:1]]), axis=0), axis=1)
    # closing segment may join p to -p on the odd branch
    last = min(np.linalg.norm(loop[-1] - loop[0]), np.linalg.norm(loop[-1] + loop[0]))
    seg[-1] = last
    s = np.concatenate([[0.0], np.cumsum(seg)[:-1]])
    return s / seg.sum(), seg.sum()


def _weighted_birkhoff(d: np.ndarray) -> float:
    n = len(d)
    t = (np.arange(n) + 0.5) / n
    w = np.exp(-1.0 / (t * (1 - t)))
    return float(np.sum(w * d) / np.sum(w))


def rotation_number_estimate(lam, seed, n: int = 2000, step: float = 2e-3) -> RotationEstimate:
    """Rotation number of T3^2 on the component of E_lam through ``seed``.

    The orbit is located on a traced copy of the loop and the per-step
    advance of the arc-length parameter is averaged (weighted Birkhoff
    average).  ``cauchy_error`` compares against the first half of the
    orbit.
    """
    lam = check_real_level(lam)
    sx, sy = (float(c) for c in _xy(seed))
    if abs(cubic_value(lam, sx, sy, 1.0)) > 1e-6:
        raise SeedOffCurve(f"|V| = {abs(cubic_value(lam, sx, sy, 1.0)):.3g} at seed")
    loop = trace_projective_loop(lam, (sx, sy, 1.0), step=step)
    param, length = _loop_parameter(loop)
    tree = cKDTree(np.vstack([loop, -loop]))
    params = np.concatenate([param, param])

    x, y = np.array([sx]), np.array([sy])
    pts = [(sx, sy)]
    for _ in range(n):
        for _ in range(2):
            x, y, pole = t3_arrays(x, y)
            if pole[0]:
                raise PoleOfMap("orbit hit a pole of T3")
        pts.append((x[0], y[0]))
    P = np.array([(a, b, 1.0) for a, b in pts])
    P /= np.linalg.norm(P, axis=1)[:, None]
    _, idx = tree.query(P)
    t = params[idx]
    d = np.mod(np.diff(t), 1.0)
    full = _weighted_birkhoff(d)
    half = _weighted_birkhoff(d[: len(d) // 2])
    return RotationEstimate(full, abs(full - half), n, float(length))


def seeds_on_level(lam, x: float) -> list[tuple[float, float]]:
    """Real points (x, y) with psi(x, y) = lam: roots of the cubic in y."""
    coeffs = [-1.0, x, -(x * x - 1) - lam * x, x * (x * x - 1)]
    ys = np.roots(coeffs)
    return [(x, float(r.real)) for r in ys if abs(r.imag) < 1e-12]


# -- minor subsets of the circle --------------------------------------------


def _frac(v):
    return v - math.floor(v)


@dataclass(frozen=True)
class CircleArcSet:
    """Union of open arcs (a, b) on R/Z; an arc with b < a wraps through 0."""

    arcs: tuple

    def __post_init__(self):
        arcs = tuple((_frac(a), _frac(b)) for a, b in self.arcs)
        object.__setattr__(self, "arcs", arcs)

    @staticmethod
    def _length(a, b):
        return b - a if b > a else 1 - a + b

    def contains(self, t) -> bool:
        t = _frac(t)
        for a, b in self.arcs:
            if (a < t < b) if a < b else (t > a or t < b):
                return True
        return False

    def span(self):
        """Length of the shortest closed arc containing the set."""
        if not self.arcs:
            return 0
        starts = sorted(self.arcs, key=lambda ab: ab[0])
        # largest gap between the end of one arc and the start of the next
        ends = [(a, a + self._length(a, b)) for a, b in starts]
        gaps = []
        for i, (a, e) in enumerate(ends):
            na = ends[(i + 1) % len(ends)][0]
            if i == len(ends) - 1:
                na += 1
            gaps.append(na - e)
        return 1 - max(max(gaps), 0)

    def is_minor(self) -> bool:
        return self.span() <= Fraction(1, 2)


def minor_orbit_escape(s: CircleArcSet, theta, p, cap: int = DEFAULT_CAP) -> int | None:
    """First k > 0 with p + k theta outside ``s``, or None up to ``cap``."""
    if _frac(theta) == 0:
        raise InvalidRotation("theta must be a nontrivial rotation")
    if not s.contains(p):
        raise ValueError("the starting point must lie in the set")
    for k in range(1, cap + 1):
        if not s.contains(p + k * theta):
            return k
    return None
