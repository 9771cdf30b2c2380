"""The 3-diagonal map on octagons with 4-fold rotational symmetry.

An octagon invariant under the quarter turn ``rho([x:y:z]) = [-y:x:z]``
(with rho advancing labels by 2) is, up to similarity, the polygon

    (1,0), (x,y), (0,1), (-y,x), (-1,0), (-x,-y), (0,-1), (y,-x)

so the whole system lives on the (x, y) plane.  All maps below are
rational functions.  They accept ``Fraction`` (exact), ``float`` and,
through the ``*_arrays`` variants, numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import DegenerateInput, PoleOfMap, UndefinedOnAxes
from .projective import HomogeneousPoint, is_exact

# a float image coordinate beyond 1/POLE_EPS (or NaN) counts as hitting a pole
POLE_EPS = 1e-9
_IMAGE_LIMIT = 1 / POLE_EPS

SQRT_HALF = math.sqrt(0.5)


def _coerce(v):
    if isinstance(v, Rational) and not isinstance(v, Fraction):
        return Fraction(v)
    return v


@dataclass(frozen=True, slots=True)
class SymmetricOctagon:
    """Parameters of the canonical representative P(x, y)."""

    x: object
    y: object

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "y", _coerce(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    @property
    def exact(self) -> bool:
        return is_exact(self.x, self.y)

    def is_degenerate(self, eps: float = 0.0) -> bool:
        bad = ((0, 0), (1, 0), (0, 1), (-1, 0), (0, -1))
        return any(abs(self.x - a) <= eps and abs(self.y - b) <= eps for a, b in bad)

    def close_to(self, other, tol: float) -> bool:
        ox, oy = other
        return abs(self.x - ox) <= tol and abs(self.y - oy) <= tol

    def vertices(self) -> list[HomogeneousPoint]:
        return canonical_vertices(self)

    def __repr__(self):
        return f"SymmetricOctagon({self.x}, {self.y})"


def _xy(o):
    if isinstance(o, SymmetricOctagon):
        return o.x, o.y
    x, y = o
    return _coerce(x), _coerce(y)


P_PLUS = SymmetricOctagon(SQRT_HALF, SQRT_HALF)
P_MINUS = SymmetricOctagon(-SQRT_HALF, -SQRT_HALF)


def canonical_vertices(o) -> list[HomogeneousPoint]:
    x, y = _xy(o)
    if SymmetricOctagon(x, y).is_degenerate():
        raise DegenerateInput(f"P({x}, {y}) has coincident vertices")
    zero, one = (Fraction(0), Fraction(1)) if is_exact(x, y) else (0.0, 1.0)
    pairs = [(one, zero), (x, y), (zero, one), (-y, x), (-one, zero), (-x, -y), (zero, -one), (y, -x)]
    return [HomogeneousPoint((a, b, one)) for a, b in pairs]


def rho(p: HomogeneousPoint) -> HomogeneousPoint:
    """Quarter turn about the origin."""
    x, y, z = p.coords
    return HomogeneousPoint((-y, x, z))


@dataclass(frozen=True)
class MapCoefficients:
    alpha: dict
    beta: dict
    A: object
    B: object


ALPHA_INDICES = ((1, 0), (2, 0), (3, 0), (4, 0), (1, 1), (1, 2), (2, 2))
BETA_INDICES = ((1, 0), (2, 0), (3, 0), (1, 2))


def _t3_terms(x, y):
    """Return alpha, beta, numerator of A, the two denominator factors, B."""
    alpha = {(i, j): x**i * y**j + y**i * x**j for i, j in ALPHA_INDICES}
    beta = {(i, j): x**i * y**j - y**i * x**j for i, j in BETA_INDICES}
    a_num = alpha[1, 0] + alpha[2, 0]
    lin = 1 + alpha[1, 0]
    quart = (
        alpha[2, 0] + 2 * alpha[3, 0] + alpha[4, 0] - alpha[1, 1] - 2 * alpha[1, 2] + alpha[2, 2]
    )
    B = beta[1, 0] + 2 * beta[2, 0] + beta[3, 0] + beta[1, 2]
    return alpha, beta, a_num, lin, quart, B


def _blown_up(*values) -> bool:
    # written so that NaN also counts
    return not all(abs(v) <= _IMAGE_LIMIT for v in values)


def map_coefficients(o) -> MapCoefficients:
    x, y = _xy(o)
    alpha, beta, a_num, lin, quart, B = _t3_terms(x, y)
    if lin == 0:
        raise PoleOfMap(f"1 + x + y vanishes at ({x}, {y})", factor="1+x+y")
    if quart == 0:
        raise PoleOfMap(f"quartic factor of A vanishes at ({x}, {y})", factor="quartic")
    return MapCoefficients(alpha, beta, a_num / (lin * quart), B)


def t3(o) -> SymmetricOctagon:
    """Image of P(x, y) under the 3-diagonal map, in canonical form."""
    x, y = _xy(o)
    c = map_coefficients((x, y))
    xn, yn = -c.A * x * (c.B - 2 * x * y), c.A * y * (c.B + 2 * x * y)
    if not is_exact(x, y) and _blown_up(xn, yn):
        factor = "1+x+y" if abs(1 + x + y) < 1e-6 else "quartic"
        raise PoleOfMap(f"T3 blows up near ({x}, {y})", factor=factor)
    return SymmetricOctagon(xn, yn)


def sigma1(o) -> SymmetricOctagon:
    x, y = _xy(o)
    return SymmetricOctagon(y, x)


def sigma2(o) -> SymmetricOctagon:
    x, y = _xy(o)
    return SymmetricOctagon(-x, -y)


def t3_inverse(o) -> SymmetricOctagon:
    # sigma2 conjugates T3 to its inverse
    return sigma2(t3(sigma2(o)))


def psi(o):
    """The T3-invariant (x - y)(x^2 + y^2 - 1) / (x y)."""
    x, y = _xy(o)
    if x * y == 0:
        raise UndefinedOnAxes(f"psi is undefined at ({x}, {y})")
    return (x - y) * (x * x + y * y - 1) / (x * y)


def psi_or_none(o):
    try:
        return psi(o)
    except UndefinedOnAxes:
        return None


def dual_D(o) -> SymmetricOctagon:
    """Parameters of the dual octagon (edge lines read back as points).

    This is an involution commuting with ``psi``.
    """
    x, y = _xy(o)
    den = x * (x * x - 2 * x + y * y + 1)
    factor = "x(x^2-2x+y^2+1)"
    if den == 0:
        raise PoleOfMap(f"duality denominator vanishes at ({x}, {y})", factor=factor)
    xn, yn = y * (x + y - 1) / den, -y * (x * x - x + y * y - y) / den
    if not is_exact(x, y) and _blown_up(xn, yn):
        raise PoleOfMap(f"duality blows up near ({x}, {y})", factor=factor)
    return SymmetricOctagon(xn, yn)


def dual_D_mirrored(o) -> SymmetricOctagon:
    """The dual read with the same orientation as the input labels.

    Equal to ``sigma1(dual_D(o))``; not an involution.
    """
    return sigma1(dual_D(o))


def half_map(o) -> SymmetricOctagon:
    """Square root of T3: ``dual_D`` after ``sigma2``."""
    return dual_D(sigma2(o))


def diagonal_step(x):
    """T3 restricted to the diagonal, x -> (1 + x)/(1 + 2x)."""
    x = _coerce(x)
    den = 1 + 2 * x
    if den == 0 or (not is_exact(x) and _blown_up((1 + x) / den)):
        raise PoleOfMap("diagonal map has a pole at x = -1/2", factor="1+2x")
    return (1 + x) / den


def t3_arrays(x: np.ndarray, y: np.ndarray):
    """Vectorised T3 on float arrays.

    Returns ``(x', y', pole)``; entries flagged in ``pole`` are NaN.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _, _, a_num, lin, quart, B = _t3_terms(x, y)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        A = a_num / (lin * quart)
        xn = -A * x * (B - 2 * x * y)
        yn = A * y * (B + 2 * x * y)
        pole = ~((np.abs(xn) <= _IMAGE_LIMIT) & (np.abs(yn) <= _IMAGE_LIMIT))
    xn[pole] = np.nan
    yn[pole] = np.nan
    return xn, yn, pole


def t3_inverse_arrays(x: np.ndarray, y: np.ndarray):
    xn, yn, pole = t3_arrays(-np.asarray(x, float), -np.asarray(y, float))
    return -xn, -yn, pole


def psi_arrays(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return (x - y) * (x * x + y * y - 1) / (x * y)
