"""Homogeneous coordinates on the real projective plane.

Points and lines are triples up to scale.  Every routine here is written
against plain Python arithmetic so the same code runs on ``Fraction``
(exact) and ``float`` inputs; the backend is whatever the caller passes
in.  Float comparisons take an explicit ``eps``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DegenerateInput, NearDegenerate

EPS = 1e-10


def is_exact(*values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def as_fraction(value) -> Fraction:
    """Parse ``"p/q"``, ints, decimal strings or floats into a Fraction."""
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence, v: Sequence):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(a: Sequence, b: Sequence, c: Sequence):
    return dot(a, cross(b, c))


def _norm(u: Sequence) -> float:
    return float(sum(abs(c) ** 2 for c in u)) ** 0.5


def is_zero_vector(u: Sequence, scale: float = 1.0, eps: float = EPS) -> bool:
    if is_exact(*u):
        return all(c == 0 for c in u)
    return _norm(u) <= eps * scale


def _parallel(u: Sequence, v: Sequence, eps: float) -> bool:
    return is_zero_vector(cross(u, v), _norm(u) * _norm(v), eps)


class _Triple:
    """Shared behaviour of points and lines: a nonzero triple up to scale."""

    __slots__ = ()

    @property
    def vec(self) -> tuple:
        raise NotImplementedError

    def __iter__(self):
        return iter(self.vec)

    def __getitem__(self, i):
        return self.vec[i]

    def __len__(self):
        return 3

    @property
    def exact(self) -> bool:
        return is_exact(*self.vec)

    def equivalent(self, other, eps: float = EPS) -> bool:
        """Scale-equivalence; exact on rationals, relative ``eps`` on floats."""
        return _parallel(self.vec, other.vec, eps)

    def _normalized_vec(self, eps: float) -> tuple:
        v = self.vec
        if self.exact:
            for c in reversed(v):
                if c != 0:
                    return tuple(Fraction(a) / c for a in v)
        top = max(abs(c) for c in v)
        for c in reversed(v):
            if abs(c) > eps * top:
                return tuple(a / c for a in v)
        raise NearDegenerate(f"no coordinate of {v} is above tolerance")

    def unit(self) -> tuple:
        """Float representative of norm 1 with a deterministic sign."""
        v = [float(c) for c in self.vec]
        n = _norm(v)
        v = [c / n for c in v]
        for c in v:
            if abs(c) > 1e-300:
                if c < 0:
                    v = [-a for a in v]
                break
        return tuple(v)


@dataclass(frozen=True, slots=True)
class HomogeneousPoint(_Triple):
    """The point ``[x:y:z]``."""

    coords: tuple

    def __post_init__(self):
        c = tuple(self.coords)
        if len(c) != 3:
            raise DegenerateInput("a projective point needs three coordinates")
        if all(a == 0 for a in c):
            raise DegenerateInput("[0:0:0] is not a point")
        object.__setattr__(self, "coords", c)

    @classmethod
    def affine(cls, x, y) -> "HomogeneousPoint":
        one = 1 if is_exact(x, y) else 1.0
        return cls((x, y, one))

    @property
    def vec(self) -> tuple:
        return self.coords

    def normalized(self, eps: float = EPS) -> "HomogeneousPoint":
        return HomogeneousPoint(self._normalized_vec(eps))

    def is_finite(self, eps: float = EPS) -> bool:
        x, y, z = self.coords
        if self.exact:
            return z != 0
        return abs(z) > eps * max(abs(x), abs(y), abs(z))

    def to_affine(self, eps: float = EPS) -> tuple:
        if not self.is_finite(eps):
            raise NearDegenerate(f"{self.coords} is on the line at infinity")
        x, y, z = self.coords
        if self.exact:
            return Fraction(x) / z, Fraction(y) / z
        return x / z, y / z

    def lies_on(self, line: "ProjectiveLine", eps: float = EPS) -> bool:
        return incident(self, line, eps)

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True, slots=True)
class ProjectiveLine(_Triple):
    """The line ``a x + b y + c z = 0``."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        if len(c) != 3:
            raise DegenerateInput("a projective line needs three coefficients")
        if all(a == 0 for a in c):
            raise DegenerateInput("[0:0:0] is not a line")
        object.__setattr__(self, "coeffs", c)

    @property
    def vec(self) -> tuple:
        return self.coeffs

    def normalized(self, eps: float = EPS) -> "ProjectiveLine":
        return ProjectiveLine(self._normalized_vec(eps))

    def contains(self, p: HomogeneousPoint, eps: float = EPS) -> bool:
        return incident(p, self, eps)

    def __repr__(self):
        return "line[" + ":".join(str(c) for c in self.coeffs) + "]"


LINE_AT_INFINITY = ProjectiveLine((0, 0, 1))


def incident(p: HomogeneousPoint, line: ProjectiveLine, eps: float = EPS) -> bool:
    value = dot(p.vec, line.vec)
    if is_exact(value):
        return value == 0
    return abs(value) <= eps * _norm(p.vec) * _norm(line.vec)


def join(p: HomogeneousPoint, q: HomogeneousPoint, eps: float = EPS) -> ProjectiveLine:
    """Line through two distinct points."""
    c = cross(p.vec, q.vec)
    if is_zero_vector(c, _norm(p.vec) * _norm(q.vec), eps):
        raise DegenerateInput(f"join of coincident points {p} and {q}")
    return ProjectiveLine(c)


def meet(l: ProjectiveLine, m: ProjectiveLine, eps: float = EPS) -> HomogeneousPoint:
    """Intersection point of two distinct lines."""
    c = cross(l.vec, m.vec)
    if is_zero_vector(c, _norm(l.vec) * _norm(m.vec), eps):
        raise DegenerateInput(f"meet of coincident lines {l} and {m}")
    return HomogeneousPoint(c)


def dualize(obj):
    """Swap the roles of a triple: point ``[u:v:w]`` <-> line ``[u:v:w]``."""
    if isinstance(obj, HomogeneousPoint):
        return ProjectiveLine(obj.coords)
    if isinstance(obj, ProjectiveLine):
        return HomogeneousPoint(obj.coeffs)
    raise TypeError(f"cannot dualize {type(obj).__name__}")


def collinear(p, q, r, eps: float = EPS) -> bool:
    d = det3(p.vec, q.vec, r.vec)
    if is_exact(d):
        return d == 0
    return abs(d) <= eps * _norm(p.vec) * _norm(q.vec) * _norm(r.vec)


def _mat_vec(m, v):
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def _adjugate(m):
    cols = [tuple(m[r][c] for r in range(3)) for c in range(3)]
    # rows of the adjugate are cross products of column pairs
    return (cross(cols[1], cols[2]), cross(cols[2], cols[0]), cross(cols[0], cols[1]))


def _det(m):
    return det3(m[0], m[1], m[2])


@dataclass(frozen=True, slots=True)
class ProjectiveMap:
    """An invertible 3x3 matrix acting on points by ``p -> M p``."""

    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise DegenerateInput("projective maps are 3x3")
        object.__setattr__(self, "matrix", m)
        d = _det(m)
        scale = max(abs(c) for r in m for c in r) ** 3 if not is_exact(d) else 1
        if (d == 0) if is_exact(d) else abs(d) <= 1e-14 * scale:
            raise DegenerateInput("singular matrix")

    @classmethod
    def identity(cls, exact: bool = True) -> "ProjectiveMap":
        one, zero = (1, 0) if exact else (1.0, 0.0)
        return cls(((one, zero, zero), (zero, one, zero), (zero, zero, one)))

    def __call__(self, p: HomogeneousPoint) -> HomogeneousPoint:
        return HomogeneousPoint(_mat_vec(self.matrix, p.vec))

    def apply_line(self, line: ProjectiveLine) -> ProjectiveLine:
        """Image of a line: multiply by the inverse transpose."""
        adj = _adjugate(self.matrix)
        v = line.vec
        return ProjectiveLine(tuple(sum(adj[r][c] * v[r] for r in range(3)) for c in range(3)))

    def __matmul__(self, other: "ProjectiveMap") -> "ProjectiveMap":
        return ProjectiveMap(_mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "ProjectiveMap":
        # the adjugate is the inverse up to scale, which is all that matters here
        return ProjectiveMap(_adjugate(self.matrix))

    def is_scale_identity(self, eps: float = EPS) -> bool:
        m = self.matrix
        flat = [m[i][j] for i in range(3) for j in range(3)]
        if is_exact(*flat):
            return all(m[i][j] == 0 for i in range(3) for j in range(3) if i != j) and (
                m[0][0] == m[1][1] == m[2][2]
            )
        s = max(abs(c) for c in flat)
        off = max(abs(m[i][j]) for i in range(3) for j in range(3) if i != j)
        diag = max(abs(m[0][0] - m[1][1]), abs(m[1][1] - m[2][2]))
        return max(off, diag) <= eps * s


def _frame_matrix(points: Sequence[HomogeneousPoint], eps: float):
    """Matrix sending the standard frame e1, e2, e3, (1,1,1) to ``points``."""
    p1, p2, p3, p4 = (p.vec for p in points)
    for a, b, c in combinations(points, 3):
        if collinear(a, b, c, eps):
            raise DegenerateInput(f"collinear frame points {a}, {b}, {c}")
    cols = (p1, p2, p3)
    m = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    d = _det(m)
    adj = _adjugate(m)
    scales = _mat_vec(adj, p4)
    if is_exact(d):
        scales = tuple(Fraction(s) / d for s in scales)
    else:
        scales = tuple(s / d for s in scales)
    return tuple(tuple(cols[j][i] * scales[j] for j in range(3)) for i in range(3))


def map_from_four_points(
    src: Sequence[HomogeneousPoint], dst: Sequence[HomogeneousPoint], eps: float = EPS
) -> ProjectiveMap:
    """The projective map taking ``src[i]`` to ``dst[i]`` for i = 0..3."""
    if len(src) != 4 or len(dst) != 4:
        raise DegenerateInput("need exactly four source and four target points")
    a = _frame_matrix(src, eps)
    b = _frame_matrix(dst, eps)
    return ProjectiveMap(_mat_mul(b, _adjugate(a)))


def affine_points(pairs: Iterable[Sequence]) -> list[HomogeneousPoint]:
    return [HomogeneousPoint.affine(x, y) for x, y in pairs]
