import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pentagram.errors import DegenerateInput, PoleOfMap, UndefinedOnAxes
from pentagram.octagon import (
    P_MINUS,
    P_PLUS,
    SQRT_HALF,
    SymmetricOctagon,
    canonical_vertices,
    diagonal_step,
    dual_D,
    dual_D_mirrored,
    half_map,
    psi,
    psi_arrays,
    rho,
    sigma1,
    sigma2,
    t3,
    t3_arrays,
    t3_inverse,
)

rat = st.fractions(min_value=-50, max_value=50, max_denominator=60)
pairs = st.tuples(rat, rat)


def defined(f, *args):
    try:
        return f(*args)
    except (PoleOfMap, UndefinedOnAxes):
        return None


def test_canonical_vertices_regular():
    vs = canonical_vertices(P_PLUS)
    angles = sorted(math.atan2(float(v[1]), float(v[0])) % (2 * math.pi) for v in vs)
    assert np.allclose(np.diff(angles), math.pi / 4)
    assert all(abs(math.hypot(float(v[0]), float(v[1])) - 1) < 1e-15 for v in vs)


def test_canonical_vertices_degenerate():
    with pytest.raises(DegenerateInput):
        canonical_vertices((0, 1))


@given(pairs)
def test_rho_shifts_labels_by_two(o):
    assume(not SymmetricOctagon(*o).is_degenerate())
    vs = canonical_vertices(o)
    assert [rho(v) for v in vs] == vs[2:] + vs[:2]


def test_t3_examples():
    assert t3((1, 1)) == SymmetricOctagon(Fraction(2, 3), Fraction(2, 3))
    assert t3((2, 0)) == SymmetricOctagon(-2, 0)
    assert t3(P_PLUS).close_to(P_PLUS, 1e-15)


def test_t3_inverse_examples():
    assert t3_inverse((Fraction(2, 3), Fraction(2, 3))) == SymmetricOctagon(1, 1)


@given(pairs)
@settings(max_examples=150)
def test_t3_roundtrip_exact(o):
    img = defined(t3, o)
    assume(img is not None)
    back = defined(t3_inverse, img)
    assume(back is not None)
    assert back == SymmetricOctagon(*o)


@given(pairs)
@settings(max_examples=150)
def test_duality_conjugates_t3_to_inverse(o):
    a = defined(lambda p: dual_D(t3(dual_D(p))), o)
    b = defined(t3_inverse, o)
    assume(a is not None and b is not None)
    assert a == b


def test_psi_examples():
    assert psi((Fraction(3, 7), Fraction(3, 7))) == 0
    assert psi((1, 2)) == -2
    o = (Fraction(9, 10), Fraction(2, 5))
    assert psi(t3(o)) == psi(o)
    with pytest.raises(UndefinedOnAxes):
        psi((0, 3))


def test_psi_erratum_forms():
    # only the x^2 + y^2 - 1 form is invariant
    alt = lambda o: (o[0] - o[1]) * (o[0] ** 2 - o[1] ** 2 - 1) / (o[0] * o[1])  # noqa: E731
    o = (Fraction(9, 10), Fraction(2, 5))
    assert alt(tuple(t3(o))) != alt(o)
    assert psi((Fraction(5, 2), Fraction(3, 2))) == 2  # on y = x - 1


def test_dual_examples():
    assert dual_D(P_PLUS).close_to(P_PLUS, 1e-15)
    o = (Fraction(3, 10), Fraction(3, 5))
    assert dual_D(dual_D(o)) == SymmetricOctagon(*o)
    # on x + y = 1 vertex 1 lies on the chord from vertex 0 to vertex 2,
    # so two edge lines coincide and the dual is degenerate
    assert dual_D((Fraction(3, 10), Fraction(7, 10))).is_degenerate()
    d = dual_D((Fraction(4, 5), Fraction(4, 5)))
    assert d.x**2 + d.y**2 == 1


@given(pairs)
def test_mirrored_dual_relation(o):
    d = defined(dual_D, o)
    assume(d is not None and not d.is_degenerate())
    x, y = (Fraction(c) for c in o)
    den = x * (x * x - 2 * x + y * y + 1)
    printed = SymmetricOctagon(-y * (x * x - x + y * y - y) / den, y * (x + y - 1) / den)
    assert dual_D_mirrored(o) == sigma1(d) == printed


def test_mirrored_dual_is_not_involution():
    o = (Fraction(1, 3), Fraction(5, 4))
    dd = dual_D_mirrored(dual_D_mirrored(o))
    assert dd != SymmetricOctagon(*o)
    x, y = o
    assert dd == SymmetricOctagon(y / (x * x + y * y), x / (x * x + y * y))


def test_sigmas():
    assert sigma1((1, 2)) == SymmetricOctagon(2, 1)
    assert sigma2(P_PLUS) == P_MINUS
    o = (Fraction(2, 9), Fraction(-4, 3))
    assert sigma1(sigma1(o)) == SymmetricOctagon(*o)


@given(pairs)
@settings(max_examples=100)
def test_half_map(o):
    h = defined(half_map, o)
    h2 = defined(half_map, h) if h is not None else None
    t = defined(t3, o)
    assume(h2 is not None and t is not None)
    assert h2 == t
    p = defined(psi, o)
    assume(p is not None and h.x * h.y != 0)
    assert psi(h) == -p
    if p != 0:
        assert h != SymmetricOctagon(*o)


def test_half_map_on_diagonal_keeps_psi_zero():
    h = half_map((Fraction(2, 3), Fraction(2, 3)))
    assert psi(h) == 0


def test_diagonal_step():
    assert diagonal_step(1) == Fraction(2, 3)
    assert abs(diagonal_step(SQRT_HALF) - SQRT_HALF) < 1e-16
    x = 3.0
    for _ in range(80):
        x = diagonal_step(x)
    assert abs(x - SQRT_HALF) < 1e-12
    with pytest.raises(PoleOfMap):
        diagonal_step(Fraction(-1, 2))


def test_diagonal_matches_t3():
    for x in (Fraction(1, 3), Fraction(7, 2), Fraction(-3, 5)):
        assert t3((x, x)) == SymmetricOctagon(diagonal_step(x), diagonal_step(x))


def test_x_axis_is_reflected():
    for x in (Fraction(1, 2), Fraction(3), Fraction(-7, 4)):
        assert t3((x, 0)) == SymmetricOctagon(-x, 0)


def test_exact_pole_raises():
    with pytest.raises(PoleOfMap):
        t3((Fraction(-1, 3), Fraction(-2, 3)))  # 1 + x + y = 0


def test_float_pole_detected():
    with pytest.raises(PoleOfMap):
        t3((-0.5, -0.5 + 1e-14))


def test_arrays_agree_with_scalar():
    rng = np.random.default_rng(1)
    x, y = rng.uniform(-2, 2, 200), rng.uniform(-2, 2, 200)
    xn, yn, pole = t3_arrays(x, y)
    for i in range(200):
        if not pole[i]:
            o = t3((x[i], y[i]))
            assert abs(o.x - xn[i]) <= 1e-12 * max(1, abs(o.x))
            assert abs(o.y - yn[i]) <= 1e-12 * max(1, abs(o.y))
    assert np.allclose(psi_arrays(x, y), [psi((a, b)) for a, b in zip(x, y)])
