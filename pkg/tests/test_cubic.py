import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.spatial import cKDTree

from pentagram.cubic import (
    POINTS_AT_INFINITY,
    CubicLevel,
    antidiagonal_points,
    antidiagonal_roots,
    branch_conditions,
    evaluate_V,
    gradient_V,
    is_singular_level,
    trace_projective_loop,
    trace_real_curve,
)
from pentagram.errors import SingularLevel
from pentagram.octagon import psi
from pentagram.projective import HomogeneousPoint

rat = st.fractions(min_value=-30, max_value=30, max_denominator=40)


@pytest.mark.parametrize("lam", [Fraction(-7, 3), 0, 1, Fraction(5, 2)])
def test_base_points(lam):
    for p in POINTS_AT_INFINITY:
        assert evaluate_V(lam, p) == 0


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(-3, 2), Fraction(7, 5)])
def test_value_on_antidiagonal(lam):
    x = 4 / lam
    assert evaluate_V(lam, (x, -x, 1)) == branch_conditions(lam)[0]
    assert gradient_V(lam, (x, -x, 1))[2] == 0


@given(rat, rat)
def test_V_vanishes_at_level_psi(x, y):
    assume(x * y != 0)
    assert evaluate_V(CubicLevel(psi((x, y))), (x, y)) == 0


def test_gradient_at_infinity():
    for lam in (Fraction(1), Fraction(-5, 2)):
        assert gradient_V(lam, (1, 1, 0))[2] == -lam


@given(rat, rat, rat, rat)
def test_euler_identity(lam, x, y, z):
    gx, gy, gz = gradient_V(lam, (x, y, z))
    assert x * gx + y * gy + z * gz == 3 * evaluate_V(lam, (x, y, z))


def test_gradient_finite_differences():
    rng = np.random.default_rng(4)
    h = 1e-6
    for _ in range(20):
        lam = rng.uniform(-3, 3)
        p = rng.normal(size=3)
        g = np.array(gradient_V(lam, tuple(p)))
        fd = [
            (evaluate_V(lam, tuple(p + h * e)) - evaluate_V(lam, tuple(p - h * e))) / (2 * h)
            for e in np.eye(3)
        ]
        assert np.allclose(g, fd, atol=1e-6)


def test_singular_levels():
    assert is_singular_level(2).singular
    assert not is_singular_level(1).singular
    for lam in (-2, 0, 2):
        rep = is_singular_level(lam)
        x, y, z = rep.witness
        assert max(abs(c) for c in gradient_V(lam, rep.witness)) < 1e-12
        assert abs(evaluate_V(lam, rep.witness)) < 1e-12


def test_complex_singular_levels():
    for lam in (4j * math.sqrt(2), -4j * math.sqrt(2)):
        rep = is_singular_level(lam)
        assert rep.singular
        x, y, _ = rep.witness
        assert abs(x - 4 / lam) < 1e-14 and abs(x + y) < 1e-14
        assert max(abs(c) for c in gradient_V(lam, rep.witness)) < 1e-12
        assert abs(branch_conditions(lam)[0]) < 1e-12
    assert not is_singular_level(4j).singular


def test_antidiagonal_roots():
    r = antidiagonal_roots(1)
    assert r[0] == 0
    assert abs(r[1] - (-1 + math.sqrt(33)) / 8) < 1e-15
    assert abs(r[2] - (-1 - math.sqrt(33)) / 8) < 1e-15
    assert sorted(antidiagonal_roots(0)) == pytest.approx([-math.sqrt(0.5), 0, math.sqrt(0.5)])
    # lam^2 + 32 a square gives rational roots
    assert antidiagonal_roots(7) == (0, Fraction(1, 4), Fraction(-2))
    for lam in (Fraction(7), 1.3, -0.4):
        for x in antidiagonal_roots(lam)[1:]:
            assert psi((x, -x)) == pytest.approx(lam, abs=1e-12)
        for p in antidiagonal_points(lam):
            assert isinstance(p, HomogeneousPoint)


@pytest.mark.parametrize("lam", [1.0, 1.9, -1.0])
def test_trace_topology(lam):
    comps = trace_real_curve(lam)
    assert [c.bounded for c in comps] == [True, False]
    assert [len(c.l_crossings) for c in comps] == [2, 1]
    for c in comps:
        assert c.max_residual(lam) < 1e-9
    found = sorted(x for c in comps for x, _ in c.l_crossings)
    assert np.allclose(found, sorted(antidiagonal_roots(lam)), atol=1e-9)


def test_trace_reflection_symmetry():
    a = trace_real_curve(0.5, resolution=1024)
    b = trace_real_curve(-0.5, resolution=1024)
    for ca, cb in zip(a, b):
        tree = cKDTree(cb.polyline[:, ::-1])
        d, _ = tree.query(ca.polyline)
        assert d.max() < 0.02


def test_trace_singular_rejected():
    with pytest.raises(SingularLevel):
        trace_real_curve(2.0)
    with pytest.raises(ValueError):
        trace_real_curve(1.0, resolution=64)


@pytest.mark.parametrize("which", [0, 1])
def test_projective_loop_closes(which):
    lam = 1.0
    comps = trace_real_curve(lam, resolution=1024)
    seed = comps[which].polyline[0]
    loop = trace_projective_loop(lam, (seed[0], seed[1], 1.0))
    vals = [abs(evaluate_V(lam, tuple(p))) for p in loop]
    assert max(vals) < 1e-12
    assert len(loop) > 100
