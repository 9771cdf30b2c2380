import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from pentagram.cubic import trace_real_curve
from pentagram.dynamics import (
    X_STAR,
    CircleArcSet,
    antidiagonal_fixed_residual,
    circle_backward_escape,
    circle_backward_orbit,
    convexity_region_scan,
    dps_for_cap,
    escape_arrays,
    escape_times,
    in_convex_region,
    is_convex_affine,
    is_convex_octagon,
    minor_orbit_escape,
    orbit,
    order_two_level,
    rotation_number_estimate,
    seeds_on_level,
    unit_circle_seed,
)
from pentagram.errors import InvalidRotation, SeedOffCurve, SingularLevel
from pentagram.octagon import P_MINUS, P_PLUS, SymmetricOctagon, diagonal_step, psi, t3, t3_inverse


def test_convexity_examples():
    assert is_convex_octagon(P_PLUS)
    assert not is_convex_octagon(P_MINUS)
    for x in np.linspace(-2, 2, 81):
        if abs(x) < 1e-12 or abs(x - 1) < 1e-12 or abs(x + 1) < 1e-12:
            continue
        assert is_convex_octagon((x, x)) == (0.5 < x < 1)


def test_star_polygon_rejected():
    star = [(math.cos(4 * math.pi * k / 5), math.sin(4 * math.pi * k / 5)) for k in range(5)]
    assert not is_convex_affine(star)


def test_region_matches_polygon_test():
    rng = np.random.default_rng(2)
    pts = rng.uniform(-1.5, 1.5, size=(2000, 2))
    mask = in_convex_region(pts[:, 0], pts[:, 1])
    for (x, y), m in zip(pts, mask):
        assert is_convex_octagon((x, y)) == bool(m)


def test_orbit_fixed_point():
    rec = orbit(P_PLUS, 5, 5)
    assert rec.indices == list(range(-5, 6))
    assert all(s.convex and abs(s.x - P_PLUS.x) < 1e-12 for s in rec)


def test_orbit_diagonal():
    rec = orbit((1, 1), 6)
    x = Fraction(1)
    for s in rec:
        assert s.x == s.y == x and s.psi == 0
        x = diagonal_step(x)


def test_orbit_period_six_on_level_minus_two():
    rec = orbit((5, 6), 12, 6)
    for j in range(-6, 7):
        assert (rec.at(j).x, rec.at(j).y) == (rec.at(j + 6).x, rec.at(j + 6).y)
    assert set(rec.psi_values()) == {-2}
    assert [s.j for s in rec.f_orbit()] == [0, 2, 4, 6, 8, 10, 12]


def test_orbit_stops_at_pole():
    # (-3/4, -3/4) -> (-1/2, -1/2), where the diagonal map has its pole
    rec = orbit((Fraction(-3, 4), Fraction(-3, 4)), 5)
    assert rec.indices == [0, 1]
    assert rec.at(1).pole and not rec.at(0).pole


def test_escape_examples():
    fwd, bwd = escape_times((0.8, 0.8), 1000)
    assert fwd is None and bwd is not None and bwd < 0
    fwd, bwd = escape_times((0.75, 0.60), 10_000)
    assert fwd is not None and bwd is not None


def test_circle_high_precision():
    dps = dps_for_cap(1000)
    fwd, bwd = escape_times(unit_circle_seed(40, dps), 1000, dps=dps)
    assert fwd is not None and bwd is None


def test_circle_float_backward_orbit_is_spurious():
    # in doubles the saddle at the regular octagon throws the orbit off S^1
    _, bwd = escape_times(unit_circle_seed(40), 1000)
    assert bwd is not None


def test_circle_conjugacy_matches_direct_orbit():
    n, dps = 200, 300
    fast = circle_backward_orbit(unit_circle_seed(40), n)
    with mpmath.workdps(dps):
        o = unit_circle_seed(40, dps)
        for j in range(n):
            o = t3_inverse(o)
            assert abs(float(o.x) - fast[j].x) < 1e-13
            assert abs(float(o.y) - fast[j].y) < 1e-13
    assert all(abs(p.x**2 + p.y**2 - 1) < 1e-14 for p in fast)
    assert circle_backward_escape(unit_circle_seed(40), 10_000) is None


def test_escape_arrays_match_scalar():
    xs = np.array([0.75, 0.9, 0.6, 0.95])
    ys = np.array([0.60, 0.3, 0.7, 0.25])
    f, b = escape_arrays(xs, ys, 500)
    for i in range(len(xs)):
        sf, sb = escape_times((xs[i], ys[i]), 500)
        assert f[i] == sf and -b[i] == sb


def test_small_scan():
    field = convexity_region_scan(resolution=33, cap=2000)
    X, Y = np.meshgrid(field.xs, field.ys)
    inside = field.convex
    assert np.all(field.fwd[~inside] == 0)
    diag = inside & (X == Y)
    assert diag.sum() > 0 and np.all(field.fwd[diag] == -1)
    off = inside & (np.abs(X - Y) > 1e-3) & (np.abs(np.hypot(X, Y) - 1) > 1e-3)
    assert np.all(field.fwd[off] > 0) and np.all(field.bwd[off] > 0)


def test_residual():
    assert abs(antidiagonal_fixed_residual(X_STAR)) < 1e-10
    assert abs(antidiagonal_fixed_residual(0.5)) > 1e-3
    for x in (0.3, 0.5, 0.9, Fraction(2, 3)):
        u, v = t3(t3((x, -x)))
        assert abs(antidiagonal_fixed_residual(x) - (u + v)) < 1e-10
    assert X_STAR == pytest.approx(0.80024, abs=1e-5)


def test_order_two_level():
    lam = order_two_level()
    assert lam == pytest.approx(psi((X_STAR, -X_STAR)), abs=1e-14)
    for c in trace_real_curve(lam):
        s = tuple(c.polyline[len(c.polyline) // 3])
        q = t3(t3(t3(t3(s))))
        assert abs(q.x - s[0]) < 1e-8 and abs(q.y - s[1]) < 1e-8
        assert rotation_number_estimate(lam, s).value == pytest.approx(0.5, abs=1e-3)


def test_rotation_generic_level_is_stable():
    lam = 1.0
    seed = tuple(trace_real_curve(lam)[0].polyline[5])
    a = rotation_number_estimate(lam, seed, n=1000)
    b = rotation_number_estimate(lam, seed, n=2000)
    assert 0 < a.value < 1 and abs(a.value - b.value) < 1e-3


def test_rotation_errors():
    with pytest.raises(SingularLevel):
        rotation_number_estimate(-2, (1.0, 1.0))
    with pytest.raises(SeedOffCurve):
        rotation_number_estimate(1.0, (0.3, 0.3))


def test_seeds_on_level():
    for x, y in seeds_on_level(1.3, 0.7):
        assert psi((x, y)) == pytest.approx(1.3, abs=1e-10)


def test_minor_sets():
    s = CircleArcSet(((0, 0.4),))
    assert s.is_minor()
    assert minor_orbit_escape(s, 0.3, 0.1) == 1
    golden = (math.sqrt(5) - 1) / 2
    k = minor_orbit_escape(CircleArcSet(((0, 0.49),)), golden, 0.2)
    assert k is not None and k >= 1
    big = CircleArcSet(((0, 0.6),))
    assert not big.is_minor()
    assert minor_orbit_escape(big, 0.5, 0.2) == 1
    with pytest.raises(InvalidRotation):
        minor_orbit_escape(big, 0.0, 0.2)


def test_arc_set_wrapping_span():
    s = CircleArcSet(((0.9, 0.1), (0.2, 0.3)))
    assert s.contains(0.95) and s.contains(0.05) and not s.contains(0.15)
    assert s.span() == pytest.approx(0.4)


@pytest.mark.slow
def test_scan_resolution_256():
    from pentagram.verify import escape_scan_report

    s = escape_scan_report(resolution=256, cap=10_000)
    assert s["generic"] == s["generic_both_finite"] > 30_000
    assert s["diagonal"] == s["diagonal_fwd_censored"]
    assert s["circle"] == s["circle_bwd_censored"]
