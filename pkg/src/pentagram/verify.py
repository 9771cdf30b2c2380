"""Self-checks of the identities and experiments, grouped into suites.

Each check returns a :class:`Check`; a suite is a list of them.  The CLI
prints these as JSON and exits 0 iff every check passes.
"""
from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .cubic import (
    SINGULAR_COMPLEX,
    antidiagonal_roots,
    branch_conditions,
    evaluate_V,
    is_singular_level,
    trace_real_curve,
)
from .dynamics import (
    X_STAR,
    antidiagonal_fixed_residual,
    circle_backward_escape,
    convexity_region_scan,
    escape_times,
    in_convex_region,
    unit_circle_seed,
)
from .errors import DegenerateInput, PentagramError, PoleOfMap, UndefinedOnAxes
from .octagon import SymmetricOctagon, dual_D, psi, sigma1, sigma2, t3, t3_inverse
from .polygons import (
    LABEL_MIRROR,
    LABEL_SHIFT,
    Conic,
    Polygon,
    calibrate_labeling,
    deep_diagonal,
    geometric_t3,
    projectively_equivalent,
    poncelet_polygon,
)

SUITES = ("identities", "cubic", "escape", "poncelet", "calibration")


@dataclass
class Check:
    name: str
    passed: bool
    trials: int = 1
    skipped: int = 0
    failures: int = 0
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.as_dict() for c in self.checks]}


# -- random inputs ----------------------------------------------------------


def random_rational(rng: random.Random, bound: int = 1000) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_points(n: int, backend: str = "rational", seed: int = 0, bound: int = 1000):
    rng = random.Random(seed)
    if backend == "rational":
        return [(random_rational(rng, bound), random_rational(rng, bound)) for _ in range(n)]
    return [(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)]


def _same(a, b, tol) -> bool:
    ax, ay = a
    bx, by = b
    if tol == 0:
        return ax == bx and ay == by
    scale = max(1.0, abs(bx), abs(by))
    return abs(ax - bx) <= tol * scale and abs(ay - by) <= tol * scale


def _eq_scalar(a, b, tol) -> bool:
    return a == b if tol == 0 else abs(a - b) <= tol * max(1.0, abs(b))


# the identities of the closed-form system; each returns (lhs, rhs)
IDENTITIES = {
    "psi(T3) = psi": lambda p: (psi(t3(p)), psi(p)),
    "D(D) = id": lambda p: (dual_D(dual_D(p)), SymmetricOctagon(*p)),
    "D T3 D = T3^-1": lambda p: (dual_D(t3(dual_D(p))), t3_inverse(p)),
    "s2 T3 s2 = T3^-1": lambda p: (sigma2(t3(sigma2(p))), t3_inverse(p)),
    "s1 T3 s1 = T3": lambda p: (sigma1(t3(sigma1(p))), t3(p)),
    "(D s2)^2 = T3": lambda p: (dual_D(sigma2(dual_D(sigma2(p)))), t3(p)),
    "psi(D s2) = -psi": lambda p: (psi(dual_D(sigma2(p))), -psi(p)),
}


def check_identities(points, tol: float = 0) -> list[Check]:
    out = []
    for name, f in IDENTITIES.items():
        tried = skipped = failed = 0
        for p in points:
            try:
                lhs, rhs = f(p)
            except (PoleOfMap, UndefinedOnAxes, DegenerateInput):
                skipped += 1
                continue
            tried += 1
            ok = _eq_scalar(lhs, rhs, tol) if not isinstance(rhs, SymmetricOctagon) else _same(lhs, rhs, tol)
            failed += not ok
        out.append(Check(name, failed == 0 and tried > 0, tried, skipped, failed))
    return out


def suite_identities(trials: int = 500, backend: str = "rational", seed: int = 0) -> Report:
    tol = 0 if backend == "rational" else 1e-9
    rep = Report("identities", check_identities(random_points(trials, backend, seed), tol))
    rep.checks.extend(erratum_checks(seed=seed))
    return rep


# -- invariant form ---------------------------------------------------------


def circle_level_two_points(n: int):
    """Rational points of x^2 + x + y^2 - y = 0 (radius 1/sqrt2 about
    (-1/2, 1/2)), from lines y = t x through the origin."""
    pts = []
    t = Fraction(2)
    while len(pts) < n:
        x = (t - 1) / (1 + t * t)
        pts.append((x, t * x))
        t += Fraction(3, 7)
    return pts


def erratum_checks(n_cubic: int = 200, n_level: int = 50, seed: int = 0) -> list[Check]:
    rng = random.Random(seed + 1)
    failed = skipped = tried = 0
    while tried < n_cubic:
        x, y = random_rational(rng), random_rational(rng)
        if x * y == 0:
            skipped += 1  # psi is undefined on the axes; draw again
            continue
        tried += 1
        failed += evaluate_V(psi((x, y)), (x, y)) != 0
    checks = [Check("V(x, y, 1) = 0 at lam = psi(x, y)", failed == 0, tried, skipped, failed)]

    line = [(Fraction(k, 7) + 2, Fraction(k, 7) + 1) for k in range(1, n_level + 1)]
    circ = circle_level_two_points(n_level)
    for name, pts in (("psi = 2 on y = x - 1", line), ("psi = 2 on the circle about (-1/2, 1/2)", circ)):
        bad = sum(psi(p) != 2 for p in pts)
        checks.append(Check(name, bad == 0, len(pts), 0, bad))
    return checks


# -- cubic pencil -----------------------------------------------------------


def singular_sweep(n: int = 10_000, lo: float = -5.0, hi: float = 5.0, tol: float = 1e-9) -> list:
    # the grid includes the integers in [lo, hi]
    flagged = []
    for lam in np.linspace(lo, hi, n + 1):
        if is_singular_level(float(lam), tol).singular:
            flagged.append(round(float(lam), 9))
    return flagged


def suite_cubic(lams=(1.0,)) -> Report:
    rep = Report("cubic")
    flagged = singular_sweep()
    rep.checks.append(Check("real singular set is {-2, 0, 2}", flagged == [-2.0, 0.0, 2.0], 10_001, detail=str(flagged)))
    worst = max(abs(branch_conditions(r)[0]) for r in SINGULAR_COMPLEX)
    rep.checks.append(Check("256/lam^3 + 8/lam = 0 at +-4i sqrt2", worst < 1e-12, 2, detail=f"{worst:.3g}"))
    for lam in lams:
        comps = trace_real_curve(lam)
        counts = tuple(len(c.l_crossings) for c in comps)
        expected = sorted(antidiagonal_roots(lam))
        found = sorted(x for c in comps for x, _ in c.l_crossings)
        err = max(abs(a - b) for a, b in zip(found, expected)) if len(found) == 3 else math.inf
        ok = len(comps) == 2 and counts == (2, 1) and err < 1e-9
        rep.checks.append(Check(f"lam = {lam}: two components, crossings (2, 1)", ok, detail=f"{counts}, err {err:.3g}"))
    return rep


# -- dynamics ---------------------------------------------------------------


def diagonal_convergence(x0: float = 3.0, tol: float = 1e-12, max_steps: int = 80) -> int | None:
    target = math.sqrt(0.5)
    o = SymmetricOctagon(x0, x0)
    for j in range(1, max_steps + 1):
        o = t3(o)
        if abs(o.x - target) <= tol and abs(o.y - target) <= tol:
            return j
    return None


def order_three_seed() -> bool:
    p = SymmetricOctagon(5, 6)
    q = p
    for _ in range(3):
        q = t3(t3(q))
    return q == p


def escape_scan_report(resolution: int = 128, cap: int = 10_000, margin: float = 1e-3, n_circle: int = 12):
    """Scan the convex region and classify its cells.

    Returns a dict of counts.  Grid cells do not land on the unit circle,
    so its backward censoring is checked on ``n_circle`` sample points.
    """
    f = convexity_region_scan(resolution=resolution, cap=cap)
    X, Y = np.meshgrid(f.xs, f.ys)
    inside = in_convex_region(X, Y)
    near = (np.abs(X - Y) < margin) | (np.abs(np.hypot(X, Y) - 1) < margin) | (np.minimum(X, Y) < margin)
    generic = inside & ~near
    both_finite = generic & (f.fwd > 0) & (f.bwd > 0)
    diag = inside & (X == Y)
    circle_bwd = []
    circle_fwd = []
    for k in range(1, n_circle + 1):
        deg = 90 * k / (n_circle + 1)
        o = unit_circle_seed(deg)
        circle_bwd.append(circle_backward_escape(o, cap))
        circle_fwd.append(escape_times(o, cap)[0])
    return {
        "field": f,
        "generic": int(generic.sum()),
        "generic_both_finite": int(both_finite.sum()),
        "diagonal": int(diag.sum()),
        "diagonal_fwd_censored": int((f.fwd[diag] == -1).sum()),
        "diagonal_bwd_finite": int((f.bwd[diag] > 0).sum()),
        "circle": n_circle,
        "circle_bwd_censored": sum(b is None for b in circle_bwd),
        "circle_fwd_finite": sum(v is not None for v in circle_fwd),
    }


def suite_escape(resolution: int = 64, cap: int = 10_000) -> Report:
    rep = Report("escape")
    j = diagonal_convergence()
    rep.checks.append(Check("(3,3) reaches the regular octagon within 80 steps", j is not None, detail=f"steps {j}"))
    fwd, bwd = escape_times((0.8, 0.8), 1000)
    rep.checks.append(Check("(0.8, 0.8): forward convex, backward escapes", fwd is None and bwd is not None, detail=f"{fwd}, {bwd}"))
    o = unit_circle_seed(40)
    b = circle_backward_escape(o, 1000)
    f, _ = escape_times(o, 1000)
    rep.checks.append(Check("circle at 40 deg: backward convex, forward escapes", b is None and f is not None, detail=f"{f}, {b}"))
    rep.checks.append(Check("(5,6): T3^2 has order 3", order_three_seed()))
    r = antidiagonal_fixed_residual(X_STAR)
    rep.checks.append(Check("antidiagonal residual vanishes at x*", abs(r) < 1e-10, detail=f"{r:.3g}"))
    s = escape_scan_report(resolution, cap)
    rep.checks.append(Check("generic convex cells escape both ways", s["generic"] == s["generic_both_finite"], s["generic"], failures=s["generic"] - s["generic_both_finite"]))
    rep.checks.append(Check("diagonal cells forward-censored", s["diagonal"] == s["diagonal_fwd_censored"], s["diagonal"]))
    rep.checks.append(Check("circle points backward-censored", s["circle"] == s["circle_bwd_censored"], s["circle"]))
    return rep


# -- polygons ---------------------------------------------------------------


def random_convex_polygon(n: int, rng: random.Random) -> Polygon:
    from .dynamics import is_convex_affine

    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        radii = [rng.uniform(0.7, 1.3) for _ in range(n)]
        pts = [(r * math.cos(a), r * math.sin(a)) for a, r in zip(angles, radii)]
        try:
            if is_convex_affine(pts):
                return Polygon.from_affine(pts)
        except DegenerateInput:
            continue


def pentagram_classics(trials: int = 50, seed: int = 0, tol: float = 1e-8) -> tuple[int, int]:
    rng = random.Random(seed)
    pent = sum(projectively_equivalent(p, deep_diagonal(p, 2), tol) for p in (random_convex_polygon(5, rng) for _ in range(trials)))
    hexa = sum(
        projectively_equivalent(p, deep_diagonal(deep_diagonal(p, 2), 2), tol)
        for p in (random_convex_polygon(6, rng) for _ in range(trials))
    )
    return pent, hexa


def offcentre_poncelet(offset: float = 0.1):
    outer = Conic.circle(0, 0, 1)
    return poncelet_polygon(outer, 8, (0.6, 0.8), lambda r: Conic.circle(offset, 0, r), (0.7, 1 - offset - 1e-6))


def suite_poncelet(trials: int = 50) -> Report:
    rep = Report("poncelet")
    pent, hexa = pentagram_classics(trials)
    rep.checks.append(Check("T2 of a convex pentagon is equivalent to it", pent == trials, trials, failures=trials - pent))
    rep.checks.append(Check("T2^2 of a convex hexagon is equivalent to it", hexa == trials, trials, failures=trials - hexa))
    res = offcentre_poncelet()
    ok = res.closure_defect < 1e-10 and projectively_equivalent(res.polygon, deep_diagonal(res.polygon, 3), 1e-8)
    rep.checks.append(Check("Poncelet octagon is equivalent to its T3 image", ok, detail=f"closure {res.closure_defect:.3g}"))
    return rep


# -- calibration ------------------------------------------------------------


def calibration_agreement(n: int = 200, seed: int = 3, tol: float = 1e-10) -> tuple[int, int, float]:
    """Compare geometric and closed-form T3 on float seeds in [-2, 2]^2."""
    rng = random.Random(seed)
    tried = bad = 0
    worst = 0.0
    while tried < n:
        o = (rng.uniform(-2, 2), rng.uniform(-2, 2))
        try:
            a = t3(o)
            g = geometric_t3(o)
        except PentagramError:
            continue
        tried += 1
        err = max(abs(a.x - g.x), abs(a.y - g.y)) / max(1.0, abs(a.x), abs(a.y))
        worst = max(worst, err)
        bad += err > tol
    return tried, bad, worst


def suite_calibration(trials: int = 200) -> Report:
    rep = Report("calibration")
    cal = calibrate_labeling()
    frozen = (cal.shift, cal.mirror) == (LABEL_SHIFT, LABEL_MIRROR)
    rep.checks.append(Check("calibrated labeling matches the frozen one", frozen, detail=f"working {cal.all_working}"))
    tried, bad, worst = calibration_agreement(trials)
    rep.checks.append(Check("geometric T3 equals closed form to 1e-10", bad == 0, tried, failures=bad, detail=f"worst {worst:.3g}"))
    return rep


def run_suite(name: str, trials: int | None = None, backend: str = "rational") -> list[Report]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, trials, backend)]
    if name == "identities":
        return [suite_identities(trials or 500, backend)]
    if name == "cubic":
        return [suite_cubic()]
    if name == "escape":
        return [suite_escape()]
    if name == "poncelet":
        return [suite_poncelet(trials or 50)]
    if name == "calibration":
        return [suite_calibration(trials or 200)]
    raise ValueError(f"unknown suite {name!r}")
