"""
============================
Real level sets of psi
============================

Each level psi = lam is the affine part of a plane cubic.  Away from
lam in {-2, 0, 2} the real locus is two loops: one bounded, one passing
through the point at infinity [1:1:0].  The bounded loop meets the
antidiagonal twice, the other loop once.
"""
from pathlib import Path

from pentagram.cubic import antidiagonal_roots, is_singular_level, trace_real_curve
from pentagram.io import levelset_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# %%
for lam in (-2, 0, 2, 1, 4j * 2**0.5):
    rep = is_singular_level(lam)
    print(f"lam = {lam}: singular={rep.singular} witness={rep.witness}")

# %%
for lam in (0.5, 1.0, 1.9, -1.0, 3.0):
    comps = trace_real_curve(lam)
    crossings = [len(c.l_crossings) for c in comps]
    print(f"lam = {lam:4}: bounded={[c.bounded for c in comps]} crossings={crossings} "
          f"expected x={[round(float(x), 6) for x in antidiagonal_roots(lam)]}")
    (out / f"levelset_{lam}.svg").write_text(levelset_svg(lam, comps))

print("figures in", out)
