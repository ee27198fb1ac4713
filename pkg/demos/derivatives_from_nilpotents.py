"""Derivatives read off nilpotent coordinates.

Evaluating a map on ``a + d`` in the dual numbers gives ``f(a) + f'(a) d``.
Higher truncations carry higher Taylor coefficients, and tensoring two copies
of the dual numbers exposes the mixed second partial.
"""

import math

from weil import SmoothMap, WeilPoint, lift_map, preset

# -- first derivative, exactly ------------------------------------------------
dual = preset("dual")
cube = lift_map(SmoothMap.parse(["x0^3"], 1), dual)
print("x^3 at 2 + d      :", cube(WeilPoint.of(dual, ["2 + x0"])).coords_vec[0])
print("x^3 at 2 + 3d     :", cube(WeilPoint.of(dual, ["2 + 3*x0"])).coords_vec[0])

# -- a truncated Taylor series -------------------------------------------------
# jet3 keeps d^0..d^3, so the coefficients are f^(j)(a) / j!.
jet3 = preset("jet3").float()
f = SmoothMap.parse(["exp(x0)*cos(x0)"], 1)
out = lift_map(f, jet3)(WeilPoint.of(jet3, ["0.5 + x0"])).coords_vec[0]
print("exp*cos on jet3   :", [round(c, 10) for c in out.coords])
derivs = [c * math.factorial(j) for j, c in enumerate(out.coords)]
print("  derivatives     :", [round(v, 10) for v in derivs])

# -- the mixed partial ---------------------------------------------------------
# In dual(x)dual the coordinate of x0*x1 is d^2 f / dx dy.
tt = preset("dual⊗dual").float()
g = SmoothMap.parse(["sin(x0)*exp(x1)"], 2)
val = lift_map(g, tt)(WeilPoint.of(tt, ["0.3 + x0", "-0.2 + x1"])).coords_vec[0]
mixed = val.coords[tt.index[(1, 1)]]
print("d2/dxdy sin*exp   :", mixed)
print("  cos(.3)exp(-.2) :", math.cos(0.3) * math.exp(-0.2))

h = 1e-4
fd = sum(s * math.sin(0.3 + a * h) * math.exp(-0.2 + b * h)
         for a, b, s in [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]) / (4 * h * h)
print("  finite diff     :", fd)
