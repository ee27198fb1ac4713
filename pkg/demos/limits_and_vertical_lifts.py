"""Limits of Weil algebras, microlinear charts and the vertical lift.

The pullback of two augmentations dual -> R <- dual is the algebra of two
first-order directions with vanishing products.  Charts see this limit as a
limit again, and the vertical lift of a trivial bundle keeps nilpotent
directions only along the fiber.
"""

from weil.algebra import preset
from weil.limits import (
    Chart,
    check_microlinear_chart,
    check_transversal,
    compute_limit,
    product_cone,
    pullback_d2,
    vertical_weil,
    zero_over_product,
)

cert = compute_limit(pullback_d2())
print("apex:", cert.apex.basis_labels(), "relations", list(cert.apex.relation_sources))
for chart in ("R0", "R1", "R2", "box:(0,1)"):
    print(f"  microlinear {chart:10s}", check_microlinear_chart(Chart.parse(chart), cert).status)

print("product cone R3 -> R1, R2 :", check_transversal(product_cone(1, 2)).status)
print("R0 over R1, R1            :", check_transversal(zero_over_product(), [preset("R")]).status)

carrier = vertical_weil(1, 2, preset("dual"))
print("vertical carrier          :", carrier.describe(), "dim", carrier.dim,
      "nilpotent", carrier.nilpotent_dim)
print("  transversal             :", ", ".join(carrier.transversal.probes))
