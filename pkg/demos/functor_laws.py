"""Lifting twice equals lifting once through the tensor product.

Takes one polynomial map, lifts it through jet2 and then through the dual
numbers, and compares with the single lift through jet2 (x) dual.  Then runs
a small seeded slice of the law suites.
"""

from weil import SmoothMap, WeilPoint, iterated_lift, lift_map, preset, tensor
from weil.algebra import augmentation, new_morphism
from weil.laws import run_suite, summarize
from weil.lift import alpha_on_chart, nested_to_tensor, tensor_to_nested

jet2, dual = preset("jet2"), preset("dual")
t = tensor(jet2, dual)
f = SmoothMap.parse(["x0^2*x1 - x1/2", "x0^3"], 2)

p = WeilPoint.of(t.algebra, ["1 + x0 + x1", "2 - x0^2 + 3*x0*x1"])
once = lift_map(f, t.algebra)(p)
twice = nested_to_tensor(jet2, dual, iterated_lift(f, jet2, dual, tensor_to_nested(jet2, dual, p)), t.algebra)
print("through jet2(x)dual:", once)
print("jet2 then dual     :", twice)
print("equal              :", once == twice)

# alpha of a morphism commutes with lifted maps
trunc = new_morphism(jet2, dual, ["x0"])
q = WeilPoint.of(jet2, ["1 + x0 - x0^2", "-1 + 2*x0^2"])
lhs = alpha_on_chart(trunc, lift_map(f, jet2)(q))
rhs = lift_map(f, dual)(alpha_on_chart(trunc, q))
print("naturality of trunc:", lhs == rhs, lhs)
print("aug then base point:", alpha_on_chart(augmentation(jet2), q))

for suite in ("composition", "alpha"):
    reports = run_suite(suite, seed=1, trials=5, n_maps=4)
    print(suite, summarize(reports))
