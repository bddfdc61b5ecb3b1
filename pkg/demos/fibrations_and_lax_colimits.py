"""Grothendieck constructions as (op)lax colimits, and the free fibration.

Run with ``python demos/fibrations_and_lax_colimits.py``.
"""
from fincatlab import CatValuedDiagram, identity_functor, is_isomorphic, op, ordinal, terminal
from fincatlab.fincat import constant_functor
from fincatlab.groth import (
    adjunction_check,
    canonical_cleavage,
    cart_groth,
    cocart_groth,
    free_fibration,
    is_groth_fibration,
    lax_colimit_check,
    regroup,
    sections_vs_oplax_limit,
    straighten,
)
from fincatlab.verify import generators as gen

# A diagram [1] → Cat collapsing an arrow to a point.
A, T = ordinal(1), terminal()
F = CatValuedDiagram(ordinal(1), {0: A, 1: T},
                     {(0, 0): identity_functor(A), (1, 1): identity_functor(T), (0, 1): constant_functor(A, T, T.objects[0])})
q = cocart_groth(F)
print(f"∫F has {q.total.n_objects} objects and {q.total.n_morphisms} morphisms over [1]")
v = lax_colimit_check(F)
print("it is the lax colimit of F (cocone, surjectivity, probes):", v.passed, v.details)

# The constant point diagram gives back the base.
point = CatValuedDiagram(ordinal(2), {c: T for c in range(3)}, {m: identity_functor(T) for m in ordinal(2).morphisms})
print("∫(constant point) ≅ [2]:", is_isomorphic(cocart_groth(point).total, ordinal(2)))

# Straightening a random Cartesian fibration and rebuilding it.
r = gen.rng_for(2024, "demo")
base = gen.random_category(r, 2)
D = gen.random_diagram(r, op(base), 2)
q = cart_groth(D)
cl = canonical_cleavage(q)
print(f"\nrandom fibration: {q.total.n_objects} objects over a {base.n_objects}-object base;",
      "rebuilt from its straightening:", is_isomorphic(*(lambda R: (R.dom, R.cod))(regroup(q, straighten(q, cl), cl))))
print("sections ≅ oplax limit:", sections_vs_oplax_limit(D).passed)

# The free fibration on p: E → C and its universal property.
p = gen.random_functor(r, ordinal(1), base)
Fp = free_fibration(p)
print(f"\nfree fibration on an arrow: {Fp.total.n_objects} objects, fibration: {is_groth_fibration(Fp.proj)}")
print("restriction along the unit is an equivalence onto functors over C:", adjunction_check(p, q).passed)
