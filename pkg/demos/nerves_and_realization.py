"""Nerves, realization, edgewise subdivision and the mapping simplex.

Run with ``python demos/nerves_and_realization.py``.
"""
from fincatlab import cyclic_group, is_isomorphic, ordinal, product
from fincatlab.sset import (
    esd,
    find_sset_iso,
    horn,
    mapping_simplex,
    mapping_simplex_decompositions,
    nerve,
    nerve_chain,
    realize,
    simplex,
    spine,
)
from fincatlab.sset import product as sset_product
from fincatlab.twisted import twisted_arrow
from fincatlab.verify import generators as gen

N = nerve(cyclic_group(2), 4)
print("N(BZ/2) level sizes:", N.counts(), "nondegenerate:", N.nondeg_counts())

print("\nrealizations:")
for name, X, target in [
    ("Λ³₁", horn(3, 1, 3), ordinal(3)),
    ("Λ²₀", horn(2, 0, 2), ordinal(2)),
    ("Sp⁴", spine(4, 4), ordinal(4)),
    ("Δ¹×Δ²", sset_product(simplex(1, 3), simplex(2, 3)), product(ordinal(1), ordinal(2))),
]:
    print(f"  τ({name}) ≅ expected: {is_isomorphic(realize(X), target)}")

C = cyclic_group(2)
left = esd(nerve(C, 5), 2)
right = nerve(twisted_arrow(C).outer_to_inner(), 2)
print("\nesd N(BZ/2) ≅ N(Tw(BZ/2)):", find_sset_iso(left, right) is not None, left.counts())

phi = gen.random_chain(gen.rng_for(5, "demo"), 2, dim=3)
M = mapping_simplex(phi)
print(f"\nmapping simplex of a chain [2] → sSet: {M.underlying.nondeg_counts()} nondegenerate cells,",
      f"{len(M.marked)} marked edges")
print("pushout, zigzag and coend displays agree:", mapping_simplex_decompositions(phi).passed)
