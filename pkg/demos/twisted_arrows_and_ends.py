"""Twisted arrow categories, and natural transformations computed as an end.

Run with ``python demos/twisted_arrows_and_ends.py``.
"""
from fincatlab import cyclic_group, identity_functor, iter_functors, ordinal
from fincatlab.twisted import (
    coend_oracle,
    hom_bifunctor,
    interval_poset,
    interval_poset_iso,
    nat_direct,
    nat_via_end,
    twisted_arrow,
)

print("Tw([n]) has one object per pair i <= j:")
for n in range(5):
    T = twisted_arrow(ordinal(n)).category
    print(f"  n={n}: {T.n_objects:2d} objects, {T.n_morphisms:3d} morphisms")

# Arrows of Tw run from an interval to the intervals it contains once flipped.
F = interval_poset_iso(3)
print("\nintervals of [3] ordered by containment ≅ flipped Tw([3]):", F is not None)
print("  e.g.", {x: F.obj(x) for x in list(interval_poset(3).objects)[:3]})

# Nat(F, G) two ways: directly, and as compatible families over Tw(C).
C, D = ordinal(1), ordinal(2)
pairs = [(F, G) for F in iter_functors(C, D) for G in iter_functors(C, D)]
agree = all(len(nat_direct(F, G)) == len(nat_via_end(F, G)) for F, G in pairs)
print(f"\nNat(F, G) via the end matches the direct count on all {len(pairs)} pairs [1] → [2]:", agree)

Z3 = cyclic_group(3)
print("natural endotransformations of id on Z/3 (its centre):", len(nat_direct(identity_functor(Z3), identity_functor(Z3))))

# The coend of Hom counts endomorphisms up to conjugation.
for C in (ordinal(2), cyclic_group(2)):
    print(f"coend of Hom over {C.name}: {coend_oracle(hom_bifunctor(C))} classes")
