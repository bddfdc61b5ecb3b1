"""The Duskin nerve of a strict 2-category and normal oplax functors.

Run with ``python demos/duskin_nerve.py``.
"""
from fincatlab.duskin import (
    check_3_coskeletal,
    delooping,
    duskin_decode,
    duskin_encode,
    duskin_nerve,
    hom_poset,
    is_two_coskeletal,
    walking_two_iso,
)
from fincatlab.verify import generators as gen

B = delooping(2)
X = duskin_nerve(B, 4)
print("Duskin nerve of BBZ/2, cells per level:", X.counts())
print("  (k-simplices are normalized Z/2 2-cocycles on Δᵏ, so 2^C(k,2) of them)")

v = check_3_coskeletal(B)
print("every 4- and 5-sphere has a unique filler:", v.passed, v.details)
print("2-coskeletal? BBZ/2:", is_two_coskeletal(B), " walking 2-iso:", is_two_coskeletal(walking_two_iso()))

print("\nhom posets of the coherent simplex are cubes:",
      [hom_poset(4, 0, j).n_objects for j in range(1, 5)])

F = gen.random_cocycle_oplax(gen.rng_for(2, "demo"), n=2)
m = duskin_encode(F, 4)
G = duskin_decode(m, F.dom, F.cod)
print("\na normal oplax functor [2] → BBZ/2 with η =",
      {f"{f}·{g}": e[2] for (f, g), e in F.eta.items() if f[0] != f[1] and g[0] != g[1]})
print("decoding its nerve map recovers it:", G.eta == F.eta and G.one == F.one and G.two == F.two)
