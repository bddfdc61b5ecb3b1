import pytest

from fincatlab import (
    CatValuedDiagram,
    Functor,
    cyclic_group,
    identity_functor,
    is_isomorphic,
    iter_functors,
    op,
    ordinal,
    product,
    terminal,
)
from fincatlab.fincat import check_colimit_cocone, constant_functor, default_probes
from fincatlab.groth import (
    adjunction_check,
    canonical_cleavage,
    cart_groth,
    cocart_groth,
    collage_left,
    collage_pushout_check,
    dfib_slice_equiv,
    elements,
    fiber,
    fiber_formula_check,
    free_fibration,
    is_discrete_fibration,
    is_groth_fibration,
    is_groth_opfibration,
    iter_presheaves,
    lax_colimit_check,
    lax_colimit_cocone,
    oplax_colimit_check,
    phi_universal_check,
    product_compatibility_check,
    regroup,
    sections_vs_oplax_limit,
    source_fibration_check,
    straighten,
    two_of_three_cart,
    two_of_three_discrete,
    undercat_fiber_check,
)
from fincatlab.verify import generators as gen


def constant(C, V):
    return CatValuedDiagram(C, {c: V for c in C.objects}, {m: identity_functor(V) for m in C.morphisms})


def arrow_diagram():
    """[1] → Cat sending 0 ↦ [1], 1 ↦ [0]."""
    C, A, T = ordinal(1), ordinal(1), terminal()
    act = {(0, 0): identity_functor(A), (1, 1): identity_functor(T), (0, 1): constant_functor(A, T, T.objects[0])}
    return CatValuedDiagram(C, {0: A, 1: T}, act)


def test_grothendieck_of_constant_point_is_base():
    for C in (ordinal(2), product(ordinal(1), ordinal(1)), cyclic_group(2)):
        assert is_isomorphic(cocart_groth(constant(C, terminal())).total, C)
        assert is_isomorphic(cart_groth(constant(op(C), terminal())).total, C)


def test_grothendieck_of_constant_is_product():
    q = cocart_groth(constant(ordinal(1), ordinal(1)))
    assert is_isomorphic(q.total, product(ordinal(1), ordinal(1)))
    assert is_groth_opfibration(q.proj)


def test_cocartesian_construction_counts():
    q = cocart_groth(arrow_diagram())
    # objects (0,0), (0,1), (1,*)
    assert q.total.n_objects == 3
    assert is_groth_opfibration(q.proj)
    F, _ = fiber(q.proj, 0)
    assert is_isomorphic(F, ordinal(1))


def test_non_fibration_is_detected():
    assert is_groth_fibration(identity_functor(ordinal(2)))
    C = ordinal(1)
    # the vertex 1 of [1] has no lift of 0 → 1 but is trivially an opfibration
    p = Functor(ordinal(0), C, {0: 1}, {(0, 0): (1, 1)})
    assert not is_groth_fibration(p)
    assert is_groth_opfibration(p)


def test_straightening_round_trip():
    r = gen.rng_for(3, "test")
    for _ in range(5):
        C = gen.random_category(r, 2)
        q = cart_groth(gen.random_diagram(r, op(C), 2))
        cl = canonical_cleavage(q)
        R = regroup(q, straighten(q, cl), cl)
        assert is_isomorphic(R.dom, R.cod)


def test_free_fibration_on_identity():
    # E ×_C C^[1] for E = C is the arrow category with the target projection
    Fp = free_fibration(identity_functor(ordinal(1)))
    assert Fp.total.n_objects == 3
    assert is_groth_fibration(Fp.proj)


@pytest.mark.parametrize("E", [ordinal(0), ordinal(1)])
def test_adjunction_for_objects_and_arrows(E):
    C = ordinal(2)
    q = cart_groth(arrow_to_three())
    for p in iter_functors(E, C):
        assert adjunction_check(p, q).passed


def arrow_to_three():
    r = gen.rng_for(11, "base")
    return gen.random_diagram(r, op(ordinal(2)), 2)


def test_product_compatibility_and_source_fibration():
    C = ordinal(1)
    for x in iter_functors(ordinal(1), C):
        assert product_compatibility_check(ordinal(1), x).passed
    assert source_fibration_check(ordinal(2)).passed
    assert source_fibration_check(cyclic_group(2)).passed


def test_sections_and_oplax_limit():
    F = constant(op(ordinal(1)), ordinal(1))
    assert sections_vs_oplax_limit(F).passed
    r = gen.rng_for(5, "sections")
    assert sections_vs_oplax_limit(gen.random_diagram(r, op(ordinal(2)), 2)).passed


def test_lax_colimit_constant_point_and_arrow():
    for C in (ordinal(1), ordinal(2)):
        assert lax_colimit_check(constant(C, terminal())).passed
    assert lax_colimit_check(arrow_diagram()).passed
    assert oplax_colimit_check(constant(op(ordinal(1)), ordinal(1))).passed


def test_wrong_apex_fails_universal_property():
    F = constant(ordinal(1), terminal())
    H, _, _ = lax_colimit_cocone(F)
    T = terminal()
    legs = {f: constant_functor(H.value[f], T, T.objects[0]) for f in H.index.objects}
    assert not check_colimit_cocone(H, T, legs, default_probes()).passed


def test_phi_and_fiber_formula():
    F = arrow_diagram()
    X = ordinal(1)
    for k in iter_functors(ordinal(1), F.index):
        assert phi_universal_check(F, X, k).passed
    G = constant(op(ordinal(1)), ordinal(1))
    for D in (ordinal(0), ordinal(1)):
        for phi in iter_functors(D, ordinal(1)):
            assert fiber_formula_check(G, D, phi).passed


def test_collage():
    p = identity_functor(ordinal(1))
    L, _, _ = collage_left(p)
    assert L.n_objects == 4
    assert collage_pushout_check(p).passed
    assert collage_pushout_check(p, right=True).passed
    for F in iter_functors(ordinal(1), ordinal(1)):
        assert undercat_fiber_check(p, ordinal(1), F).passed


def test_two_of_three_and_discrete_fibrations():
    C = ordinal(1)
    X = next(iter(p for p in iter_presheaves(C, 2) if sum(len(v) for v in p.value.values()) == 3))
    _, p = elements(X)
    assert is_discrete_fibration(p)
    assert two_of_three_discrete(identity_functor(p.dom), p, p).passed
    q = cart_groth(constant(op(C), ordinal(1)))
    assert two_of_three_cart(identity_functor(q.total), q.proj, q.proj).passed
    assert dfib_slice_equiv(p).passed
