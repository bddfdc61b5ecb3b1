"""Algebraic laws checked on seeded random instances."""
from itertools import product as iproduct
from math import prod

from hypothesis import given, settings
from hypothesis import strategies as st

from fincatlab import (
    discrete,
    functor_category,
    is_isomorphic,
    iter_functors,
    op,
    ordinal,
)
from fincatlab.duskin import check_3_coskeletal, duskin_nerve, hom_poset, is_two_coskeletal, nerve_agreement
from fincatlab.fincat import interior, is_groupoid, limit_cat, slice_under
from fincatlab.groth import canonical_cleavage, cart_groth, free_fibration, is_groth_fibration, straighten
from fincatlab.sset import esd, find_sset_iso, is_k_coskeletal, nerve, realize, simplex
from fincatlab.sset import product as sset_product
from fincatlab.twisted import coend_of, end_of, hom_between, hom_bifunctor, twisted_arrow
from fincatlab.verify import generators as gen

seeds = st.integers(min_value=0, max_value=10**6)
fast = settings(max_examples=25, deadline=None)


def category(seed, k=3, coloured=1):
    return gen.random_category(gen.rng_for(seed, "prop"), k, max_coloured=coloured)


# ------------------------------------------------------------- categories
def functors_by_brute_force(C, D):
    """Every pair of (object map, morphism map) that satisfies the functor laws."""
    count = 0
    for om in iproduct(D.objects, repeat=C.n_objects):
        o = dict(zip(C.objects, om))
        choices = [D.hom(o[C.src(m)], o[C.tgt(m)]) for m in C.morphisms]
        for mm in iproduct(*choices):
            f = dict(zip(C.morphisms, mm))
            if all(f[C.identity(x)] == D.identity(o[x]) for x in C.objects) and all(
                f[h] == D.compose(f[g], f[u]) for g, u, h in C.composition_table()
            ):
                count += 1
    return count


@fast
@given(seeds)
def test_functor_enumeration_matches_brute_force(seed):
    C, D = category(seed, 2), category(seed + 1, 3)
    assert len(list(iter_functors(C, D))) == functors_by_brute_force(C, D)


@fast
@given(seeds)
def test_slice_under_matches_commuting_triangles(seed):
    C = category(seed)
    for x in C.objects:
        S, _ = slice_under(C, x)
        triangles = [(f, g, h) for f in C.out_of(x) for g in C.out_of(x)
                     for h in C.hom(C.tgt(f), C.tgt(g)) if C.compose(h, f) == g]
        assert S.n_morphisms == len(triangles)


@fast
@given(seeds)
def test_functor_category_with_point(seed):
    C = category(seed, 2)
    assert is_isomorphic(functor_category(ordinal(0), C), C)
    assert is_isomorphic(functor_category(C, ordinal(0)), ordinal(0))


@fast
@given(seeds)
def test_limit_over_index_with_initial_object(seed):
    r = gen.rng_for(seed, "limit")
    D = gen.random_diagram(r, ordinal(1), 2)
    L, _ = limit_cat(D)
    assert is_isomorphic(L, D.value[0])


@fast
@given(seeds)
def test_interior_is_idempotent(seed):
    C = category(seed)
    I = interior(C)
    assert is_groupoid(I)
    assert interior(I).n_morphisms == I.n_morphisms


# ---------------------------------------------------------- ends, twisted
@fast
@given(seeds)
def test_twisted_objects_are_morphisms(seed):
    C = category(seed)
    assert sorted(map(repr, twisted_arrow(C).category.objects)) == sorted(map(repr, C.morphisms))


@fast
@given(seeds)
def test_end_over_discrete_is_product(seed):
    r = gen.rng_for(seed, "end")
    X, D = discrete([0, 1]), gen.random_category(r, 3)
    F, G = gen.random_functor(r, X, D), gen.random_functor(r, X, D)
    tuples, _ = end_of(hom_between(F, G))
    assert len(tuples) == prod(len(D.hom(F.obj(x), G.obj(x))) for x in X.objects)


def test_coend_over_discrete_is_coproduct():
    X = discrete(range(3))
    classes, _ = coend_of(hom_bifunctor(X))
    assert len(classes) == 3


# -------------------------------------------------------------- fibrations
@fast
@given(seeds)
def test_grothendieck_is_fibration_with_invertible_cartesian_arrows(seed):
    r = gen.rng_for(seed, "groth")
    C = gen.random_category(r, 2)
    F = gen.random_diagram(r, op(C), 2)
    q = cart_groth(F)
    assert is_groth_fibration(q.proj)
    expected = {m for m in q.total.morphisms if F.value[q.base.src(m[0])].is_iso(m[1])}
    assert set(q.cartesian) == expected


@fast
@given(seeds)
def test_straightening_strict_diagram_is_strict(seed):
    r = gen.rng_for(seed, "strict")
    C = gen.random_category(r, 2)
    q = cart_groth(gen.random_diagram(r, op(C), 2))
    assert straighten(q, canonical_cleavage(q)).is_strict()


@fast
@given(seeds)
def test_free_fibration_is_fibration(seed):
    r = gen.rng_for(seed, "free")
    C = gen.random_category(r, 2)
    E = gen.random_category(r, 2)
    p = gen.random_functor(r, E, C)
    assert is_groth_fibration(free_fibration(p).proj)


# ------------------------------------------------------------ simplicial
@fast
@given(seeds)
def test_realize_nerve_is_identity(seed):
    # realization is defined for acyclic 1-skeleta
    C = category(seed, coloured=0)
    N = nerve(C, 3)
    assert N.identity_violation() is None
    assert is_isomorphic(realize(N), C)
    assert find_sset_iso(nerve(realize(N), 3), N) is not None


@fast
@given(seeds)
def test_nerves_are_two_coskeletal(seed):
    assert is_k_coskeletal(nerve(category(seed), 4), 2)


@fast
@given(seeds)
def test_esd_is_twisted_arrow_nerve(seed):
    C = category(seed)
    assert find_sset_iso(esd(nerve(C, 5), 2), nerve(twisted_arrow(C).outer_to_inner(), 2)) is not None


def test_square_nondegenerate_counts():
    assert sset_product(simplex(1, 3), simplex(1, 3)).nondeg_counts()[:3] == (4, 5, 2)


# ------------------------------------------------------------------ Duskin
@fast
@given(seeds)
def test_duskin_nerve_of_category(seed):
    assert nerve_agreement(category(seed), 3).passed


@settings(max_examples=6, deadline=None)
@given(seeds)
def test_duskin_two_coskeletal_iff_locally_thin(seed):
    B = gen.random_small_two_cat(gen.rng_for(seed, "thin"))
    assert is_two_coskeletal(B) == B.is_locally_thin()
    assert check_3_coskeletal(B, top=4).passed
    assert duskin_nerve(B, 3).identity_violation() is None


def test_hom_poset_sizes():
    for n in range(5):
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                assert hom_poset(n, i, j).n_objects == 2 ** (j - i - 1)
