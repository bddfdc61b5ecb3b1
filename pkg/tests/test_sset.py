from math import comb

import pytest

from fincatlab import cyclic_group, is_isomorphic, ordinal, product
from fincatlab.errors import DimensionBoundExceeded, SimplicialIdentityError
from fincatlab.sset import (
    SSet,
    boundary,
    coskeleton,
    esd,
    fiber_compare,
    find_sset_iso,
    horn,
    is_k_coskeletal,
    mapping_simplex,
    mapping_simplex_decompositions,
    nerve,
    nerve_chain,
    realize,
    relative_nerve,
    simplex,
    spine,
)
from fincatlab.sset import product as sset_product
from fincatlab.twisted import twisted_arrow


def counts(X, top=None):
    return [len(X.cells(k)) for k in range((X.dim if top is None else top) + 1)]


def test_simplex_counts_are_monotone_maps():
    # Δⁿ_k is the set of monotone maps [k] → [n]
    for n in range(4):
        assert counts(simplex(n, 3)) == [comb(n + k + 1, k + 1) for k in range(4)]


def test_nerve_of_ordinal_is_simplex():
    for n in range(4):
        assert find_sset_iso(nerve(ordinal(n), 3), simplex(n, 3)) is not None


def test_nerve_of_group_counts():
    # N(BG)_k = G^k
    assert counts(nerve(cyclic_group(2), 4)) == [1, 2, 4, 8, 16]


def test_horn_and_boundary_counts():
    assert counts(horn(2, 1, 3)) == [3, 5, 7, 9]
    # ∂Δ² has the 2-simplices of Δ² except the top one
    assert counts(boundary(2, 2)) == [3, 6, 9]


def test_bad_face_table_is_rejected():
    X = simplex(1, 1)
    d = [[], [dict(t) for t in X._d[1]]]
    s0 = [dict(t) for t in X._s[0]]
    # send a vertex to a non-degenerate edge: d0 s0 = id fails
    v = X.cells(0)[0]
    s0[0][v] = next(x for x in X.cells(1) if X.face(1, 0, x) != X.face(1, 1, x))
    with pytest.raises(SimplicialIdentityError):
        SSet(1, [X.cells(0), X.cells(1)], d, [s0, []])


@pytest.mark.parametrize("n,i", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_inner_horn_realizes_to_ordinal(n, i):
    assert is_isomorphic(realize(horn(n, i, n)), ordinal(n))


def test_outer_horn_does_not_realize_to_ordinal():
    assert not is_isomorphic(realize(horn(2, 0, 2)), ordinal(2))


@pytest.mark.parametrize("n", range(1, 6))
def test_spine_realizes_to_ordinal(n):
    assert is_isomorphic(realize(spine(n, max(n, 2))), ordinal(n))


def test_product_of_simplices():
    P = sset_product(simplex(1, 2), simplex(1, 2))
    assert find_sset_iso(P, nerve(product(ordinal(1), ordinal(1)), 2)) is not None
    assert is_isomorphic(realize(P), product(ordinal(1), ordinal(1)))


def test_nerves_are_two_coskeletal():
    assert is_k_coskeletal(nerve(ordinal(2), 4), 2)
    assert is_k_coskeletal(nerve(cyclic_group(2), 4), 2)
    # the 2-sphere of ∂Δ² has no filler
    assert not is_k_coskeletal(boundary(2, 3), 1)


def test_coskeleton_of_nerve_is_nerve():
    N = nerve(ordinal(1), 3)
    assert find_sset_iso(coskeleton(N, 2, 3), N) is not None


def test_edgewise_subdivision_matches_twisted_arrows():
    for C in (ordinal(1), ordinal(2), cyclic_group(2)):
        assert find_sset_iso(esd(nerve(C, 5), 2), nerve(twisted_arrow(C).outer_to_inner(), 2)) is not None


def test_edgewise_subdivision_needs_room():
    with pytest.raises(DimensionBoundExceeded):
        esd(simplex(1, 2), 2)


def test_mapping_simplex_of_identity_chain():
    from fincatlab import identity_functor

    phi = nerve_chain([identity_functor(ordinal(0))], 2)
    M = mapping_simplex(phi).underlying
    # [0] → [0] over Δ¹ is Δ¹ itself
    assert find_sset_iso(M, simplex(1, 2)) is not None
    assert relative_nerve(phi).underlying.dim == 2
    assert mapping_simplex_decompositions(phi).passed
    assert all(fiber_compare(phi, i).passed for i in range(2))
