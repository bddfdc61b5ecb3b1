import pytest

from fincatlab import cyclic_group, is_isomorphic, ordinal, product
from fincatlab.duskin import (
    NormalOplax,
    check_3_coskeletal,
    coherent_nerve_agreement,
    coherent_simplices,
    congruence_two_cat,
    cube_check,
    delooping,
    duskin_decode,
    duskin_encode,
    duskin_nerve,
    hom_poset,
    identity_oplax,
    is_two_coskeletal,
    nerve_agreement,
    relative_fibration_straighten,
    round_trip,
    walking_two_iso,
)
from fincatlab.errors import CoherenceViolation, DomainMismatch, EnrichedAssocViolation, NotRelative
from fincatlab.groth import cart_groth
from fincatlab.serialize import two_cat_from_json, two_cat_to_json
from fincatlab.verify import generators as gen


def level_counts(X):
    return tuple(len(X.cells(k)) for k in range(X.dim + 1))


def test_duskin_nerve_of_z2_counts():
    assert level_counts(duskin_nerve(delooping(2), 3)) == (1, 1, 2, 8)


@pytest.mark.parametrize("n", [2, 3])
def test_duskin_nerve_of_delooping_is_normalized_cocycles(n):
    # k-simplices of BBZ/n are 2-cocycles on Δᵏ vanishing on degenerate faces: n^C(k, 2)
    X = duskin_nerve(delooping(n), 4 if n == 2 else 3)
    assert level_counts(X) == tuple(n ** (k * (k - 1) // 2) for k in range(X.dim + 1))


def test_three_coskeletal_on_z2_sphere_census():
    v = check_3_coskeletal(delooping(2))
    assert v.passed
    assert v.details[4] == {"spheres": 64, "filler_counts": [1]}
    assert v.details[5] == {"spheres": 1024, "filler_counts": [1]}


def test_two_coskeletal_exactly_when_locally_thin():
    assert is_two_coskeletal(walking_two_iso())
    assert walking_two_iso().is_21()
    assert not is_two_coskeletal(delooping(2))
    assert is_two_coskeletal(congruence_two_cat(ordinal(2)))


def test_duskin_nerve_of_category_is_nerve():
    for C in (ordinal(2), cyclic_group(2), product(ordinal(1), ordinal(1))):
        assert nerve_agreement(C, 4).passed


def test_coherent_simplex_counts():
    B = delooping(2)
    assert len(list(coherent_simplices(B, 2))) == 2
    assert len(list(coherent_simplices(B, 3))) == 8
    assert coherent_nerve_agreement(B, 3).passed


def test_hom_posets_are_cubes():
    P = hom_poset(3, 0, 3)
    assert P.n_objects == 4
    assert is_isomorphic(P, product(ordinal(1), ordinal(1)))
    assert hom_poset(4, 0, 4).n_objects == 8
    assert all(cube_check(n, i, j).passed for n in range(4) for i in range(n + 1) for j in range(i, n + 1))


def cochain_oplax(values):
    """``[3] → BBZ/2`` with all 1-cells and 2-cells trivial and the given η values."""
    B, D = congruence_two_cat(ordinal(3)), delooping(2)
    o = D.objects[0]
    u = D.unit(o)
    eta = {}
    for f in B.one_cells():
        for g in B.one_cells():
            if B.ends(f)[1] == B.ends(g)[0]:
                eta[(f, g)] = (u, u, values.get((f, g), 0))
    return NormalOplax(B, D, {x: o for x in B.objects}, {f: u for f in B.one_cells()},
                       {a: (u, u, 0) for a in B.two_cells()}, eta)


def test_cocycle_law_violation_is_reported():
    F = cochain_oplax({((0, 1), (1, 2)): 1})
    with pytest.raises(CoherenceViolation) as err:
        F.validate()
    assert err.value.law == "vi"


def test_coboundary_eta_is_valid_and_round_trips():
    r = gen.rng_for(1, "oplax")
    for _ in range(4):
        F = gen.random_cocycle_oplax(r, n=2)
        assert round_trip(F, 4).passed
    assert round_trip(identity_oplax(delooping(2)), 4).passed


def test_decode_recovers_eta():
    F = gen.random_cocycle_oplax(gen.rng_for(4, "decode"), n=2)
    m = duskin_encode(F, 4)
    G = duskin_decode(m, F.dom, F.cod)
    assert G.eta == F.eta and G.one == F.one


def test_decode_rejects_wrong_domain():
    F = gen.random_cocycle_oplax(gen.rng_for(2, "mismatch"), n=2)
    m = duskin_encode(F, 4)
    with pytest.raises(DomainMismatch):
        duskin_decode(m, congruence_two_cat(ordinal(1)), F.cod)


def test_broken_interchange_is_rejected():
    d = two_cat_to_json(delooping(2))
    for row in d["comp2"]:
        if row[0][2] == 1 and row[1][2] == 1:
            row[2] = [row[2][0], row[2][1], 1]
    with pytest.raises(EnrichedAssocViolation):
        two_cat_from_json(d)


def test_relative_straightening_requires_cartesian_arrows_in_w():
    from fincatlab import CatValuedDiagram, identity_functor, op

    C = ordinal(1)
    V = ordinal(1)
    q = cart_groth(CatValuedDiagram(op(C), {c: V for c in C.objects},
                                    {m: identity_functor(V) for m in op(C).morphisms}))
    everything = set(q.total.morphisms)
    R = relative_fibration_straighten(q, everything)
    assert set(R.weak) == set(C.objects)
    identities = {q.total.identity(x) for x in q.total.objects}
    with pytest.raises(NotRelative):
        relative_fibration_straighten(q, identities)
