import pytest

from fincatlab import (
    FinCat,
    Functor,
    compose_functors,
    cyclic_group,
    discrete,
    find_isomorphism,
    functor_category,
    identity_functor,
    is_isomorphic,
    iter_functors,
    iter_nat_trans,
    op,
    ordinal,
    poset_category,
    product,
    size_caps,
    terminal,
    walking_iso,
)
from fincatlab.errors import AssocViolation, CategoryLawError, FunctorLawError, SizeBoundExceeded


def monoid(elements, table, name="M"):
    return FinCat(["*"], [(m, "*", "*") for m in elements], {"*": elements[0]}, table, name=name)


def test_ordinal_counts():
    for n in range(5):
        C = ordinal(n)
        assert C.n_objects == n + 1
        assert C.n_morphisms == (n + 1) * (n + 2) // 2


def test_composition_and_identities():
    C = ordinal(2)
    f, g = (0, 1), (1, 2)
    assert C.compose(g, f) == (0, 2)
    assert C.compose(f, C.identity(0)) == f
    assert C.src(g) == 1 and C.tgt(g) == 2
    assert set(C.hom(0, 2)) == {(0, 2)}
    assert C.hom(2, 0) == [] or not list(C.hom(2, 0))


def test_non_associative_table_is_rejected():
    els = ["1", "a", "b"]
    table = {("1", x): x for x in els} | {(x, "1"): x for x in els}
    table |= {("a", "a"): "a", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}
    with pytest.raises(AssocViolation):
        monoid(els, table)


def test_missing_composite_is_rejected():
    with pytest.raises(CategoryLawError):
        FinCat([0, 1, 2], [("i0", 0, 0), ("i1", 1, 1), ("i2", 2, 2), ("f", 0, 1), ("g", 1, 2)],
               {0: "i0", 1: "i1", 2: "i2"},
               {("f", "i0"): "f", ("i1", "f"): "f", ("g", "i1"): "g", ("i2", "g"): "g"})


def test_isomorphisms_in_walking_iso():
    W = walking_iso()
    non_id = [m for m in W.morphisms if not W.is_identity(m)]
    assert len(non_id) == 2
    assert all(W.is_iso(m) for m in non_id)
    assert not ordinal(1).is_iso((0, 1))


def test_functor_counts():
    assert len(list(iter_functors(ordinal(1), ordinal(2)))) == 6
    assert len(list(iter_functors(cyclic_group(2), cyclic_group(2)))) == 2
    assert len(list(iter_functors(cyclic_group(2), cyclic_group(3)))) == 1
    # monotone maps [2] → [1]
    assert len(list(iter_functors(ordinal(2), ordinal(1)))) == 4


def test_functor_law_violation():
    C = ordinal(1)
    with pytest.raises(FunctorLawError):
        Functor(C, C, {0: 1, 1: 0}, {(0, 0): (1, 1), (1, 1): (0, 0), (0, 1): (0, 1)})


def test_composition_of_functors():
    C = ordinal(2)
    for F in iter_functors(C, C):
        assert compose_functors(F, identity_functor(C)).key == F.key
        assert compose_functors(identity_functor(C), F).key == F.key


def test_natural_transformations_of_identity_on_group():
    # natural endotransformations of the identity on a group form its centre
    for n in (2, 3):
        G = cyclic_group(n)
        I = identity_functor(G)
        assert len(list(iter_nat_trans(I, I))) == n


def test_product_and_op():
    P = product(ordinal(1), ordinal(1))
    assert (P.n_objects, P.n_morphisms) == (4, 9)
    assert is_isomorphic(op(ordinal(3)), ordinal(3))
    assert not is_isomorphic(ordinal(2), product(ordinal(1), ordinal(1)))
    S = poset_category(range(4), lambda a, b: a == b or (a == 0 and b == 3))
    assert find_isomorphism(S, product(ordinal(1), ordinal(1))) is None


def test_functor_category_of_arrows():
    # Fun([1], [1]) is [2]
    assert is_isomorphic(functor_category(ordinal(1), ordinal(1)), ordinal(2))
    assert functor_category(discrete([0, 1]), terminal()).n_objects == 1


def test_size_cap_is_enforced():
    with size_caps(max_objects=3):
        with pytest.raises(SizeBoundExceeded):
            ordinal(5)
