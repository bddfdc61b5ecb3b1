"""Twisted arrow categories, ends, coends and weighted (co)limits.

Orientation: a morphism ``f → g`` of ``Tw(C)`` is a factorization
``g = b∘f∘a``, so arrows run from an inner arrow to the arrows built
around it.  Ends are limits over ``Tw(C)``; coends are colimits over
``Tw(C)^op``.  The opposite orientation is available as
:meth:`TwCat.outer_to_inner`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable

from .errors import FunctorLawError, TypeMismatch
from .fincat import (
    CatValuedDiagram,
    FinCat,
    Functor,
    NatTrans,
    SetDiagram,
    compose_functors,
    find_isomorphism,
    functor_category,
    iter_nat_trans,
    limit_cat,
    op,
    product,
    set_colimit,
    set_limit,
    slice_over,
    slice_under,
)
from .fincat.category import identity_functor
from .verdict import VerdictReport


@dataclass(frozen=True)
class TwCat:
    base: FinCat
    category: FinCat
    to_base_op: Functor
    to_base: Functor

    def outer_to_inner(self) -> FinCat:
        """The opposite orientation, ``f → g`` whenever ``f`` factors through ``g``."""
        return op(self.category)


def twisted_arrow(C: FinCat) -> TwCat:
    objs = C.morphisms
    mors = []
    for f in objs:
        x, y = C.src(f), C.tgt(f)
        for a in C.into(x):
            fa = C.compose(f, a)
            for b in C.out_of(y):
                mors.append(((f, C.compose(b, fa), (a, b)), f, C.compose(b, fa)))
    Tw = FinCat(
        objs,
        mors,
        {f: (f, f, (C.identity(C.src(f)), C.identity(C.tgt(f)))) for f in objs},
        lambda v, u: (u[0], v[1], (C.compose(u[2][0], v[2][0]), C.compose(v[2][1], u[2][1]))),
        name=f"Tw({C.name or '?'})",
        check=False,
    )
    Cop = op(C)
    to_op = Functor(Tw, Cop, {f: C.src(f) for f in objs}, {m: m[2][0] for m, _, _ in mors}, check=False)
    to_c = Functor(Tw, C, {f: C.tgt(f) for f in objs}, {m: m[2][1] for m, _, _ in mors}, check=False)
    return TwCat(C, Tw, to_op, to_c)


def interval_poset(n: int) -> FinCat:
    """Pairs ``i ≤ j`` in ``[n]`` ordered by ``(i, j) ≤ (i', j')`` iff ``i ≤ i' ≤ j' ≤ j``."""
    from .fincat import poset_category

    els = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    return poset_category(els, lambda p, q: p[0] <= q[0] <= q[1] <= p[1], name=f"I[{n}]")


class Bifunctor:
    """``T: C^op × C → Set`` or ``Cat`` as value and action tables.

    ``action[(a, b)]`` for ``a: x' → x`` and ``b: y → y'`` maps ``T(x, y)`` to
    ``T(x', y')``; for Set it is a dict, for Cat a :class:`Functor`.
    """

    def __init__(self, C: FinCat, value: Callable, action: Callable, *, kind: str = "set", check: bool = True):
        if kind not in ("set", "cat"):
            raise ValueError("kind must be 'set' or 'cat'")
        self.C, self.kind = C, kind
        self.value = {(x, y): value(x, y) for x in C.objects for y in C.objects}
        if kind == "set":
            self.value = {k: tuple(v) for k, v in self.value.items()}
        self.action = {(a, b): action(a, b) for a in C.morphisms for b in C.morphisms}
        if check:
            self._validate()

    def _validate(self):
        C = self.C
        for (a, b), act in self.action.items():
            src = (C.tgt(a), C.src(b))
            tgt = (C.src(a), C.tgt(b))
            if self.kind == "set":
                if set(act) != set(self.value[src]) or not set(act.values()) <= set(self.value[tgt]):
                    raise FunctorLawError(f"action of {(a, b)!r} is not a map of the right sets", [a, b])
                if C.is_identity(a) and C.is_identity(b) and any(k != v for k, v in act.items()):
                    raise FunctorLawError("identity pair acts nontrivially", [a, b])
            else:
                if not (act.dom == self.value[src] and act.cod == self.value[tgt]):
                    raise FunctorLawError(f"action of {(a, b)!r} has the wrong (co)domain", [a, b])
                if C.is_identity(a) and C.is_identity(b) and act.key != identity_functor(act.dom).key:
                    raise FunctorLawError("identity pair acts nontrivially", [a, b])
        comp = C.composition_table()
        # contravariant in the first slot: T(a∘a2, b2∘b) = T(a2, b2)∘T(a, b)
        for a2, a, aa in comp:
            for b2, b, bb in comp:
                first, second = self.action[(a, b)], self.action[(a2, b2)]
                whole = self.action[(aa, bb)]
                if self.kind == "set":
                    ok = all(second[first[t]] == whole[t] for t in first)
                else:
                    ok = compose_functors(second, first).key == whole.key
                if not ok:
                    raise FunctorLawError("action is not functorial", [a, a2, b, b2])


def hom_bifunctor(C: FinCat) -> Bifunctor:
    return Bifunctor(
        C,
        lambda x, y: C.hom(x, y),
        lambda a, b: {f: C.compose_many(b, f, a) for f in C.hom(C.tgt(a), C.src(b))},
        check=False,
    )


def hom_between(F: Functor, G: Functor) -> Bifunctor:
    """``T(x, y) = D(F x, G y)``."""
    D = F.cod
    return Bifunctor(
        F.dom,
        lambda x, y: D.hom(F.obj(x), G.obj(y)),
        lambda a, b: {
            h: D.compose_many(G.mor(b), h, F.mor(a))
            for h in D.hom(F.obj(F.dom.tgt(a)), G.obj(F.dom.src(b)))
        },
        check=False,
    )


def _tw_diagram(T: Bifunctor, tw: TwCat, *, co: bool):
    C = T.C
    Tw = tw.category
    if not co:
        index = Tw
        value = {f: T.value[(C.src(f), C.tgt(f))] for f in Tw.objects}
        action = {m: T.action[(m[2][0], m[2][1])] for m in Tw.morphisms}
    else:
        index = op(Tw)
        value = {f: T.value[(C.tgt(f), C.src(f))] for f in Tw.objects}
        action = {m: T.action[(m[2][1], m[2][0])] for m in Tw.morphisms}
    if T.kind == "set":
        return SetDiagram(index, value, action, check=False)
    return CatValuedDiagram(index, value, action, check=False)


def end_diagram(T: Bifunctor, tw: TwCat | None = None):
    """The diagram ``f: x → y ↦ T(x, y)`` over ``Tw(C)``."""
    return _tw_diagram(T, tw or twisted_arrow(T.C), co=False)


def coend_diagram(T: Bifunctor, tw: TwCat | None = None):
    """The diagram ``f: x → y ↦ T(y, x)`` over ``Tw(C)^op``."""
    return _tw_diagram(T, tw or twisted_arrow(T.C), co=True)


def end_of(T: Bifunctor):
    """The end of ``T`` with its projections (a list of compatible tuples, or a category)."""
    D = end_diagram(T)
    if T.kind == "set":
        return set_limit(D)
    return limit_cat(D)


def coend_of(T: Bifunctor):
    """For Set-valued ``T`` the coend classes and legs; for Cat-valued ``T`` the diagram.

    Cat-valued coends are never built by quotienting; pass the returned
    diagram to :func:`fincatlab.fincat.check_colimit_cocone` with a candidate
    apex.
    """
    D = coend_diagram(T)
    if T.kind == "set":
        return set_colimit(D)
    return D


# ---------------------------------------------------------- weighted limits
def _whisker_table(FC_src: FinCat, FC_tgt: FinCat, post: Functor, pre: Functor) -> Functor:
    """``H ↦ post∘H∘pre`` between built functor categories."""
    om, mm = {}, {}
    for H in FC_src.objects:
        om[H] = compose_functors(post, compose_functors(H, pre))
    for t in FC_src.morphisms:
        mm[t] = NatTrans._raw(om[t.src], om[t.tgt], tuple(post._mm[t._c[i]] for i in pre._om))
    return Functor(FC_src, FC_tgt, om, mm, check=False)


def fun_bifunctor(W: CatValuedDiagram, F: CatValuedDiagram) -> Bifunctor:
    """``T(x, y) = Fun(W(x), F(y))`` for covariant ``W`` and ``F`` on ``C``."""
    C = F.index
    cats = {(x, y): functor_category(W.value[x], F.value[y]) for x in C.objects for y in C.objects}
    return Bifunctor(
        C,
        lambda x, y: cats[(x, y)],
        lambda a, b: _whisker_table(cats[(C.tgt(a), C.src(b))], cats[(C.src(a), C.tgt(b))], F.action[b], W.action[a]),
        kind="cat",
        check=False,
    )


def weighted_limit(W: CatValuedDiagram, F: CatValuedDiagram):
    """``{W, F}``: the end of ``Fun(W(x), F(y))`` for covariant ``W``, ``F`` on one index."""
    return end_of(fun_bifunctor(W, F))


def product_bifunctor(W: CatValuedDiagram, F: CatValuedDiagram) -> Bifunctor:
    """``T(x, y) = W(x) × F(y)`` for ``W`` on ``C^op`` and ``F`` on ``C``."""
    from .fincat import product_functor

    C = F.index
    cats = {(x, y): product(W.value[x], F.value[y]) for x in C.objects for y in C.objects}
    return Bifunctor(
        C,
        lambda x, y: cats[(x, y)],
        lambda a, b: product_functor(
            W.action[a], F.action[b], dom=cats[(C.tgt(a), C.src(b))], cod=cats[(C.src(a), C.tgt(b))]
        ),
        kind="cat",
        check=False,
    )


def weighted_colimit_diagram(W: CatValuedDiagram, F: CatValuedDiagram) -> CatValuedDiagram:
    """The coend diagram of ``W(x) × F(y)`` over ``Tw(C)^op``; ``W`` lives on ``op(C)``."""
    return coend_diagram(product_bifunctor(W, F))


def under_weight(C: FinCat) -> CatValuedDiagram:
    """``c ↦ C_{c/}`` on ``op(C)``, acting by precomposition."""
    sl = {c: slice_under(C, c)[0] for c in C.objects}
    action = {}
    for b in C.morphisms:
        y, y2 = C.src(b), C.tgt(b)
        S, T = sl[y2], sl[y]
        action[b] = Functor(
            S, T,
            {g: C.compose(g, b) for g in S.objects},
            {m: (C.compose(m[0], b), C.compose(m[1], b), m[2]) for m in S.morphisms},
            check=False,
        )
    return CatValuedDiagram(op(C), sl, action, check=False)


def over_weight(C: FinCat) -> CatValuedDiagram:
    """``c ↦ C_{/c}`` on ``C``, acting by postcomposition."""
    sl = {c: slice_over(C, c)[0] for c in C.objects}
    action = {}
    for b in C.morphisms:
        S, T = sl[C.src(b)], sl[C.tgt(b)]
        action[b] = Functor(
            S, T,
            {g: C.compose(b, g) for g in S.objects},
            {m: (C.compose(b, m[0]), C.compose(b, m[1]), m[2]) for m in S.morphisms},
            check=False,
        )
    return CatValuedDiagram(C, sl, action, check=False)


def lax_colimit_diagram(F: CatValuedDiagram) -> CatValuedDiagram:
    """``f: x → y ↦ C_{y/} × F(x)`` over ``Tw(C)^op``."""
    return weighted_colimit_diagram(under_weight(F.index), F)


def oplax_colimit_diagram(F: CatValuedDiagram) -> CatValuedDiagram:
    """For ``F`` on ``op(C)``: the coend of ``C_{/x} × F(y)`` over ``Tw(C^op)^op``."""
    Cop = F.index
    C = op(Cop)
    ow = over_weight(C)
    return weighted_colimit_diagram(CatValuedDiagram(op(Cop), ow.value, ow.action, check=False), F)


def lax_limit(F: CatValuedDiagram):
    """For ``F`` on ``C``: ``lim_{Tw(C)} Fun(C_{/x}, F(y))``."""
    return weighted_limit(over_weight(F.index), F)


def oplax_limit(F: CatValuedDiagram):
    """For ``F`` on ``op(C)``: ``lim_{Tw(C^op)} Fun(C_{x/}, F(y))``."""
    Cop = F.index
    C = op(Cop)
    return weighted_limit(under_weight(C), F)


# ------------------------------------------------- natural transformations
def nat_direct(F: Functor, G: Functor) -> list[tuple]:
    """Component tuples of all natural transformations ``F ⇒ G`` (in object order)."""
    C, D = F.dom, F.cod
    comps = [D.hom(F.obj(x), G.obj(x)) for x in C.objects]
    out = []
    for choice in iproduct(*comps):
        t = dict(zip(C.objects, choice))
        if all(
            D.compose(t[C.tgt(m)], F.mor(m)) == D.compose(G.mor(m), t[C.src(m)]) for m in C.morphisms
        ):
            out.append(choice)
    return out


def nat_via_end(F: Functor, G: Functor) -> list[tuple]:
    """Elements of ``∫_x D(F x, G x)`` read off at the identities."""
    C = F.dom
    elems, proj = end_of(hom_between(F, G))
    tw_objs = C.morphisms
    where = {f: k for k, f in enumerate(tw_objs)}
    return [tuple(e[where[C.identity(x)]] for x in C.objects) for e in elems]


def nat_agreement(F: Functor, G: Functor) -> VerdictReport:
    direct = nat_direct(F, G)
    via_end = nat_via_end(F, G)
    ok = len(set(via_end)) == len(via_end) and set(via_end) == set(direct)
    witness = None
    if not ok:
        witness = {
            "only_direct": sorted(map(repr, set(direct) - set(via_end))),
            "only_end": sorted(map(repr, set(via_end) - set(direct))),
            "end_count": len(via_end),
        }
    return VerdictReport("nat-as-end", ok, witness=witness, details={"count": len(direct)})


def strict_nat_category(F: CatValuedDiagram, G: CatValuedDiagram) -> FinCat:
    """Strict natural transformations ``F ⇒ G`` and modifications, built directly."""
    I = F.index
    funs = {x: functor_category(F.value[x], G.value[x]) for x in I.objects}
    objs = []
    for choice in iproduct(*(funs[x].objects for x in I.objects)):
        t = dict(zip(I.objects, choice))
        if all(
            compose_functors(G.action[m], t[I.src(m)]).key == compose_functors(t[I.tgt(m)], F.action[m]).key
            for m in I.morphisms
        ):
            objs.append(choice)
    mors = []
    for s in objs:
        for t in objs:
            parts = [list(iter_nat_trans(a, b)) for a, b in zip(s, t)]
            for choice in iproduct(*parts):
                th = dict(zip(I.objects, choice))
                if all(
                    tuple(G.action[m]._mm[c] for c in th[I.src(m)]._c)
                    == tuple(th[I.tgt(m)]._c[i] for i in F.action[m]._om)
                    for m in I.morphisms
                ):
                    mors.append((choice, s, t))
    from .fincat.category import vertical

    return FinCat(
        objs,
        mors,
        {s: tuple(funs[x].identity(a) for x, a in zip(I.objects, s)) for s in objs},
        lambda b, a: tuple(vertical(v, u) for v, u in zip(b, a)),
        name="Nat",
        check=False,
    )


def nat_category_via_end(F: CatValuedDiagram, G: CatValuedDiagram) -> FinCat:
    """``∫_x Fun(F x, G x)`` as a category."""
    return weighted_limit(F, G)[0]


def nat_category_agreement(F: CatValuedDiagram, G: CatValuedDiagram) -> VerdictReport:
    """Compare the end with the direct category via restriction to identities."""
    I = F.index
    E = nat_category_via_end(F, G)
    N = strict_nat_category(F, G)
    where = {f: k for k, f in enumerate(I.morphisms)}
    at = [where[I.identity(x)] for x in I.objects]
    om = {e: tuple(e[k] for k in at) for e in E.objects}
    mm = {m: tuple(m[k] for k in at) for m in E.morphisms}
    try:
        R = Functor(E, N, om, mm)
    except (FunctorLawError, TypeMismatch) as exc:
        return VerdictReport("nat-category-as-end", False, witness={"error": str(exc)})
    from .fincat import is_isomorphism

    ok = is_isomorphism(R)
    return VerdictReport(
        "nat-category-as-end", ok,
        witness=None if ok else {"end": [E.n_objects, E.n_morphisms], "direct": [N.n_objects, N.n_morphisms]},
        details={"objects": N.n_objects, "morphisms": N.n_morphisms},
    )


def coend_oracle(T: Bifunctor) -> int:
    """Number of classes of ``⊔_c T(c, c)`` under ``T(f, 1)(t) ~ T(1, f)(t)``."""
    from .fincat import UnionFind

    C = T.C
    items = [(c, t) for c in C.objects for t in T.value[(c, c)]]
    uf = UnionFind(items)
    for f in C.morphisms:
        x, y = C.src(f), C.tgt(f)
        left = T.action[(f, C.identity(x))]
        right = T.action[(C.identity(y), f)]
        for t in T.value[(y, x)]:
            uf.union((x, left[t]), (y, right[t]))
    return len(uf.classes())


def interval_poset_iso(n: int):
    """An isomorphism from the interval poset of ``[n]`` to the opposite twisted arrow category."""
    from .fincat import ordinal

    return find_isomorphism(interval_poset(n), twisted_arrow(ordinal(n)).outer_to_inner())
