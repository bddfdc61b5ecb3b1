"""Cartesian morphisms, Grothendieck constructions, cleavages and straightening.

Conventions.  A functor ``F`` on ``op(C)`` is a :class:`CatValuedDiagram`
whose index is ``op(C)``; its action on a ``C``-morphism ``γ: c → c'`` is
the functor ``γ* = F(γ): F(c') → F(c)``.

* ``cart_groth(F)``: objects ``(c, x)``, morphisms ``(γ, ξ, x')`` with
  ``γ: c → c'`` and ``ξ: x → γ*(x')``.
* ``cocart_groth(F)`` for ``F`` on ``C``: morphisms ``(γ, x, ξ)`` with
  ``ξ: γ_!(x) → x'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..errors import CoherenceViolation, NotAFibration
from ..fincat import (
    CatValuedDiagram,
    FinCat,
    Functor,
    NatTrans,
    compose_functors,
    iter_functors,
    iter_nat_trans,
    op,
)
from ..fincat.category import identity_functor


@dataclass(eq=False)
class FibCat:
    """A functor ``proj: total → base`` with optional chosen Cartesian lifts."""

    total: FinCat
    base: FinCat
    proj: Functor
    cleavage: dict | None = field(default=None, repr=False)

    @cached_property
    def cartesian(self) -> frozenset:
        return frozenset(m for m in self.total.morphisms if is_cartesian_morphism(self.proj, m))

    @cached_property
    def cocartesian(self) -> frozenset:
        return frozenset(m for m in self.total.morphisms if is_cocartesian_morphism(self.proj, m))

    def over(self, x) -> tuple:
        """Objects of the total category lying over ``x``."""
        i = self.base._o(x)
        return tuple(e for e, j in zip(self.total.objects, self.proj._om) if j == i)


# ----------------------------------------------------------- Cartesian tests
def _is_cartesian(p: Functor, m: int) -> bool:
    E, C = p.dom, p.cod
    e1, e = E._src[m], E._tgt[m]
    gamma = p._mm[m]
    c1 = p._om[e1]
    for e2 in range(len(E.objects)):
        into_e = E._hom.get((e2, e), ())
        if not into_e:
            continue
        counts: dict = {}
        for h in E._hom.get((e2, e1), ()):
            key = (E._comp[(m, h)], p._mm[h])
            counts[key] = counts.get(key, 0) + 1
        for g in into_e:
            pg = p._mm[g]
            for d in C._hom.get((p._om[e2], c1), ()):
                if C._comp[(gamma, d)] == pg and counts.get((g, d), 0) != 1:
                    return False
    return True


def is_cartesian_morphism(p: Functor, m) -> bool:
    """Unique factorization: every ``g: e'' → e`` over ``γ∘δ`` factors uniquely as ``m∘h`` with ``p(h) = δ``."""
    return _is_cartesian(p, p.dom._m(m))


def is_cocartesian_morphism(p: Functor, m) -> bool:
    return is_cartesian_morphism(Functor._raw(op(p.dom), op(p.cod), p._om, p._mm), m)


def cartesian_lifts(p: Functor, e, gamma) -> list:
    """All Cartesian morphisms over ``gamma`` with target ``e``."""
    E, C = p.dom, p.cod
    ei, g = E._o(e), C._m(gamma)
    if C._tgt[g] != p._om[ei]:
        raise NotAFibration(f"{gamma!r} does not end at p({e!r})", {"object": e, "morphism": gamma})
    return [E.morphisms[m] for m in E._in[ei] if p._mm[m] == g and _is_cartesian(p, m)]


def fibration_witness(p: Functor):
    """The first ``(e, γ)`` with no Cartesian lift, or ``None``."""
    E, C = p.dom, p.cod
    for ei, e in enumerate(E.objects):
        c = p._om[ei]
        for g in C._in[c]:
            if not any(p._mm[m] == g and _is_cartesian(p, m) for m in E._in[ei]):
                return {"object": e, "morphism": C.morphisms[g]}
    return None


def is_groth_fibration(p) -> bool:
    if isinstance(p, FibCat):
        p = p.proj
    return fibration_witness(p) is None


def is_groth_opfibration(p) -> bool:
    if isinstance(p, FibCat):
        p = p.proj
    return fibration_witness(Functor._raw(op(p.dom), op(p.cod), p._om, p._mm)) is None


def is_discrete_fibration(p: Functor) -> bool:
    """Every ``(e, γ into p(e))`` has exactly one lift ending at ``e``."""
    E, C = p.dom, p.cod
    for ei in range(len(E.objects)):
        counts: dict = {}
        for m in E._in[ei]:
            counts[p._mm[m]] = counts.get(p._mm[m], 0) + 1
        for g in C._in[p._om[ei]]:
            if counts.get(g, 0) != 1:
                return False
    return True


# ------------------------------------------------------------- constructions
def cart_groth(F: CatValuedDiagram) -> FibCat:
    """The Grothendieck construction of ``F`` on ``op(C)``, a Cartesian fibration over ``C``."""
    C = op(F.index)
    val, act = F.value, F.action
    objs = [(c, x) for c in C.objects for x in val[c].objects]
    mors = []
    for g in C.morphisms:
        c, c2 = C.src(g), C.tgt(g)
        G = act[g]
        for x2 in val[c2].objects:
            y = G.obj(x2)
            for xi in val[c].into(y):
                mors.append(((g, xi, x2), (c, val[c].src(xi)), (c2, x2)))

    def comp(v, u):
        g2, xi2, x3 = v
        g, xi, _ = u
        c = C.src(g)
        return (C.compose(g2, g), val[c].compose(act[g].mor(xi2), xi), x3)

    E = FinCat(
        objs,
        mors,
        {(c, x): (C.identity(c), val[c].identity(x), x) for c, x in objs},
        comp,
        name="∫F",
        check=False,
    )
    P = Functor(E, C, {o: o[0] for o in objs}, {m: m[0] for m, _, _ in mors}, check=False)
    cleave = {}
    for c2, x2 in objs:
        for g in C.into(c2):
            c = C.src(g)
            cleave[((c2, x2), g)] = (g, val[c].identity(act[g].obj(x2)), x2)
    return FibCat(E, C, P, cleave)


def cocart_groth(F: CatValuedDiagram) -> FibCat:
    """The Grothendieck construction of ``F`` on ``C``, a coCartesian fibration over ``C``."""
    C = F.index
    val, act = F.value, F.action
    objs = [(c, x) for c in C.objects for x in val[c].objects]
    mors = []
    for g in C.morphisms:
        c, c2 = C.src(g), C.tgt(g)
        G = act[g]
        for x in val[c].objects:
            y = G.obj(x)
            for xi in val[c2].out_of(y):
                mors.append(((g, x, xi), (c, x), (c2, val[c2].tgt(xi))))

    def comp(v, u):
        g2, _, xi2 = v
        g, x, xi = u
        c3 = C.tgt(g2)
        return (C.compose(g2, g), x, val[c3].compose(xi2, act[g2].mor(xi)))

    E = FinCat(
        objs,
        mors,
        {(c, x): (C.identity(c), x, val[c].identity(x)) for c, x in objs},
        comp,
        name="∫F",
        check=False,
    )
    P = Functor(E, C, {o: o[0] for o in objs}, {m: m[0] for m, _, _ in mors}, check=False)
    return FibCat(E, C, P)


def as_fibration(p: Functor) -> FibCat:
    return FibCat(p.dom, p.cod, p)


def fiber(p, c) -> tuple[FinCat, Functor]:
    """The fiber over ``c`` (vertical morphisms only) and its inclusion."""
    if isinstance(p, FibCat):
        p = p.proj
    E, C = p.dom, p.cod
    ci = C._o(c)
    idc = C._id[ci]
    objs = [E.objects[i] for i in range(len(E.objects)) if p._om[i] == ci]
    mors = [(E.morphisms[m], E.objects[E._src[m]], E.objects[E._tgt[m]])
            for m in range(len(E.morphisms)) if p._mm[m] == idc]
    Fc = FinCat(objs, mors, {e: E.identity(e) for e in objs}, E.compose, name=f"fiber {c!r}", check=False)
    inc = Functor._raw(Fc, E, tuple(E._oidx[e] for e in objs), tuple(E._midx[m] for m, _, _ in mors))
    return Fc, inc


# ------------------------------------------------------------------ cleavage
@dataclass(eq=False)
class Cleavage:
    fibration: FibCat
    lift: dict
    normal: bool

    def validate(self) -> None:
        p = self.fibration.proj
        E, C = p.dom, p.cod
        for (e, g), m in self.lift.items():
            if E.tgt(m) != e or p.mor(m) != g or not is_cartesian_morphism(p, m):
                raise NotAFibration(f"chosen lift of {g!r} at {e!r} is not a Cartesian lift", {"object": e, "morphism": g})
            if self.normal and C.is_identity(g) and m != E.identity(e):
                raise NotAFibration(f"identity lift at {e!r} is not an identity", {"object": e})


def canonical_cleavage(q: FibCat) -> Cleavage:
    """The built-in cleavage of a Grothendieck construction, else the least lift by ``repr``.

    Lifts of identities are identities either way.
    """
    p = q.proj
    E, C = p.dom, p.cod
    w = fibration_witness(p)
    if w is not None:
        raise NotAFibration("no Cartesian lift", w)
    lift = {}
    for e in E.objects:
        for g in C.into(p.obj(e)):
            if C.is_identity(g):
                lift[(e, g)] = E.identity(e)
            elif q.cleavage is not None and (e, g) in q.cleavage:
                lift[(e, g)] = q.cleavage[(e, g)]
            else:
                lift[(e, g)] = min(cartesian_lifts(p, e, g), key=repr)
    return Cleavage(q, lift, True)


def vertical_factor(p: Functor, lift, target_morphism):
    """The unique vertical ``u`` with ``lift∘u = target_morphism``."""
    E, C = p.dom, p.cod
    li, ti = E._m(lift), E._m(target_morphism)
    for u in E._hom.get((E._src[ti], E._src[li]), ()):
        if C._id[p._om[E._src[ti]]] == p._mm[u] and E._comp[(li, u)] == ti:
            return E.morphisms[u]
    raise NotAFibration("no vertical factorization through the chosen lift", {"lift": lift, "morphism": target_morphism})


# ------------------------------------------------------- pseudofunctors to Cat
@dataclass(eq=False)
class PseudofunctorToCat:
    """A normal pseudofunctor ``op(C) → Cat``.

    ``action[γ]`` for ``γ: c → c'`` is ``γ*: value[c'] → value[c]`` and
    ``eta[(f, g)]`` for ``c --f--> c' --g--> c''`` is ``(g∘f)* ⇒ f*∘g*``.
    """

    base: FinCat
    value: dict
    action: dict
    eta: dict

    def validate(self) -> None:
        C = self.base
        for g in C.morphisms:
            A = self.action[g]
            if not (A.dom == self.value[C.tgt(g)] and A.cod == self.value[C.src(g)]):
                raise CoherenceViolation("i", f"{g!r} acts between the wrong fibers", {"morphism": g})
        for x in C.objects:
            A = self.action[C.identity(x)]
            if A.key != identity_functor(A.dom).key:
                raise CoherenceViolation("ii", f"identity of {x!r} does not act as the identity", {"object": x})
        for g2, f, h in C.composition_table():
            eta = self.eta[(f, g2)]
            target = compose_functors(self.action[f], self.action[g2])
            if eta.src.key != self.action[h].key or eta.tgt.key != target.key:
                raise CoherenceViolation("iii", "η has the wrong source or target", {"pair": [f, g2]})
            if eta.law_violation() is not None:
                raise CoherenceViolation("v", "η is not natural", {"pair": [f, g2]})
            if not eta.is_invertible():
                raise CoherenceViolation("iii", "η is not invertible", {"pair": [f, g2]})
            if C.is_identity(f) or C.is_identity(g2):
                if any(not eta.src.cod.is_identity(m) for m in eta.components.values()):
                    raise CoherenceViolation("iv", "η at an identity is not the identity", {"pair": [f, g2]})
        for f in C.morphisms:
            for g2 in C.out_of(C.tgt(f)):
                gf = C.compose(g2, f)
                for h in C.out_of(C.tgt(g2)):
                    hg = C.compose(h, g2)
                    hgf = C.compose(h, gf)
                    V = self.value[C.src(f)]
                    fstar = self.action[f]
                    for e in self.value[C.tgt(h)].objects:
                        he = self.action[h].obj(e)
                        left = V.compose(fstar.mor(self.eta[(g2, h)].component(e)), self.eta[(f, hg)].component(e))
                        right = V.compose(self.eta[(f, g2)].component(he), self.eta[(gf, h)].component(e))
                        if left != right:
                            raise CoherenceViolation("vi", "cocycle condition fails", {"triple": [f, g2, h], "object": e})

    def is_strict(self) -> bool:
        return all(all(a.src.cod.is_identity(m) for m in a.components.values()) for a in self.eta.values())


def straighten(q: FibCat, cleavage: Cleavage | None = None) -> PseudofunctorToCat:
    """Fibers, pullback functors from chosen lifts and the comparison cells between them."""
    p = q.proj
    E, C = p.dom, p.cod
    w = fibration_witness(p)
    if w is not None:
        raise NotAFibration("not a Grothendieck fibration", w)
    cl = cleavage or canonical_cleavage(q)
    if not cl.normal:
        raise NotAFibration("cleavage must be normal")
    fibers = {c: fiber(p, c)[0] for c in C.objects}
    action = {}
    for g in C.morphisms:
        c, c2 = C.src(g), C.tgt(g)
        S, T = fibers[c2], fibers[c]
        om = {e: E.src(cl.lift[(e, g)]) for e in S.objects}
        mm = {}
        for v in S.morphisms:
            e1, e2 = S.src(v), S.tgt(v)
            mm[v] = vertical_factor(p, cl.lift[(e2, g)], E.compose(v, cl.lift[(e1, g)]))
        action[g] = Functor(S, T, om, mm, check=False)
    eta = {}
    for g2, f, h in C.composition_table():
        S = fibers[C.tgt(g2)]
        T = fibers[C.src(f)]
        comps = {}
        for e in S.objects:
            mid = action[g2].obj(e)
            through = E.compose(cl.lift[(e, g2)], cl.lift[(mid, f)])
            comps[e] = vertical_factor(p, through, cl.lift[(e, h)])
        eta[(f, g2)] = NatTrans(action[h], compose_functors(action[f], action[g2]), comps, check=False)
    Ps = PseudofunctorToCat(C, fibers, action, eta)
    Ps.validate()
    return Ps


def pseudo_groth(Ps: PseudofunctorToCat) -> FibCat:
    """The Grothendieck construction of a normal pseudofunctor; composites use ``η^{-1}``."""
    C, val, act = Ps.base, Ps.value, Ps.action
    objs = [(c, x) for c in C.objects for x in val[c].objects]
    mors = []
    for g in C.morphisms:
        c, c2 = C.src(g), C.tgt(g)
        for x2 in val[c2].objects:
            for xi in val[c].into(act[g].obj(x2)):
                mors.append(((g, xi, x2), (c, val[c].src(xi)), (c2, x2)))

    def comp(v, u):
        g2, xi2, x3 = v
        g, xi, _ = u
        V = val[C.src(g)]
        back = V.inverse(Ps.eta[(g, g2)].component(x3))
        return (C.compose(g2, g), V.compose_many(back, act[g].mor(xi2), xi), x3)

    E = FinCat(objs, mors, {(c, x): (C.identity(c), val[c].identity(x), x) for c, x in objs}, comp,
               name="∫Ps", check=True)
    P = Functor(E, C, {o: o[0] for o in objs}, {m: m[0] for m, _, _ in mors}, check=False)
    return FibCat(E, C, P)


def regroup(q: FibCat, Ps: PseudofunctorToCat, cl: Cleavage) -> Functor:
    """The comparison ``total → ∫Ps``: ``m`` over ``γ`` goes to ``(γ, u, tgt m)`` with ``m = lift∘u``."""
    p = q.proj
    E = p.dom
    G = pseudo_groth(Ps)
    om = {e: (p.obj(e), e) for e in E.objects}
    mm = {}
    for m in E.morphisms:
        g, e2 = p.mor(m), E.tgt(m)
        mm[m] = (g, vertical_factor(p, cl.lift[(e2, g)], m), e2)
    return Functor(E, G.total, om, mm, check=True)


# ------------------------------------------------------------ over the base
def functors_over(k: Functor, q: Functor, *, cartesian_only: FibCat | None = None, cartesian_in=None):
    """Functors ``G: dom(k) → dom(q)`` with ``q∘G = k``.

    With ``cartesian_in`` (a set of morphisms of ``dom(k)``) and
    ``cartesian_only`` (the target fibration), ``G`` must send those
    morphisms to Cartesian ones.
    """
    K, E = k.dom, q.dom
    carts = cartesian_only.cartesian if cartesian_only is not None else None

    def obj_ok(x, d):
        return q.obj(d) == k.obj(x)

    def mor_ok(m, n):
        if q.mor(n) != k.mor(m):
            return False
        if carts is not None and m in cartesian_in and n not in carts:
            return False
        return True

    return iter_functors(K, E, obj_filter=obj_ok, mor_filter=mor_ok)


def category_over(objs: list, q: Functor, *, name: str | None = None) -> FinCat:
    """Functors over the base (given) and vertical natural transformations between them."""
    C = q.cod
    mors = []
    for G in objs:
        for G2 in objs:
            for t in iter_nat_trans(G, G2):
                if all(C._id[q._om[G._om[i]]] == q._mm[c] for i, c in enumerate(t._c)):
                    mors.append((t, G, G2))
    from ..fincat.category import vertical

    ids = {G: NatTrans._raw(G, G, tuple(G.cod._id[i] for i in G._om)) for G in objs}
    return FinCat(objs, mors, ids, vertical, name=name, check=False)


def sections(q: FibCat) -> FinCat:
    """Sections of ``q`` with vertical natural transformations."""
    C = q.base
    idC = identity_functor(C)
    return category_over(list(functors_over(idC, q.proj)), q.proj, name="Γ")


def fibers_gaunt(q: FibCat) -> bool:
    """Whether every fiber has only identity isomorphisms (so Cartesian lifts are unique)."""
    p = q.proj
    E, C = p.dom, p.cod
    for m in range(len(E.morphisms)):
        if p._mm[m] == C._id[p._om[E._src[m]]] and E._id[E._src[m]] != m:
            if E.inverse(E.morphisms[m]) is not None:
                return False
    return True
