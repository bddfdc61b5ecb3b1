"""Fibrations as weighted (co)limits, sections, the Φ-fibration and exponentials."""
from __future__ import annotations

from ..errors import NotACocone, NotAFibration, WorkbenchError
from ..fincat import (
    CatValuedDiagram,
    FinCat,
    Functor,
    check_colimit_cocone,
    compose_functors,
    find_isomorphism,
    functor_category,
    is_isomorphism,
    iter_functors,
    op,
    precompose,
    postcompose,
    pullback,
    slice_under,
)
from ..fincat.category import NatTrans
from ..twisted import lax_colimit_diagram, oplax_colimit_diagram, oplax_limit, twisted_arrow
from ..verdict import VerdictReport
from .grothendieck import (
    FibCat,
    cart_groth,
    category_over,
    cocart_groth,
    fiber,
    fibration_witness,
    functors_over,
    sections,
)


# ----------------------------------------------------- sections, oplax limit
def sections_vs_oplax_limit(F: CatValuedDiagram) -> VerdictReport:
    """Sections of ``cart_groth(F)`` against the oplax limit, through an explicit functor.

    A section ``s`` goes to the family whose component at ``f: y → x`` sends
    ``γ: x → z`` to ``F(γ∘f)(s_z)``.
    """
    C = op(F.index)
    q = cart_groth(F)
    S = sections(q)
    L, _ = oplax_limit(F)
    slices = {x: slice_under(C, x)[0] for x in C.objects}
    act = F.action
    obj_index = {tuple(G.key for G in o): o for o in L.objects}
    mor_index = {tuple((t.src.key, t.tgt.key, t._c) for t in m): m for m in L.morphisms}

    def point(s, z):
        return s.obj(z)[1]

    def family(s):
        out = []
        for f in C.morphisms:
            y, x = C.src(f), C.tgt(f)
            Sx, Fy = slices[x], F.value[y]
            om = {g: act[C.compose(g, f)].obj(point(s, C.tgt(g))) for g in Sx.objects}
            mm = {}
            for m in Sx.morphisms:
                g, h = m[0], m[2]
                xi = s.mor(h)[1]
                mm[m] = act[C.compose(g, f)].mor(xi)
            out.append(Functor(Sx, Fy, om, mm, check=False))
        return out

    fams = {s: family(s) for s in S.objects}
    om, mm = {}, {}
    try:
        for s in S.objects:
            om[s] = obj_index[tuple(G.key for G in fams[s])]
        for t in S.morphisms:
            comps = []
            for f, Gs, Gt in zip(C.morphisms, fams[t.src], fams[t.tgt]):
                x = C.tgt(f)
                Sx, Fy = slices[x], F.value[C.src(f)]
                c = {}
                for g in Sx.objects:
                    xi = t.component(C.tgt(g))[1]
                    c[g] = act[C.compose(g, f)].mor(xi)
                comps.append(NatTrans(Gs, Gt, c, check=False))
            mm[t] = mor_index[tuple((a.src.key, a.tgt.key, a._c) for a in comps)]
        phi = Functor(S, L, om, mm)
    except (KeyError, WorkbenchError) as exc:
        return VerdictReport("sections-oplax-limit", False, witness={"error": repr(exc)},
                             details={"sections": [S.n_objects, S.n_morphisms], "limit": [L.n_objects, L.n_morphisms]})
    ok = is_isomorphism(phi)
    return VerdictReport(
        "sections-oplax-limit", ok,
        witness=None if ok else {"sections": [S.n_objects, S.n_morphisms], "limit": [L.n_objects, L.n_morphisms]},
        details={"objects": S.n_objects, "morphisms": S.n_morphisms},
    )


# ---------------------------------------------------------- lax colimits
def lax_colimit_cocone(F: CatValuedDiagram):
    """The diagram ``C_{y/} × F(x)`` over ``Tw(C)^op`` with legs into ``cocart_groth(F)``.

    ``(γ: y → z, a) ↦ (z, F(γ∘f)(a))`` at ``f: x → y``.
    """
    C = F.index
    H = lax_colimit_diagram(F)
    q = cocart_groth(F)
    T = q.total
    act = F.action
    legs = {}
    for f in C.morphisms:
        V = H.value[f]
        om = {(g, a): (C.tgt(g), act[C.compose(g, f)].obj(a)) for g, a in V.objects}
        mm = {}
        for m in V.morphisms:
            (g, g2, h), n = m
            gf, g2f = C.compose(g, f), C.compose(g2, f)
            mm[m] = (h, act[gf].obj(F.value[C.src(f)].src(n)), act[g2f].mor(n))
        legs[f] = Functor(V, T, om, mm, check=False)
    return H, q, legs


def oplax_colimit_cocone(F: CatValuedDiagram):
    """For ``F`` on ``op(C)``: ``C_{/v} × F(u)`` at ``f: v → u`` with legs into ``cart_groth(F)``.

    ``(γ: z → v, b) ↦ (z, F(f∘γ)(b))``.
    """
    C = op(F.index)
    H = oplax_colimit_diagram(F)
    q = cart_groth(F)
    T = q.total
    act = F.action
    legs = {}
    for f in C.morphisms:
        V = H.value[f]
        om = {(g, b): (C.src(g), act[C.compose(f, g)].obj(b)) for g, b in V.objects}
        mm = {}
        for m in V.morphisms:
            (g, g2, h), n = m
            fg2 = C.compose(f, g2)
            x2 = act[fg2].obj(F.value[C.tgt(f)].tgt(n))
            mm[m] = (h, act[C.compose(f, g)].mor(n), x2)
        legs[f] = Functor(V, T, om, mm, check=False)
    return H, q, legs


def _generates(T: FinCat, gens: set) -> bool:
    closure = set(gens) | set(T.identity(x) for x in T.objects)
    frontier = list(closure)
    while frontier:
        new = []
        for f in frontier:
            for g in list(closure):
                for a, b in ((g, f), (f, g)):
                    if T.tgt(b) == T.src(a):
                        c = T.compose(a, b)
                        if c not in closure:
                            closure.add(c)
                            new.append(c)
        frontier = new
    return len(closure) == T.n_morphisms


def _colimit_verdict(suite, H, q, legs, probes, morphisms) -> VerdictReport:
    T = q.total
    try:
        check = check_colimit_cocone(H, T, legs, probes, morphisms=morphisms)
    except NotACocone as exc:
        return VerdictReport(suite, False, witness={"cocone": str(exc), **(exc.witness or {})})
    hit_objects = set()
    hit_mors = set()
    for L in legs.values():
        hit_objects.update(T.objects[i] for i in L._om)
        hit_mors.update(T.morphisms[i] for i in L._mm)
    surj_obj = len(hit_objects) == T.n_objects
    gen = _generates(T, hit_mors)
    ok = check.passed and surj_obj and gen
    witness = check.witness
    if not surj_obj:
        witness = {"missed_objects": [o for o in T.objects if o not in hit_objects][:3]}
    elif not gen:
        witness = {"kind": "leg images do not generate the morphisms"}
    return VerdictReport(
        suite, ok, witness=None if ok else witness,
        details={"apex": [T.n_objects, T.n_morphisms], "probes": check.details.get("probes"),
                 "apex_probe": check.details.get("apex_probe")},
    )


def lax_colimit_check(F: CatValuedDiagram, probes=None, *, morphisms="auto") -> VerdictReport:
    """``cocart_groth(F)`` is the lax colimit of ``F``: cocone, joint surjectivity, probes.

    Surjectivity on morphisms means the leg images generate all morphisms.
    """
    H, q, legs = lax_colimit_cocone(F)
    return _colimit_verdict("lax-colimit", H, q, legs, probes, morphisms)


def oplax_colimit_check(F: CatValuedDiagram, probes=None, *, morphisms="auto") -> VerdictReport:
    """``cart_groth(F)`` is the oplax colimit of ``F`` on ``op(C)``."""
    H, q, legs = oplax_colimit_cocone(F)
    return _colimit_verdict("oplax-colimit", H, q, legs, probes, morphisms)


# ------------------------------------------------------------- Φ-fibration
def phi_fibration(F: CatValuedDiagram, X: FinCat) -> FibCat:
    """``cart_groth`` of ``c ↦ Fun(F(c), X)`` with precomposition."""
    C = F.index
    funs = {c: functor_category(F.value[c], X) for c in C.objects}
    action = {g: precompose(funs[C.tgt(g)], funs[C.src(g)], F.action[g]) for g in C.morphisms}
    return cart_groth(CatValuedDiagram(op(C), funs, action, check=False))


def phi_universal_check(F: CatValuedDiagram, X: FinCat, k: Functor) -> VerdictReport:
    """``Hom(K ×_C ∫F, X) ≅ Hom_C(K, Φ)`` via ``(κ, (γ, a, ξ)) ↦ G_{k'}(ξ)∘θ_a``."""
    C = F.index
    Phi = phi_fibration(F, X)
    q = cocart_groth(F)
    P, pr1, pr2 = pullback(k, q.proj)
    K = k.dom
    right = list(functors_over(k, Phi.proj))
    left = {G.key for G in iter_functors(P, X)}
    image = set()
    for G in right:
        om, mm = {}, {}
        for (a, (c, x)) in P.objects:
            om[(a, (c, x))] = G.obj(a)[1].obj(x)
        for (kappa, (g, x, xi)) in P.morphisms:
            _, theta, _ = G.mor(kappa)
            Gk2 = G.obj(K.tgt(kappa))[1]
            mm[(kappa, (g, x, xi))] = X.compose(Gk2.mor(xi), theta.component(x))
        try:
            H = Functor(P, X, om, mm)
        except WorkbenchError as exc:
            return VerdictReport("phi-fibration", False, witness={"not_a_functor": str(exc)})
        if H.key in image:
            return VerdictReport("phi-fibration", False, witness={"kind": "not injective"})
        image.add(H.key)
    ok = image == left
    return VerdictReport(
        "phi-fibration", ok,
        witness=None if ok else {"left": len(left), "right": len(right), "image": len(image)},
        details={"count": len(left)},
    )


# -------------------------------------------------------------- exponentials
def exponentiate(q: FibCat, D: FinCat) -> FibCat:
    """Postcomposition ``Fun(D, total) → Fun(D, C)``; must be a Grothendieck fibration."""
    FE = functor_category(D, q.total)
    FC = functor_category(D, q.base)
    post = postcompose(FE, FC, q.proj)
    w = fibration_witness(post)
    if w is not None:
        raise NotAFibration("exponential is not a fibration", {"object": repr(w["object"]), "morphism": repr(w["morphism"])})
    return FibCat(FE, FC, post)


def fiber_formula_check(F: CatValuedDiagram, D: FinCat, phi: Functor, exp: FibCat | None = None) -> VerdictReport:
    """The fiber of the exponential over ``φ`` against the oplax limit of ``F∘φ``."""
    q = cart_groth(F)
    exp = exp or exponentiate(q, D)
    target = next(o for o in exp.base.objects if o.key == phi.key)
    Fib, _ = fiber(exp, target)
    Fphi = CatValuedDiagram(
        op(D),
        {d: F.value[phi.obj(d)] for d in D.objects},
        {m: F.action[phi.mor(m)] for m in D.morphisms},
        check=False,
    )
    L, _ = oplax_limit(Fphi)
    iso = find_isomorphism(Fib, L)
    ok = iso is not None
    return VerdictReport(
        "exponential-fiber", ok,
        witness=None if ok else {"fiber": [Fib.n_objects, Fib.n_morphisms], "limit": [L.n_objects, L.n_morphisms]},
        details={"objects": Fib.n_objects, "morphisms": Fib.n_morphisms},
    )
