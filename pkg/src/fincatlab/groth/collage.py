"""Collages ``E^◁_B``/``E^▷_B`` and criteria for composites of fibrations."""
from __future__ import annotations

from itertools import product as iproduct

from ..errors import WorkbenchError
from ..fincat import (
    CatValuedDiagram,
    FinCat,
    Functor,
    NatTrans,
    SetDiagram,
    check_colimit_cocone,
    compose_functors,
    functor_category,
    identity_functor,
    is_isomorphism,
    iter_functors,
    iter_nat_trans,
    op,
    ordinal,
    poset_category,
    product,
)
from ..fincat.constructions import precompose
from ..verdict import VerdictReport
from .grothendieck import (
    FibCat,
    fiber,
    fibration_witness,
    is_cartesian_morphism,
    is_discrete_fibration,
    is_groth_fibration,
)


def collage_left(p: Functor) -> tuple[FinCat, Functor, Functor]:
    """``E^◁_B``: ``B ⊔ E`` with ``Hom(b, e) = B(b, p(e))`` and nothing from ``E`` to ``B``.

    Returns the collage and the inclusions of ``B`` and ``E``.
    Objects are tagged ``("B", b)``/``("E", e)``; a mixed morphism is
    ``("BE", φ, e)``.
    """
    E, B = p.dom, p.cod
    objs = [("B", b) for b in B.objects] + [("E", e) for e in E.objects]
    mors = [(("B", m), ("B", B.src(m)), ("B", B.tgt(m))) for m in B.morphisms]
    mors += [(("E", a), ("E", E.src(a)), ("E", E.tgt(a))) for a in E.morphisms]
    for e in E.objects:
        for phi in B.into(p.obj(e)):
            mors.append((("BE", phi, e), ("B", B.src(phi)), ("E", e)))

    def comp(g, f):
        if g[0] == "B":
            return ("B", B.compose(g[1], f[1]))
        if g[0] == "E" and f[0] == "E":
            return ("E", E.compose(g[1], f[1]))
        if g[0] == "E":
            return ("BE", B.compose(p.mor(g[1]), f[1]), E.tgt(g[1]))
        return ("BE", B.compose(g[1], f[1]), g[2])

    ids = {("B", b): ("B", B.identity(b)) for b in B.objects}
    ids.update({("E", e): ("E", E.identity(e)) for e in E.objects})
    Col = FinCat(objs, mors, ids, comp, name="E◁", check=False)
    iB = Functor(B, Col, {b: ("B", b) for b in B.objects}, {m: ("B", m) for m in B.morphisms}, check=False)
    iE = Functor(E, Col, {e: ("E", e) for e in E.objects}, {a: ("E", a) for a in E.morphisms}, check=False)
    return Col, iB, iE


def collage_right(p: Functor) -> tuple[FinCat, Functor, Functor]:
    """``E^▷_B``: ``Hom(e, b) = B(p(e), b)``; mixed morphisms are ``("EB", e, φ)``."""
    E, B = p.dom, p.cod
    objs = [("B", b) for b in B.objects] + [("E", e) for e in E.objects]
    mors = [(("B", m), ("B", B.src(m)), ("B", B.tgt(m))) for m in B.morphisms]
    mors += [(("E", a), ("E", E.src(a)), ("E", E.tgt(a))) for a in E.morphisms]
    for e in E.objects:
        for phi in B.out_of(p.obj(e)):
            mors.append((("EB", e, phi), ("E", e), ("B", B.tgt(phi))))

    def comp(g, f):
        if f[0] == "E" and g[0] == "E":
            return ("E", E.compose(g[1], f[1]))
        if f[0] == "B":
            return ("B", B.compose(g[1], f[1]))
        if f[0] == "E":
            return ("EB", E.src(f[1]), B.compose(g[2], p.mor(f[1])))
        return ("EB", f[1], B.compose(g[1], f[2]))

    ids = {("B", b): ("B", B.identity(b)) for b in B.objects}
    ids.update({("E", e): ("E", E.identity(e)) for e in E.objects})
    Col = FinCat(objs, mors, ids, comp, name="E▷", check=False)
    iB = Functor(B, Col, {b: ("B", b) for b in B.objects}, {m: ("B", m) for m in B.morphisms}, check=False)
    iE = Functor(E, Col, {e: ("E", e) for e in E.objects}, {a: ("E", a) for a in E.morphisms}, check=False)
    return Col, iB, iE


def _span() -> FinCat:
    return poset_category(["s", "l", "r"], lambda a, b: a == b or a == "s", name="span")


def collage_pushout_check(p: Functor, probes=None, *, right: bool = False) -> VerdictReport:
    """The collage is ``B ⊔_{E×{k}} E × [1]`` (``k = 0`` on the left, ``1`` on the right)."""
    E, B = p.dom, p.cod
    Col, iB, iE = (collage_right if right else collage_left)(p)
    I1 = ordinal(1)
    EI = product(E, I1)
    k = 1 if right else 0
    at_k = Functor(E, EI, {e: (e, k) for e in E.objects}, {a: (a, (k, k)) for a in E.morphisms}, check=False)
    S = _span()
    D = CatValuedDiagram(
        S,
        {"s": E, "l": B, "r": EI},
        {("s", "s"): identity_functor(E), ("l", "l"): identity_functor(B), ("r", "r"): identity_functor(EI),
         ("s", "l"): p, ("s", "r"): at_k},
    )
    om, mm = {}, {}
    for e, i in EI.objects:
        om[(e, i)] = ("B", p.obj(e)) if i == k else ("E", e)
    for a, (i, j) in EI.morphisms:
        if i == j == k:
            mm[(a, (i, j))] = ("B", p.mor(a))
        elif i == j:
            mm[(a, (i, j))] = ("E", a)
        elif right:
            mm[(a, (i, j))] = ("EB", E.src(a), p.mor(a))
        else:
            mm[(a, (i, j))] = ("BE", p.mor(a), E.tgt(a))
    leg_r = Functor(EI, Col, om, mm)
    legs = {"s": compose_functors(iB, p), "l": iB, "r": leg_r}
    r = check_colimit_cocone(D, Col, legs, probes)
    r.suite = "collage-pushout"
    return r


def undercategory(FC: FinCat, F: Functor) -> FinCat:
    """``Fun(E, D)_{F/}``: pairs ``(G, θ: F ⇒ G)``; morphisms ``ν`` with ``ν•θ = θ'``."""
    from ..fincat.category import vertical

    objs = [(G, t) for G in FC.objects for t in iter_nat_trans(F, G)]
    mors = []
    for G, t in objs:
        for G2, t2 in objs:
            for nu in FC.hom(G, G2):
                if vertical(nu, t)._c == t2._c:
                    mors.append(((nu, (G, t), (G2, t2)), (G, t), (G2, t2)))
    return FinCat(
        objs, mors,
        {o: (FC.identity(o[0]), o, o) for o in objs},
        lambda b, a: (vertical(b[0], a[0]), a[1], b[2]),
        name="under",
        check=False,
    )


def undercat_fiber_check(p: Functor, D: FinCat, F: Functor) -> VerdictReport:
    """Restriction ``Fun(E^◁_B, D) → Fun(B, D)`` is a fibration with fiber ``Fun(E, D)_{F∘p/}`` over ``F``."""
    E, B = p.dom, p.cod
    Col, iB, iE = collage_left(p)
    FunCol = functor_category(Col, D)
    FunB = functor_category(B, D)
    res = precompose(FunCol, FunB, iB)
    w = fibration_witness(res)
    if w is not None:
        return VerdictReport("collage-undercategory", False, witness={"not_a_fibration": repr(w)})
    target = next(o for o in FunB.objects if o.key == F.key)
    Fib, _ = fiber(res, target)
    FunE = functor_category(E, D)
    Fp = compose_functors(F, p)
    U = undercategory(FunE, Fp)
    U_obj = {(G.key, t._c): o for o in U.objects for G, t in [o]}
    om, mm = {}, {}
    try:
        for H in Fib.objects:
            G = compose_functors(H, iE)
            comps = tuple(H._mm[Col._midx[("BE", B.identity(p.obj(e)), e)]] for e in E.objects)
            om[H] = U_obj[(G.key, comps)]
        for mu in Fib.morphisms:
            src, tgt = om[mu.src], om[mu.tgt]
            nu = NatTrans._raw(src[0], tgt[0], tuple(mu._c[i] for i in iE._om))
            mm[mu] = (next(n for n in FunE.hom(src[0], tgt[0]) if n._c == nu._c), src, tgt)
        phi = Functor(Fib, U, om, mm)
    except (KeyError, StopIteration, WorkbenchError) as exc:
        return VerdictReport("collage-undercategory", False, witness={"error": repr(exc)})
    ok = is_isomorphism(phi)
    return VerdictReport(
        "collage-undercategory", ok,
        witness=None if ok else {"fiber": [Fib.n_objects, Fib.n_morphisms], "under": [U.n_objects, U.n_morphisms]},
        details={"objects": Fib.n_objects, "morphisms": Fib.n_morphisms},
    )


# ---------------------------------------------------------- two out of three
def fiber_functor(f: Functor, p: Functor, q: Functor, c) -> Functor:
    """``f_c: E_c → D_c``."""
    Ec, _ = fiber(p, c)
    Dc, _ = fiber(q, c)
    return Functor(Ec, Dc, {e: f.obj(e) for e in Ec.objects}, {m: f.mor(m) for m in Ec.morphisms}, check=False)


def two_of_three_cart(f: Functor, p: Functor, q: Functor) -> VerdictReport:
    """Hypotheses (1)–(4) for ``p = q∘f`` and, when all hold, whether ``f`` is a fibration."""
    if compose_functors(q, f).key != p.key:
        raise WorkbenchError("triangle does not commute")
    E, C = p.dom, p.cod
    h1 = is_groth_fibration(p) and is_groth_fibration(q)
    pc = frozenset(m for m in E.morphisms if is_cartesian_morphism(p, m))
    h2 = h1 and all(is_cartesian_morphism(q, f.mor(m)) for m in pc)
    fcs = {c: fiber_functor(f, p, q, c) for c in C.objects}
    h3 = all(is_groth_fibration(fc) for fc in fcs.values())
    h4, bad = _hypothesis4(f, p, q, pc, fcs)
    table = {"1": h1, "2": h2, "3": h3, "4": h4}
    if all(table.values()):
        concl = is_groth_fibration(f)
        table["conclusion"] = concl
        return VerdictReport("fibration-two-of-three", concl,
                             witness=None if concl else {"f": "not a fibration", "table": table}, details=table)
    table["conclusion"] = None
    return VerdictReport("fibration-two-of-three", True, details=table, witness=bad)


def _hypothesis4(f, p, q, pc, fcs):
    E, C = p.dom, p.cod
    cart_in_fiber = {
        c: frozenset(m for m in fc.dom.morphisms if is_cartesian_morphism(fc, m)) for c, fc in fcs.items()
    }
    by_phi: dict = {}
    for m in pc:
        by_phi.setdefault(p.mor(m), []).append(m)
    for phi, lifts in by_phi.items():
        c2, c = C.src(phi), C.tgt(phi)
        for alpha in lifts:
            for delta in lifts:
                for gamma in E.hom(E.tgt(alpha), E.tgt(delta)):
                    if gamma not in cart_in_fiber[c]:
                        continue
                    ga = E.compose(gamma, alpha)
                    for beta in E.hom(E.src(alpha), E.src(delta)):
                        if p.mor(beta) != C.identity(c2) or E.compose(delta, beta) != ga:
                            continue
                        if beta not in cart_in_fiber[c2]:
                            return False, {"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta}
    return True, None


def two_of_three_discrete(f: Functor, p: Functor, q: Functor) -> VerdictReport:
    """If ``p`` and ``q`` are discrete fibrations then so is ``f``."""
    hyp = is_discrete_fibration(p) and is_discrete_fibration(q)
    if not hyp:
        return VerdictReport("discrete-two-of-three", True, details={"hypotheses": False, "conclusion": None})
    concl = is_discrete_fibration(f)
    return VerdictReport("discrete-two-of-three", concl, details={"hypotheses": True, "conclusion": concl},
                         witness=None if concl else {"f": "not a discrete fibration"})


# ------------------------------------------------ discrete fibrations over K
def iter_presheaves(C: FinCat, max_size: int, sizes: dict | None = None):
    """Presheaves ``X`` on ``C`` with ``X(c) = range(n_c)``, ``n_c ≤ max_size``, as :class:`SetDiagram` on ``op(C)``.

    ``sizes`` pins some ``n_c``.
    """
    from ..fincat.search import backtrack

    Cop = op(C)
    objs = list(C.objects)
    nonid = [m for m in C.morphisms if not C.is_identity(m)]
    choices = [[sizes[c]] if sizes and c in sizes else list(range(max_size + 1)) for c in objs]
    for ns in iproduct(*choices):
        n = dict(zip(objs, ns))
        # X(m) for m: x → y maps X(y) → X(x)
        tables = [list(iproduct(range(n[C.src(m)]), repeat=n[C.tgt(m)])) for m in nonid]
        pos = {m: k for k, m in enumerate(nonid)}
        comp = C.composition_table()
        checks: list[list] = [[] for _ in nonid]
        for g, f, h in comp:
            if g in pos and f in pos:
                at = max(pos[g], pos[f], pos.get(h, -1))
                checks[at].append((g, f, h))

        def consistent(k, a, checks=checks, pos=pos):
            for g, f, h in checks[k]:
                # X(g∘f) = X(f)∘X(g)
                Xg, Xf = a[pos[g]], a[pos[f]]
                if h in pos:
                    Xh = a[pos[h]]
                    if any(Xf[Xg[t]] != Xh[t] for t in range(len(Xg))):
                        return False
                elif any(Xf[Xg[t]] != t for t in range(len(Xg))):
                    return False
            return True

        for a in backtrack(len(nonid), lambda k, a, tables=tables: tables[k], consistent):
            value = {c: tuple(range(n[c])) for c in objs}
            action = {}
            for m in C.morphisms:
                if m in pos:
                    action[m] = dict(enumerate(a[pos[m]]))
                else:
                    action[m] = {t: t for t in range(n[C.src(m)])}
            yield SetDiagram(Cop, value, action, check=False)


def elements(X: SetDiagram) -> tuple[FinCat, Functor]:
    """The category of elements of a presheaf (a diagram on ``op(C)``) with its discrete fibration."""
    C = op(X.index)
    objs = [(c, t) for c in C.objects for t in X.value[c]]
    mors = [((m, t), (C.src(m), X.action[m][t]), (C.tgt(m), t))
            for m in C.morphisms for t in X.value[C.tgt(m)]]
    El = FinCat(
        objs, mors,
        {(c, t): (C.identity(c), t) for c, t in objs},
        lambda g, f: (C.compose(g[0], f[0]), g[1]),
        name="el",
        check=False,
    )
    return El, Functor(El, C, {o: o[0] for o in objs}, {m: m[0] for m, _, _ in mors}, check=False)


def _iso_over(a: Functor, b: Functor, extra=None) -> bool:
    if a.dom.n_objects != b.dom.n_objects or a.dom.n_morphisms != b.dom.n_morphisms:
        return False
    A, B = a.dom, b.dom

    def obj_ok(x, y):
        return a.obj(x) == b.obj(y) and (extra is None or extra[0].obj(x) == extra[1].obj(y))

    def mor_ok(m, n):
        return a.mor(m) == b.mor(n)

    return next(iter_functors(A, B, obj_filter=obj_ok, mor_filter=mor_ok, injective=True), None) is not None


def _classes(items, same) -> list:
    reps: list = []
    for it in items:
        if not any(same(it, r) for r in reps):
            reps.append(it)
    return reps


def dfib_slice_equiv(p: Functor, max_fiber: int = 2) -> VerdictReport:
    """Composition with a discrete fibration ``p: K → C`` against ``DFib(C)_{/p}``, by enumeration.

    Left: discrete fibrations over ``K`` with fibers of size ``≤ max_fiber``.
    Right: discrete fibrations ``B → C`` with a map ``g: B → K`` over ``C``
    whose fibers over each object of ``K`` have size ``≤ max_fiber``.
    """
    if not is_discrete_fibration(p):
        return VerdictReport("discrete-fibration-slice", False, witness={"p": "not a discrete fibration"})
    K, C = p.dom, p.cod
    left = [elements(X)[1] for X in iter_presheaves(K, max_fiber)]
    left_reps = _classes(left, _iso_over)
    kmax = max((sum(1 for k in K.objects if p.obj(k) == c) for c in C.objects), default=0) * max_fiber
    right = []
    for Y in iter_presheaves(C, kmax):
        El, b = elements(Y)
        for g in iter_functors(El, K, obj_filter=lambda x, k: p.obj(k) == x[0], mor_filter=lambda m, n: p.mor(n) == m[0]):
            sizes: dict = {}
            for o in El.objects:
                sizes[g.obj(o)] = sizes.get(g.obj(o), 0) + 1
            if max(sizes.values(), default=0) <= max_fiber:
                right.append((b, g))
    right_reps = _classes(right, lambda u, v: _iso_over(u[0], v[0], (u[1], v[1])))
    surj = all(is_discrete_fibration(g) for _, g in right_reps)
    images = [(compose_functors(p, a), a) for a in left_reps]
    hits = [next((k for k, r in enumerate(right_reps) if _iso_over(im[0], r[0], (im[1], r[1]))), None) for im in images]
    bij = None not in hits and len(set(hits)) == len(hits) == len(right_reps)
    ff = True
    for a in left_reps:
        for a2 in left_reps:
            over_k = sum(1 for _ in iter_functors(a.dom, a2.dom, obj_filter=lambda x, y: a.obj(x) == a2.obj(y),
                                                  mor_filter=lambda m, n: a.mor(m) == a2.mor(n)))
            over_c = sum(
                1 for h in iter_functors(a.dom, a2.dom, obj_filter=lambda x, y: p.obj(a.obj(x)) == p.obj(a2.obj(y)),
                                         mor_filter=lambda m, n: p.mor(a.mor(m)) == p.mor(a2.mor(n)))
                if compose_functors(a2, h).key == a.key
            )
            if over_k != over_c:
                ff = False
    ok = surj and bij and ff
    details = {"classes_left": len(left_reps), "classes_right": len(right_reps),
               "essentially_surjective": surj and bij, "fully_faithful": ff}
    return VerdictReport("discrete-fibration-slice", ok, witness=None if ok else details, details=details)
