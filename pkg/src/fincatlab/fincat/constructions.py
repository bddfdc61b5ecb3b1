"""Slices, functor categories, interiors, arrow categories and limits of diagrams."""
from __future__ import annotations

from ..config import caps, check_category_size
from ..errors import SizeBoundExceeded
from .category import (
    CatValuedDiagram,
    FinCat,
    Functor,
    NatTrans,
    SetDiagram,
    compose_functors,
    vertical,
)
from .enumerate import iter_functors, iter_nat_trans
from .search import backtrack, greedy_order


def slice_under(C: FinCat, x) -> tuple[FinCat, Functor]:
    """``C_{x/}`` with its projection to ``C``.

    Objects are the morphisms out of ``x``; a morphism ``f → g`` is ``(f, g, h)``
    with ``h∘f = g``.
    """
    objs = C.out_of(x)
    mors = []
    for f in objs:
        for h in C.out_of(C.tgt(f)):
            mors.append(((f, C.compose(h, f), h), f, C.compose(h, f)))
    S = FinCat(
        objs,
        mors,
        {f: (f, f, C.identity(C.tgt(f))) for f in objs},
        lambda b, a: (a[0], b[1], C.compose(b[2], a[2])),
        name=f"{C.name or 'C'}_{{{x}/}}",
        check=False,
    )
    P = Functor(S, C, {f: C.tgt(f) for f in objs}, {m: m[2] for m, _, _ in mors}, check=False)
    return S, P


def slice_over(C: FinCat, x) -> tuple[FinCat, Functor]:
    """``C_{/x}`` with its projection; a morphism ``f → g`` is ``(f, g, h)`` with ``g∘h = f``."""
    objs = C.into(x)
    mors = []
    for g in objs:
        for h in C.into(C.src(g)):
            mors.append(((C.compose(g, h), g, h), C.compose(g, h), g))
    S = FinCat(
        objs,
        mors,
        {f: (f, f, C.identity(C.src(f))) for f in objs},
        lambda b, a: (a[0], b[1], C.compose(b[2], a[2])),
        name=f"{C.name or 'C'}_{{/{x}}}",
        check=False,
    )
    P = Functor(S, C, {f: C.src(f) for f in objs}, {m: m[2] for m, _, _ in mors}, check=False)
    return S, P


def functor_category(C: FinCat, D: FinCat) -> FinCat:
    """``Fun(C, D)``: objects are :class:`Functor` values, morphisms :class:`NatTrans` values."""
    cap = caps()
    objs = []
    for F in iter_functors(C, D):
        objs.append(F)
        if len(objs) > cap.max_objects:
            raise SizeBoundExceeded(
                f"Fun: more than {cap.max_objects} functors", {"objects": len(objs), "cap": cap.max_objects}
            )
    mors = []
    for F in objs:
        for G in objs:
            for a in iter_nat_trans(F, G):
                mors.append((a, F, G))
                if len(mors) > cap.max_morphisms:
                    raise SizeBoundExceeded(
                        f"Fun: more than {cap.max_morphisms} natural transformations",
                        {"morphisms": len(mors), "cap": cap.max_morphisms},
                    )
    ids = {}
    for F in objs:
        ids[F] = NatTrans._raw(F, F, tuple(D._id[i] for i in F._om))
    return FinCat(objs, mors, ids, vertical, name=f"Fun({C.name or '?'}, {D.name or '?'})", check=False)


def evaluation(FC: FinCat, C: FinCat, x) -> Functor:
    """Evaluation at ``x`` as a functor ``Fun(C, D) → D``."""
    if not FC.objects:
        raise SizeBoundExceeded("evaluation on an empty functor category needs its codomain")
    D = FC.objects[0].cod
    i = C._o(x)
    return Functor._raw(
        FC, D, tuple(D._oidx[F.cod.objects[F._om[i]]] for F in FC.objects),
        tuple(D._midx[a.src.cod.morphisms[a._c[i]]] for a in FC.morphisms),
    )


def postcompose(FC_src: FinCat, FC_tgt: FinCat, p: Functor) -> Functor:
    """``p∘−: Fun(K, E) → Fun(K, C)`` between already built functor categories."""
    om, mm = {}, {}
    for F in FC_src.objects:
        om[F] = compose_functors(p, F)
    for a in FC_src.morphisms:
        mm[a] = NatTrans._raw(om[a.src], om[a.tgt], tuple(p._mm[m] for m in a._c))
    return Functor(FC_src, FC_tgt, om, mm, check=False)


def precompose(FC_src: FinCat, FC_tgt: FinCat, H: Functor) -> Functor:
    """``−∘H: Fun(C, X) → Fun(B, X)`` for ``H: B → C``."""
    om, mm = {}, {}
    for F in FC_src.objects:
        om[F] = compose_functors(F, H)
    for a in FC_src.morphisms:
        mm[a] = NatTrans._raw(om[a.src], om[a.tgt], tuple(a._c[i] for i in H._om))
    return Functor(FC_src, FC_tgt, om, mm, check=False)


def interior(C: FinCat) -> FinCat:
    """The maximal subgroupoid."""
    keep = [m for m in C.morphisms if C.inverse(m) is not None]
    return FinCat(
        C.objects,
        [(m, C.src(m), C.tgt(m)) for m in keep],
        {x: C.identity(x) for x in C.objects},
        C.compose,
        name=f"ι{C.name}" if C.name else None,
        check=False,
    )


def is_groupoid(C: FinCat) -> bool:
    return all(C.inverse(m) is not None for m in C.morphisms)


def arrow_category(C: FinCat) -> FinCat:
    """``C^{[1]}``: objects are morphisms, a morphism ``f → g`` is ``(f, g, (a, b))`` with ``b∘f = g∘a``."""
    objs = C.morphisms
    mors = []
    for f in objs:
        for g in objs:
            for a in C.hom(C.src(f), C.src(g)):
                for b in C.hom(C.tgt(f), C.tgt(g)):
                    if C.compose(b, f) == C.compose(g, a):
                        mors.append(((f, g, (a, b)), f, g))
    return FinCat(
        objs,
        mors,
        {f: (f, f, (C.identity(C.src(f)), C.identity(C.tgt(f)))) for f in objs},
        lambda v, u: (u[0], v[1], (C.compose(v[2][0], u[2][0]), C.compose(v[2][1], u[2][1]))),
        name=f"{C.name or 'C'}^[1]",
        check=False,
    )


def source_projection(A: FinCat, C: FinCat) -> Functor:
    return Functor(A, C, {f: C.src(f) for f in A.objects}, {m: m[2][0] for m in A.morphisms}, check=False)


def target_projection(A: FinCat, C: FinCat) -> Functor:
    return Functor(A, C, {f: C.tgt(f) for f in A.objects}, {m: m[2][1] for m in A.morphisms}, check=False)


# ------------------------------------------------------------------- limits
def compatible_families(I: FinCat, sizes: list[int], act):
    """Families ``(v_i)`` with ``act(α, v_src) == v_tgt`` for every index morphism ``α``.

    ``sizes[i]`` is the number of candidate values at index ``i`` and values
    are integers ``0 <= v < sizes[i]``; ``act`` receives integer morphism
    indices of ``I``.  A value is forced by an already placed source, or
    looked up in a preimage table when only targets are placed.
    """
    nbrs = {i: set() for i in range(len(I.objects))}
    for m in range(len(I.morphisms)):
        nbrs[I._src[m]].add(I._tgt[m])
        nbrs[I._tgt[m]].add(I._src[m])
    order = greedy_order(list(range(len(I.objects))), lambda i: nbrs[i])
    pos = {x: k for k, x in enumerate(order)}
    ids = set(I._id)
    forced: list[list[int]] = [[] for _ in order]
    checks: list[list[int]] = [[] for _ in order]
    for m in range(len(I.morphisms)):
        if m in ids:
            continue
        s, t = I._src[m], I._tgt[m]
        if pos[s] < pos[t]:
            forced[pos[t]].append(m)
        else:
            checks[pos[s]].append(m)
    pre_cache: dict[int, dict] = {}

    def preimage(m, target):
        table = pre_cache.get(m)
        if table is None:
            table = {}
            for v in range(sizes[I._src[m]]):
                table.setdefault(act(m, v), []).append(v)
            pre_cache[m] = table
        return table.get(target, ())

    val = [None] * len(order)

    def candidates(k, a):
        i = order[k]
        if forced[k]:
            m = forced[k][0]
            return [act(m, val[I._src[m]])]
        for m in checks[k]:
            if I._tgt[m] != i:
                return preimage(m, val[I._tgt[m]])
        return range(sizes[i])

    def consistent(k, a):
        i = order[k]
        val[i] = a[k]
        for m in forced[k][1:]:
            if act(m, val[I._src[m]]) != val[i]:
                return False
        for m in checks[k]:
            if act(m, val[I._src[m]]) != val[I._tgt[m]]:
                return False
        return True

    for a in backtrack(len(order), candidates, consistent):
        out = [None] * len(order)
        for k, i in enumerate(order):
            out[i] = a[k]
        yield tuple(out)


def limit_cat(D: CatValuedDiagram) -> tuple[FinCat, dict]:
    """The limit of a strict Cat-valued diagram, with its projections.

    Objects are tuples ``(x_i)`` in index order; morphisms are tuples ``(m_i)``.
    """
    I = D.index
    vals = [D.value[i] for i in I.objects]
    acts = [D.action[m] for m in I.morphisms]
    cap = caps()
    objs = []
    for fam in compatible_families(I, [len(V.objects) for V in vals], lambda m, v: acts[m]._om[v]):
        objs.append(tuple(vals[i].objects[v] for i, v in enumerate(fam)))
        if len(objs) > cap.max_objects:
            raise SizeBoundExceeded(f"limit: more than {cap.max_objects} objects", {"cap": cap.max_objects})
    mors = []
    for fam in compatible_families(I, [len(V.morphisms) for V in vals], lambda m, v: acts[m]._mm[v]):
        mid = tuple(vals[i].morphisms[v] for i, v in enumerate(fam))
        mors.append((
            mid,
            tuple(vals[i].objects[vals[i]._src[v]] for i, v in enumerate(fam)),
            tuple(vals[i].objects[vals[i]._tgt[v]] for i, v in enumerate(fam)),
        ))
        if len(mors) > cap.max_morphisms:
            raise SizeBoundExceeded(f"limit: more than {cap.max_morphisms} morphisms", {"cap": cap.max_morphisms})
    L = FinCat(
        objs,
        mors,
        {x: tuple(V.identity(c) for V, c in zip(vals, x)) for x in objs},
        lambda g, f: tuple(V.compose(a, b) for V, a, b in zip(vals, g, f)),
        name="lim",
        check=False,
    )
    proj = {}
    for k, i in enumerate(I.objects):
        V = vals[k]
        proj[i] = Functor._raw(L, V, tuple(V._oidx[x[k]] for x in L.objects), tuple(V._midx[m[k]] for m in L.morphisms))
    return L, proj


def set_limit(D: SetDiagram) -> tuple[list, dict]:
    """Limit of a finite-set diagram: compatible tuples and projections."""
    I = D.index
    vals = [D.value[i] for i in I.objects]
    index = [{v: k for k, v in enumerate(V)} for V in vals]
    acts = []
    for m in I.morphisms:
        a, t = D.action[m], index[I._tgt[I._midx[m]]]
        src = vals[I._src[I._midx[m]]]
        acts.append([t[a[x]] for x in src])
    elems = [tuple(vals[i][v] for i, v in enumerate(fam))
             for fam in compatible_families(I, [len(V) for V in vals], lambda m, v: acts[m][v])]
    proj = {i: {e: e[k] for e in elems} for k, i in enumerate(I.objects)}
    return elems, proj


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def classes(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def set_colimit(D: SetDiagram) -> tuple[list, dict]:
    """Colimit of a finite-set diagram.

    Returns the equivalence classes (each a sorted-by-insertion list of
    ``(index object, element)`` pairs, the first being the representative)
    and the legs ``i -> {x: class index}``.
    """
    I = D.index
    items = [(i, x) for i in I.objects for x in D.value[i]]
    uf = UnionFind(items)
    for m in I.morphisms:
        s, t = I.src(m), I.tgt(m)
        for x, y in D.action[m].items():
            uf.union((s, x), (t, y))
    order = {it: k for k, it in enumerate(items)}
    classes = sorted((sorted(c, key=order.__getitem__) for c in uf.classes()), key=lambda c: order[c[0]])
    where = {it: k for k, c in enumerate(classes) for it in c}
    legs = {i: {x: where[(i, x)] for x in D.value[i]} for i in I.objects}
    return classes, legs


def check_small(C: FinCat, what: str) -> None:
    check_category_size(len(C.objects), len(C.morphisms), what)


def pullback(k: Functor, p: Functor) -> tuple[FinCat, Functor, Functor]:
    """``K ×_C E`` for ``k: K → C`` and ``p: E → C``, with both projections."""
    K, E, C = k.dom, p.dom, k.cod
    objs = [(a, b) for a in K.objects for b in E.objects if k.obj(a) == p.obj(b)]
    by_image: dict = {}
    for n in E.morphisms:
        by_image.setdefault(p.mor(n), []).append(n)
    mors = [((m, n), (K.src(m), E.src(n)), (K.tgt(m), E.tgt(n)))
            for m in K.morphisms for n in by_image.get(k.mor(m), ())]
    P = FinCat(
        objs, mors,
        {(a, b): (K.identity(a), E.identity(b)) for a, b in objs},
        lambda g, f: (K.compose(g[0], f[0]), E.compose(g[1], f[1])),
        name="pullback",
        check=False,
    )
    pr1 = Functor._raw(P, K, tuple(K._oidx[o[0]] for o in objs), tuple(K._midx[m[0]] for m, _, _ in mors))
    pr2 = Functor._raw(P, E, tuple(E._oidx[o[1]] for o in objs), tuple(E._midx[m[1]] for m, _, _ in mors))
    return P, pr1, pr2
