"""Exhaustive enumeration of functors and natural transformations.

The search assigns objects one at a time; as soon as both endpoints of a
morphism are placed the morphism itself is assigned, and every composition
constraint ``F(g)∘F(f) = F(g∘f)`` is tested at the step that completes it.
"""
from __future__ import annotations

from collections import Counter
from typing import Callable, Iterator, Mapping

from ..config import caps
from ..errors import SizeBoundExceeded
from .category import FinCat, Functor, NatTrans
from .search import backtrack, greedy_order


def _plan(C: FinCat):
    nbrs: dict[int, set] = {i: set() for i in range(len(C.objects))}
    for m in range(len(C.morphisms)):
        s, t = C._src[m], C._tgt[m]
        if s != t:
            nbrs[s].add(t)
            nbrs[t].add(s)
    order = greedy_order(list(range(len(C.objects))), lambda i: nbrs[i])
    ids = set(C._id)
    steps: list[tuple[str, int]] = []
    placed: set = set()
    mpos: dict[int, int] = {}
    for x in order:
        steps.append(("o", x))
        mpos[C._id[x]] = len(steps) - 1
        placed.add(x)
        for m in range(len(C.morphisms)):
            if m in ids or m in mpos:
                continue
            if C._src[m] in placed and C._tgt[m] in placed:
                steps.append(("m", m))
                mpos[m] = len(steps) - 1
    checks: list[list[tuple[int, int, int]]] = [[] for _ in steps]
    for (g, f), h in C._comp.items():
        if g in ids or f in ids:
            continue
        at = max(mpos[g], mpos[f], mpos[h])
        checks[at].append((g, f, h))
    return steps, checks


def iter_functors(
    C: FinCat,
    D: FinCat,
    *,
    obj_filter: Callable[[object, object], bool] | None = None,
    mor_filter: Callable[[object, object], bool] | None = None,
    fixed_obj: Mapping | None = None,
    fixed_mor: Mapping | None = None,
    injective: bool = False,
) -> Iterator[Functor]:
    """Yield every functor ``C → D`` satisfying the optional restrictions.

    ``obj_filter(x, d)`` and ``mor_filter(m, n)`` prune candidate images;
    ``fixed_obj``/``fixed_mor`` pin values; ``injective`` demands injectivity on
    objects and morphisms (used for isomorphism search).
    """
    steps, checks = _plan(C)
    fo = {C._o(x): D._o(d) for x, d in (fixed_obj or {}).items()}
    fm = {C._m(m): D._m(n) for m, n in (fixed_mor or {}).items()}
    n_do = len(D.objects)
    obj_cands = []
    for i, x in enumerate(C.objects):
        if i in fo:
            cs = [fo[i]]
        else:
            cs = list(range(n_do))
        if obj_filter is not None:
            cs = [d for d in cs if obj_filter(x, D.objects[d])]
        obj_cands.append(cs)
    om = [None] * len(C.objects)
    mm = [None] * len(C.morphisms)
    used_o: set = set()
    used_m: set = set()
    Cm, Dm = C.morphisms, D.morphisms

    def candidates(k, a):
        kind, i = steps[k]
        if kind == "o":
            cs = obj_cands[i]
            if injective:
                cs = [d for d in cs if d not in used_o]
            return cs
        cs = D._hom.get((om[C._src[i]], om[C._tgt[i]]), ())
        if i in fm:
            cs = [fm[i]] if fm[i] in cs else []
        if mor_filter is not None:
            cs = [n for n in cs if mor_filter(Cm[i], Dm[n])]
        if injective:
            cs = [n for n in cs if n not in used_m]
        return cs

    # the backtracking driver reassigns a[k] in place, so the shared state
    # (om, mm, used sets) is rolled back by remembering what step k set
    prev: list = [None] * len(steps)

    def undo(k):
        p = prev[k]
        if p is None:
            return
        kind, i = steps[k]
        if kind == "o":
            used_o.discard(om[i])
            used_m.discard(mm[C._id[i]])
            om[i] = None
            mm[C._id[i]] = None
        else:
            used_m.discard(mm[i])
            mm[i] = None
        prev[k] = None

    def consistent(k, a):
        for j in range(k, len(steps)):
            undo(j)
        kind, i = steps[k]
        v = a[k]
        if kind == "o":
            om[i] = v
            idm = D._id[v]
            if C._id[i] in fm and fm[C._id[i]] != idm:
                om[i] = None
                return False
            mm[C._id[i]] = idm
            if injective:
                used_o.add(v)
                used_m.add(idm)
        else:
            mm[i] = v
            if injective:
                used_m.add(v)
        prev[k] = True
        comp = D._comp
        for g, f, h in checks[k]:
            if comp[(mm[g], mm[f])] != mm[h]:
                return False
        return True

    for a in backtrack(len(steps), candidates, consistent):
        yield Functor._raw(C, D, tuple(om), tuple(mm))
    for j in range(len(steps)):
        undo(j)


def enumerate_functors(C: FinCat, D: FinCat, **kw) -> list[Functor]:
    limit = caps().max_enumeration
    out = []
    for F in iter_functors(C, D, **kw):
        out.append(F)
        if len(out) > limit:
            raise SizeBoundExceeded(f"more than {limit} functors", {"cap": limit})
    return out


def iter_nat_trans(F: Functor, G: Functor, *, fixed: Mapping | None = None) -> Iterator[NatTrans]:
    """Yield every natural transformation ``F ⇒ G``."""
    C, D = F.dom, F.cod
    nbrs: dict[int, set] = {i: set() for i in range(len(C.objects))}
    for m in range(len(C.morphisms)):
        nbrs[C._src[m]].add(C._tgt[m])
        nbrs[C._tgt[m]].add(C._src[m])
    order = greedy_order(list(range(len(C.objects))), lambda i: nbrs[i])
    pos = {x: k for k, x in enumerate(order)}
    checks: list[list[int]] = [[] for _ in order]
    for m in range(len(C.morphisms)):
        if C._id[C._src[m]] == m:
            continue
        checks[max(pos[C._src[m]], pos[C._tgt[m]])].append(m)
    fx = {C._o(x): D._m(v) for x, v in (fixed or {}).items()}
    comps = [None] * len(C.objects)

    def candidates(k, a):
        x = order[k]
        cs = D._hom.get((F._om[x], G._om[x]), ())
        if x in fx:
            return [fx[x]] if fx[x] in cs else []
        return cs

    def consistent(k, a):
        comps[order[k]] = a[k]
        comp = D._comp
        for m in checks[k]:
            s, t = C._src[m], C._tgt[m]
            if comp[(comps[t], F._mm[m])] != comp[(G._mm[m], comps[s])]:
                return False
        return True

    for a in backtrack(len(order), candidates, consistent):
        c = [None] * len(order)
        for k, x in enumerate(order):
            c[x] = a[k]
        yield NatTrans._raw(F, G, tuple(c))


def enumerate_nat_trans(F: Functor, G: Functor) -> list[NatTrans]:
    return list(iter_nat_trans(F, G))


# ---------------------------------------------------------------- isomorphism
def _signature(C: FinCat, i: int):
    return (
        len(C._out[i]),
        len(C._in[i]),
        len(C._hom.get((i, i), ())),
        tuple(sorted(Counter(C._tgt[m] == i for m in C._out[i]).items())),
    )


def find_isomorphism(C: FinCat, D: FinCat) -> Functor | None:
    """An isomorphism of categories ``C → D`` or ``None``."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    sc = [_signature(C, i) for i in range(len(C.objects))]
    sd = [_signature(D, i) for i in range(len(D.objects))]
    if Counter(sc) != Counter(sd):
        return None
    if Counter(len(v) for v in C._hom.values()) != Counter(len(v) for v in D._hom.values()):
        return None
    sig_c = {x: s for x, s in zip(C.objects, sc)}
    sig_d = {x: s for x, s in zip(D.objects, sd)}
    for F in iter_functors(C, D, injective=True, obj_filter=lambda x, d: sig_c[x] == sig_d[d]):
        return F
    return None


def is_isomorphic(C: FinCat, D: FinCat) -> bool:
    return find_isomorphism(C, D) is not None


def is_isomorphism(F: Functor) -> bool:
    return (
        len(set(F._om)) == len(F._om) == len(F.cod.objects)
        and len(set(F._mm)) == len(F._mm) == len(F.cod.morphisms)
    )


def is_fully_faithful(F: Functor) -> bool:
    C, D = F.dom, F.cod
    for x in range(len(C.objects)):
        for y in range(len(C.objects)):
            src = C._hom.get((x, y), ())
            tgt = D._hom.get((F._om[x], F._om[y]), ())
            if len(src) != len(tgt) or len({F._mm[m] for m in src}) != len(src):
                return False
    return True


def is_essentially_surjective(F: Functor) -> bool:
    D = F.cod
    image = set(F._om)
    for d in range(len(D.objects)):
        if d in image:
            continue
        hit = False
        for e in image:
            for m in D._hom.get((e, d), ()):
                if D.inverse(D.morphisms[m]) is not None:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return False
    return True


def is_equivalence(F: Functor) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)
