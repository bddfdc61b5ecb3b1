"""Probe-based verification of colimits of Cat-valued diagrams.

A cocone ``(legs_i: D(i) → apex)`` is a colimit iff for every category ``X``
restriction ``Fun(apex, X) → lim_i Fun(D(i), X)`` is an isomorphism.  We can
only ask this for finitely many ``X``; the probes below are the usual test
shapes.
"""
from __future__ import annotations

from itertools import islice

from ..errors import NotACocone
from ..verdict import VerdictReport
from .category import CatValuedDiagram, FinCat, Functor, NatTrans, compose_functors, op, ordinal, product
from .constructions import compatible_families
from .enumerate import iter_functors, iter_nat_trans

AUTO_MORPHISM_LIMIT = 30
APEX_PROBE_LIMIT = 20_000


def default_probes() -> list[FinCat]:
    return [ordinal(0), ordinal(1), ordinal(2), product(ordinal(1), ordinal(1))]


def check_cocone(D: CatValuedDiagram, apex: FinCat, legs: dict) -> None:
    """Raise :class:`NotACocone` unless ``legs[j]∘D(α) = legs[i]`` for every ``α: i → j``."""
    I = D.index
    for i in I.objects:
        L = legs[i]
        if not (L.dom == D.value[i] and L.cod == apex):
            raise NotACocone(f"leg at {i!r} has the wrong (co)domain", {"index": i})
    for a in I.morphisms:
        i, j = I.src(a), I.tgt(a)
        if compose_functors(legs[j], D.action[a]).key != legs[i].key:
            raise NotACocone(f"legs do not commute with the action of {a!r}", {"morphism": a})


def _probe(D: CatValuedDiagram, apex: FinCat, legs: dict, X: FinCat, morphisms) -> dict | None:
    I = D.index
    Iop = op(I)
    objs = I.objects
    funs = [list(iter_functors(D.value[i], X)) for i in objs]
    where = [{F.key: k for k, F in enumerate(fs)} for fs in funs]
    restr = []
    for a in I.morphisms:
        i, j = I._src[I._midx[a]], I._tgt[I._midx[a]]
        Da = D.action[a]
        restr.append([where[i][compose_functors(H, Da).key] for H in funs[j]])
    families = set(compatible_families(Iop, [len(f) for f in funs], lambda m, v: restr[m][v]))
    apex_funs = list(iter_functors(apex, X))
    image: dict = {}
    for G in apex_funs:
        fam = tuple(where[k][compose_functors(G, legs[i]).key] for k, i in enumerate(objs))
        if fam in image:
            return {
                "probe": X.name, "kind": "not injective on objects",
                "functors": [image[fam].obj_map, G.obj_map],
            }
        image[fam] = G
    missing = families - set(image)
    if missing:
        fam = min(missing)
        return {
            "probe": X.name, "kind": "not surjective on objects",
            "family": {repr(i): funs[k][fam[k]].obj_map for k, i in enumerate(objs)},
        }
    if len(image) != len(families):
        return {"probe": X.name, "kind": "image contains incompatible family"}
    if morphisms is False or (morphisms == "auto" and len(apex_funs) > AUTO_MORPHISM_LIMIT):
        return None
    for G in apex_funs:
        for G2 in apex_funs:
            bad = _probe_nat(D, legs, G, G2)
            if bad is not None:
                bad["probe"] = X.name
                return bad
    return None


def _probe_nat(D: CatValuedDiagram, legs: dict, G: Functor, G2: Functor) -> dict | None:
    I = D.index
    objs = I.objects
    srcs = [compose_functors(G, legs[i]) for i in objs]
    tgts = [compose_functors(G2, legs[i]) for i in objs]
    nats = [list(iter_nat_trans(s, t)) for s, t in zip(srcs, tgts)]
    where = [{a._c: k for k, a in enumerate(ns)} for ns in nats]
    restr = []
    for a in I.morphisms:
        m = I._midx[a]
        i, j = I._src[m], I._tgt[m]
        Da = D.action[a]
        restr.append([where[i].get(tuple(th._c[x] for x in Da._om), -1) for th in nats[j]])
    families = set(compatible_families(op(I), [len(n) for n in nats], lambda m, v: restr[m][v]))
    image = set()
    for th in iter_nat_trans(G, G2):
        fam = tuple(where[k][tuple(th._c[x] for x in legs[i]._om)] for k, i in enumerate(objs))
        if fam in image:
            return {"kind": "not injective on morphisms", "functors": [G.obj_map, G2.obj_map]}
        image.add(fam)
    if image != families:
        return {"kind": "not surjective on morphisms", "functors": [G.obj_map, G2.obj_map]}
    return None


def check_colimit_cocone(
    D: CatValuedDiagram,
    apex: FinCat,
    legs: dict,
    probes: list[FinCat] | None = None,
    *,
    morphisms="auto",
    include_apex="auto",
) -> VerdictReport:
    """Test the colimit universal property of a cocone against probe categories.

    ``morphisms`` is ``True``, ``False`` or ``"auto"``; in auto mode the
    morphism-level comparison runs when ``Fun(apex, X)`` has at most
    ``AUTO_MORPHISM_LIMIT`` objects.  The apex itself is an extra probe when
    ``include_apex`` is true, or in auto mode when it has at most
    ``APEX_PROBE_LIMIT`` endofunctors.
    """
    check_cocone(D, apex, legs)
    probes = list(default_probes() if probes is None else probes)
    if include_apex == "auto":
        include_apex = sum(1 for _ in islice(iter_functors(apex, apex), APEX_PROBE_LIMIT + 1)) <= APEX_PROBE_LIMIT
    if include_apex:
        probes.append(apex)
    for X in probes:
        bad = _probe(D, apex, legs, X, morphisms)
        if bad is not None:
            return VerdictReport("colimit", False, witness=bad,
                                 details={"probes": len(probes), "apex_probe": include_apex})
    return VerdictReport("colimit", True, details={"probes": len(probes), "apex_probe": include_apex})
