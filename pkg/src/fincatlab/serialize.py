"""JSON round trips for categories, functors, diagrams, fibrations, simplicial sets and 2-categories.

Ids may be any nesting of str/int/bool/None, tuples and frozensets.  Tuples are
written as JSON lists and read back as tuples; frozensets are written as
``{"set": [...]}``.
"""
from __future__ import annotations

import json
from itertools import product as iproduct

from .errors import MalformedWitness
from .fincat import CatValuedDiagram, FinCat, Functor
from .groth.grothendieck import FibCat
from .sset import MarkedSSet, SSet


# ------------------------------------------------------------------- ids
def encode_id(x):
    if isinstance(x, tuple):
        return [encode_id(v) for v in x]
    if isinstance(x, frozenset):
        return {"set": sorted((encode_id(v) for v in x), key=repr)}
    if x is None or isinstance(x, (str, int, float, bool)):
        return x
    raise MalformedWitness(f"cannot serialize id {x!r}")


def decode_id(x):
    if isinstance(x, list):
        return tuple(decode_id(v) for v in x)
    if isinstance(x, dict):
        if set(x) != {"set"}:
            raise MalformedWitness(f"unknown id encoding {x!r}")
        return frozenset(decode_id(v) for v in x["set"])
    return x


def _need(d: dict, kind: str, *keys):
    if not isinstance(d, dict) or d.get("kind") != kind:
        raise MalformedWitness(f"expected a {kind!r} record")
    missing = [k for k in keys if k not in d]
    if missing:
        raise MalformedWitness(f"{kind} record is missing {missing}")


# ------------------------------------------------------------- categories
def category_to_json(C: FinCat) -> dict:
    e = encode_id
    return {
        "kind": "category",
        "name": C.name,
        "objects": [e(x) for x in C.objects],
        "morphisms": [[e(m), e(C.src(m)), e(C.tgt(m))] for m in C.morphisms],
        "identities": [[e(x), e(C.identity(x))] for x in C.objects],
        "composition": [[e(g), e(f), e(h)] for g, f, h in C.composition_table()],
    }


def category_from_json(d: dict, check: bool = True) -> FinCat:
    _need(d, "category", "objects", "morphisms", "identities", "composition")
    dec = decode_id
    try:
        table = {(dec(g), dec(f)): dec(h) for g, f, h in d["composition"]}
        return FinCat(
            [dec(x) for x in d["objects"]],
            [(dec(m), dec(s), dec(t)) for m, s, t in d["morphisms"]],
            {dec(x): dec(i) for x, i in d["identities"]},
            table,
            name=d.get("name"),
            check=check,
        )
    except (TypeError, ValueError) as exc:
        raise MalformedWitness(f"malformed category record: {exc}") from None


def _functor_tables(F: Functor) -> dict:
    e = encode_id
    return {
        "objects": [[e(x), e(F.obj(x))] for x in F.dom.objects],
        "morphisms": [[e(m), e(F.mor(m))] for m in F.dom.morphisms],
    }


def _functor_from_tables(d: dict, dom: FinCat, cod: FinCat, check: bool) -> Functor:
    dec = decode_id
    return Functor(dom, cod, {dec(a): dec(b) for a, b in d["objects"]},
                   {dec(a): dec(b) for a, b in d["morphisms"]}, check=check)


def functor_to_json(F: Functor) -> dict:
    return {"kind": "functor", "dom": category_to_json(F.dom), "cod": category_to_json(F.cod), **_functor_tables(F)}


def functor_from_json(d: dict, check: bool = True) -> Functor:
    _need(d, "functor", "dom", "cod", "objects", "morphisms")
    return _functor_from_tables(d, category_from_json(d["dom"]), category_from_json(d["cod"]), check)


def diagram_to_json(F: CatValuedDiagram) -> dict:
    e = encode_id
    return {
        "kind": "cat_diagram",
        "index": category_to_json(F.index),
        "values": [[e(i), category_to_json(F.value[i])] for i in F.index.objects],
        "actions": [[e(m), _functor_tables(F.action[m])] for m in F.index.morphisms],
    }


def diagram_from_json(d: dict, check: bool = True) -> CatValuedDiagram:
    _need(d, "cat_diagram", "index", "values", "actions")
    I = category_from_json(d["index"])
    values = {decode_id(i): category_from_json(v) for i, v in d["values"]}
    actions = {}
    for m, t in d["actions"]:
        m = decode_id(m)
        actions[m] = _functor_from_tables(t, values[I.src(m)], values[I.tgt(m)], check)
    return CatValuedDiagram(I, values, actions, check=check)


def fibration_to_json(q: FibCat) -> dict:
    return {"kind": "fibration", "projection": functor_to_json(q.proj)}


def fibration_from_json(d: dict) -> FibCat:
    _need(d, "fibration", "projection")
    p = functor_from_json(d["projection"])
    return FibCat(p.dom, p.cod, p)


# --------------------------------------------------------- simplicial sets
def sset_to_json(X: SSet | MarkedSSet) -> dict:
    marked = None
    if isinstance(X, MarkedSSet):
        X, marked = X.underlying, X.marked
    pos = [{x: i for i, x in enumerate(X.cells(k))} for k in range(X.dim + 1)]
    out = {
        "kind": "sset",
        "name": X.name,
        "dim": X.dim,
        "cells": [[encode_id(x) for x in X.cells(k)] for k in range(X.dim + 1)],
        "d": [[[pos[k - 1][X.face(k, i, x)] for x in X.cells(k)] for i in range(k + 1)] if k else []
              for k in range(X.dim + 1)],
        "s": [[[pos[k + 1][X.degen(k, j, x)] for x in X.cells(k)] for j in range(k + 1)] if k < X.dim else []
              for k in range(X.dim + 1)],
    }
    if marked is not None:
        out["marked"] = sorted(pos[1][e] for e in marked)
    return out


def sset_from_json(d: dict, check: bool = True) -> SSet | MarkedSSet:
    _need(d, "sset", "dim", "cells", "d", "s")
    try:
        cells = [[decode_id(x) for x in level] for level in d["cells"]]
        dim = d["dim"]
        if len(cells) != dim + 1:
            raise MalformedWitness("number of levels does not match dim")
        faces = [[dict(zip(cells[k], (cells[k - 1][j] for j in row))) for row in d["d"][k]] if k else []
                 for k in range(dim + 1)]
        degens = [[dict(zip(cells[k], (cells[k + 1][j] for j in row))) for row in d["s"][k]] if k < dim else []
                  for k in range(dim + 1)]
    except (IndexError, TypeError, KeyError) as exc:
        raise MalformedWitness(f"malformed simplicial set record: {exc}") from None
    X = SSet(dim, cells, faces, degens, name=d.get("name") or "", check=check)
    if "marked" in d:
        return MarkedSSet(X, [cells[1][i] for i in d["marked"]])
    return X


# ----------------------------------------------------------- 2-categories
def two_cat_to_json(B) -> dict:
    e = encode_id
    ob = B.objects
    comp1, comp2 = [], []
    for x, y, z in iproduct(ob, repeat=3):
        H1, H2 = B.hom(x, y), B.hom(y, z)
        comp1 += [[e(g), e(f), e(B.comp(g, f))] for f in H1.objects for g in H2.objects]
        comp2 += [[e(b), e(a), e(B.hcomp(b, a))] for a in H1.morphisms for b in H2.morphisms]
    return {
        "kind": "two_cat",
        "name": B.name,
        "objects": [e(x) for x in ob],
        "homs": [[e(x), e(y), category_to_json(B.hom(x, y))] for x in ob for y in ob if B.hom(x, y).objects],
        "units": [[e(x), e(B.unit(x))] for x in ob],
        "comp1": comp1,
        "comp2": comp2,
    }


def two_cat_from_json(d: dict):
    from .duskin import TwoCat

    _need(d, "two_cat", "objects", "homs", "units", "comp1", "comp2")
    dec = decode_id
    c1 = {(dec(g), dec(f)): dec(h) for g, f, h in d["comp1"]}
    c2 = {(dec(b), dec(a)): dec(c) for b, a, c in d["comp2"]}

    def lookup(table, what):
        def comp(g, f):
            try:
                return table[(g, f)]
            except KeyError:
                raise MalformedWitness(f"{what} table has no entry for {(g, f)!r}") from None
        return comp

    return TwoCat(
        [dec(x) for x in d["objects"]],
        {(dec(x), dec(y)): category_from_json(h) for x, y, h in d["homs"]},
        {dec(x): dec(u) for x, u in d["units"]},
        lookup(c1, "1-cell composition"), lookup(c2, "2-cell composition"),
        name=d.get("name") or "",
    )


def oplax_to_json(F) -> dict:
    e = encode_id
    return {
        "kind": "oplax",
        "dom": two_cat_to_json(F.dom),
        "cod": two_cat_to_json(F.cod),
        "objects": [[e(a), e(b)] for a, b in F.obj.items()],
        "one_cells": [[e(a), e(b)] for a, b in F.one.items()],
        "two_cells": [[e(a), e(b)] for a, b in F.two.items()],
        "eta": [[e(f), e(g), e(c)] for (f, g), c in F.eta.items()],
        "pseudo": F.pseudo,
    }


def oplax_from_json(d: dict):
    from .duskin import NormalOplax

    _need(d, "oplax", "dom", "cod", "objects", "one_cells", "two_cells", "eta")
    dec = decode_id
    F = NormalOplax(
        two_cat_from_json(d["dom"]), two_cat_from_json(d["cod"]),
        {dec(a): dec(b) for a, b in d["objects"]},
        {dec(a): dec(b) for a, b in d["one_cells"]},
        {dec(a): dec(b) for a, b in d["two_cells"]},
        {(dec(f), dec(g)): dec(c) for f, g, c in d["eta"]},
        pseudo=bool(d.get("pseudo", False)),
    )
    return F.validate()


# --------------------------------------------------------------- dispatch
_READERS = {
    "category": category_from_json,
    "functor": functor_from_json,
    "cat_diagram": diagram_from_json,
    "fibration": fibration_from_json,
    "sset": sset_from_json,
    "two_cat": two_cat_from_json,
    "oplax": oplax_from_json,
}


def to_json(obj) -> dict:
    from .duskin import NormalOplax, TwoCat

    for cls, writer in (
        (FinCat, category_to_json), (Functor, functor_to_json), (CatValuedDiagram, diagram_to_json),
        (FibCat, fibration_to_json), (SSet, sset_to_json), (MarkedSSet, sset_to_json),
        (TwoCat, two_cat_to_json), (NormalOplax, oplax_to_json),
    ):
        if isinstance(obj, cls):
            return writer(obj)
    raise MalformedWitness(f"no JSON form for {type(obj).__name__}")


def from_json(d: dict):
    if not isinstance(d, dict) or d.get("kind") not in _READERS:
        raise MalformedWitness("record has no known 'kind'")
    return _READERS[d["kind"]](d)


def dumps(obj, **kw) -> str:
    return json.dumps(to_json(obj), sort_keys=True, ensure_ascii=False, **kw)


def loads(text: str):
    try:
        return from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise MalformedWitness(f"not JSON: {exc}") from None
