"""Standard simplices and their subcomplexes, products and finite colimits."""
from __future__ import annotations

from ..errors import WorkbenchError
from ..fincat.constructions import UnionFind
from .core import (
    DEFAULT_DIM,
    MarkedSSet,
    SSet,
    SSetMap,
    monotone_maps,
    require_dim,
    subcomplex,
)


def simplex_on(vertices, dim: int = DEFAULT_DIM, name: str = "") -> SSet:
    """The nerve of a finite total order given as a sorted sequence."""
    vs = tuple(vertices)
    n = len(vs) - 1
    cells = [[tuple(vs[i] for i in a) for a in monotone_maps(k, n)] for k in range(dim + 1)]
    return SSet.build(dim, cells, lambda k, x, al: tuple(x[v] for v in al), name=name or f"Δ{vs}", check=False)


def simplex(n: int, dim: int = DEFAULT_DIM) -> SSet:
    """``Δⁿ``: a ``k``-cell is a monotone ``[k] → [n]``."""
    require_dim(n, dim, "simplex")
    return simplex_on(range(n + 1), dim, name=f"Δ{n}")


def boundary(n: int, dim: int = DEFAULT_DIM) -> SSet:
    full = set(range(n + 1))
    return subcomplex(simplex(n, dim), lambda k, x: set(x) != full, name=f"∂Δ{n}")


def horn(n: int, i: int, dim: int = DEFAULT_DIM) -> SSet:
    if not 0 <= i <= n or n < 1:
        raise WorkbenchError(f"no horn Λ^{n}_{i}")
    full = set(range(n + 1))
    return subcomplex(simplex(n, dim), lambda k, x: set(x) not in (full, full - {i}), name=f"Λ{n},{i}")


def spine(n: int, dim: int = DEFAULT_DIM) -> SSet:
    return subcomplex(simplex(n, dim), lambda k, x: x[-1] - x[0] <= 1, name=f"Sp{n}")


def product(*factors: SSet) -> SSet:
    dim = min(X.dim for X in factors)
    cells = [[()] for _ in range(dim + 1)]
    for X in factors:
        cells = [[c + (x,) for c in cells[k] for x in X.cells(k)] for k in range(dim + 1)]
    return SSet.build(
        dim, cells, lambda k, x, al: tuple(X.act(k, c, al) for X, c in zip(factors, x)),
        name="×".join(X.name or "?" for X in factors), check=False,
    )


def product_marked(*factors: MarkedSSet) -> MarkedSSet:
    P = product(*(A.underlying for A in factors))
    marked = [e for e in P.cells(1) if all(c in A.marked for A, c in zip(factors, e))] if P.dim else []
    return MarkedSSet(P, marked)


def product_map(*maps: SSetMap) -> SSetMap:
    dom = product(*(f.dom for f in maps))
    cod = product(*(f.cod for f in maps))
    return SSetMap.from_function(dom, cod, lambda k, x: tuple(f(k, c) for f, c in zip(maps, x)), check=False)


def finite_colimit(objects: list[SSet], arrows: list[tuple[int, int, SSetMap]], name: str = "colim"):
    """Levelwise set colimit.  Returns ``(X, legs)``; cells are ``(index, cell)`` representatives."""
    dim = objects[0].dim
    if any(O.dim != dim for O in objects):
        raise WorkbenchError("colimit inputs must share a dimension bound", {"dims": [O.dim for O in objects]})
    classes = []
    finds = []
    for k in range(dim + 1):
        uf = UnionFind([(i, x) for i, X in enumerate(objects) for x in X.cells(k)])
        for i, j, f in arrows:
            if f.dom is not objects[i] or f.cod is not objects[j]:
                raise WorkbenchError("arrow endpoints do not match the listed objects", {"arrow": (i, j)})
            for x in objects[i].cells(k):
                uf.union((i, x), (j, f(k, x)))
        rep = {}
        for i, X in enumerate(objects):
            for x in X.cells(k):
                r = uf.find((i, x))
                rep[r] = min(rep.get(r, (i, x)), (i, x), key=_order)
        canon = {(i, x): rep[uf.find((i, x))] for i, X in enumerate(objects) for x in X.cells(k)}
        finds.append(canon)
        classes.append(sorted(set(canon.values()), key=_order))

    def act(k, c, al):
        i, x = c
        return finds[len(al) - 1][(i, objects[i].act(k, x, al))]

    X = SSet.build(dim, classes, act, name=name, check=False)
    legs = [
        SSetMap(objects[i], X, [{x: finds[k][(i, x)] for x in objects[i].cells(k)} for k in range(dim + 1)], check=False)
        for i in range(len(objects))
    ]
    return X, legs


def _order(c):
    return (c[0], repr(c[1]))


def finite_colimit_marked(objects: list[MarkedSSet], arrows: list[tuple[int, int, SSetMap]], name: str = "colim"):
    X, legs = finite_colimit([A.underlying for A in objects], arrows, name)
    marked = {legs[i](1, e) for i, A in enumerate(objects) for e in A.marked} if X.dim else set()
    return MarkedSSet(X, marked), legs


def pushout(f: SSetMap, g: SSetMap, name: str = "pushout"):
    """``B ⊔_A C`` for ``f: A → B``, ``g: A → C``; returns ``(P, leg_B, leg_C)``."""
    if f.dom is not g.dom:
        raise WorkbenchError("pushout legs must share a domain")
    P, legs = finite_colimit([f.dom, f.cod, g.cod], [(0, 1, f), (0, 2, g)], name)
    return P, legs[1], legs[2]
