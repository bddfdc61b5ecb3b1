"""Mapping simplex, relative nerve, the comparison ``ν`` and the colimit presentations."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import WorkbenchError
from ..fincat import Functor
from ..fincat.search import backtrack
from ..verdict import VerdictReport
from .constructions import finite_colimit_marked, product_marked, simplex_on
from .core import MarkedSSet, SSet, SSetMap, epi_mono, identity_map, injective_faces, monotone_maps, sharp
from .nerve import nerve


@dataclass
class ChainDiagram:
    """A functor ``[n] → marked simplicial sets`` from its consecutive maps."""

    values: list[MarkedSSet]
    steps: list[SSetMap]

    def __post_init__(self):
        if len(self.steps) != len(self.values) - 1:
            raise WorkbenchError("need one map per consecutive pair")
        dims = {A.dim for A in self.values}
        if len(dims) != 1:
            raise WorkbenchError("values must share a dimension bound", {"dims": sorted(dims)})
        for i, f in enumerate(self.steps):
            if f.dom is not self.values[i].underlying or f.cod is not self.values[i + 1].underlying:
                raise WorkbenchError(f"step {i} has the wrong endpoints")
        self._maps = {}
        for i, A in enumerate(self.values):
            g = identity_map(A.underlying)
            self._maps[(i, i)] = g
            for j in range(i, self.n):
                g = g.then(self.steps[j])
                self._maps[(i, j + 1)] = g

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def dim(self) -> int:
        return self.values[0].dim

    def map(self, i: int, j: int) -> SSetMap:
        return self._maps[(i, j)]

    def __call__(self, i: int) -> SSet:
        return self.values[i].underlying

    def restrict(self, lo: int) -> "ChainDiagram":
        """``φ`` restricted to ``{lo, …, n}``, reindexed from 0."""
        return ChainDiagram(self.values[lo:], self.steps[lo:])

    @classmethod
    def constant(cls, A: MarkedSSet, n: int) -> "ChainDiagram":
        return cls([A] * (n + 1), [identity_map(A.underlying)] * n)


def nerve_chain(functors: list[Functor], dim: int) -> ChainDiagram:
    """Nerves of a chain of functors, isomorphisms marked."""
    cats = [functors[0].dom] + [F.cod for F in functors] if functors else []
    nerves = [nerve(C, dim) for C in cats]
    values = [
        MarkedSSet(N, [e for e in N.cells(1) if C.is_iso(e[1][0])]) for C, N in zip(cats, nerves)
    ]
    steps = [
        SSetMap.from_function(
            nerves[i], nerves[i + 1],
            lambda k, x, F=F: (tuple(F.obj(o) for o in x[0]), tuple(F.mor(m) for m in x[1])),
        )
        for i, F in enumerate(functors)
    ]
    return ChainDiagram(values, steps)


# -------------------------------------------------------- mapping simplex
def mapping_simplex(phi: ChainDiagram) -> MarkedSSet:
    """``k``-cells ``(σ: [k] → [n], τ ∈ φ(σ(0))_k)``; ``(σ, f)`` is marked when ``f`` is."""
    n, dim = phi.n, phi.dim
    cells = [[(s, t) for s in monotone_maps(k, n) for t in phi(s[0]).cells(k)] for k in range(dim + 1)]

    def act(k, x, al):
        s, t = x
        s2 = tuple(s[v] for v in al)
        return (s2, phi.map(s[0], s2[0])(len(al) - 1, phi(s[0]).act(k, t, al)))

    M = SSet.build(dim, cells, act, name=f"M[{n}]", check=False)
    marked = [(s, f) for s, f in M.cells(1) if f in phi.values[s[0]].marked] if dim else []
    return MarkedSSet(M, marked)


def relative_nerve(phi: ChainDiagram) -> MarkedSSet:
    """``k``-cells ``(σ, (τ_J)_J)`` over nonempty ``J ⊆ [k]``, ``τ_J ∈ φ(σ(max J))``, compatible on faces."""
    n, dim = phi.n, phi.dim
    index: dict = {}
    for i in range(n + 1):
        X = phi(i)
        for j in range(1, dim + 1):
            for x in X.cells(j):
                index.setdefault((i, j, tuple(X.face(j, p, x) for p in range(j + 1))), []).append(x)
    cells = []
    for k in range(dim + 1):
        subsets = injective_faces(k, k + 1)
        pos = {J: t for t, J in enumerate(subsets)}
        level = []
        for s in monotone_maps(k, n):
            def candidates(t, a, s=s, subsets=subsets, pos=pos):
                J = subsets[t]
                top = s[J[-1]]
                if len(J) == 1:
                    return phi(top).cells(0)
                faces = []
                for p in range(len(J)):
                    K = J[:p] + J[p + 1:]
                    faces.append(phi.map(s[K[-1]], top)(len(K) - 1, a[pos[K]]))
                return index.get((top, len(J) - 1, tuple(faces)), [])

            level.extend((s, tuple(a)) for a in backtrack(len(subsets), candidates))
        cells.append(level)
    positions = [{J: t for t, J in enumerate(injective_faces(k, k + 1))} for k in range(dim + 1)]

    def act(k, x, al):
        s, fam = x
        m = len(al) - 1
        out = []
        for J in injective_faces(m, m + 1):
            epi, S = epi_mono(tuple(al[v] for v in J))
            out.append(phi(s[S[-1]]).act(len(S) - 1, fam[positions[k][S]], epi))
        return (tuple(s[v] for v in al), tuple(out))

    N = SSet.build(dim, cells, act, name=f"N[{n}]", check=False)
    marked = [(s, fam) for s, fam in N.cells(1) if fam[-1] in phi.values[s[1]].marked] if dim else []
    return MarkedSSet(N, marked)


def nu(phi: ChainDiagram, M: MarkedSSet | None = None, N: MarkedSSet | None = None) -> SSetMap:
    """``(σ, τ) ↦ (σ, (φ(σ(0) → σ(max J))(τ|_J))_J)``."""
    M = M or mapping_simplex(phi)
    N = N or relative_nerve(phi)

    def f(k, x):
        s, t = x
        X = phi(s[0])
        return (s, tuple(phi.map(s[0], s[J[-1]])(len(J) - 1, X.act(k, t, J)) for J in injective_faces(k, k + 1)))

    return SSetMap.from_function(M.underlying, N.underlying, f)


def fiber_compare(phi: ChainDiagram, i: int) -> VerdictReport:
    """Over vertex ``i``, ``ν`` is the identity of ``φ(i)`` in the canonical labels."""
    M, N = mapping_simplex(phi), relative_nerve(phi)
    v = nu(phi, M, N)
    X = phi(i)
    problems = []
    for k in range(phi.dim + 1):
        const = (i,) * (k + 1)
        Mk = [x for x in M.underlying.cells(k) if x[0] == const]
        Nk = [x for x in N.underlying.cells(k) if x[0] == const]
        if [t for _, t in Mk] != list(X.cells(k)):
            problems.append(("mapping simplex fiber", k))
        if len(Nk) != len(X.cells(k)):
            problems.append(("relative nerve fiber", k))
        if any(v(k, x)[1][-1] != x[1] for x in Mk) or len({v(k, x) for x in Mk}) != len(Nk):
            problems.append(("comparison", k))
    marks = all((v(1, e) in N.marked) == (e in M.marked) for e in M.underlying.cells(1) if e[0] == (i, i)) if phi.dim else True
    ok = not problems and marks
    return VerdictReport("mapping-simplex-fiber", ok, witness=None if ok else {"problems": problems, "markings": marks},
                         details={"vertex": i})


# ---------------------------------------------------- colimit presentations
def _compare(objects, arrows, legs, M: MarkedSSet) -> dict:
    """Compute the colimit, then test the map induced by ``legs`` into ``M``."""
    for i, j, f in arrows:
        for k in range(f.dom.dim + 1):
            for x in f.dom.cells(k):
                if legs[i](k, x) != legs[j](k, f(k, x)):
                    return {"cocone": False}
    P, plegs = finite_colimit_marked(objects, arrows)
    X = P.underlying
    maps = []
    for k in range(X.dim + 1):
        maps.append({c: legs[c[0]](k, c[1]) for c in X.cells(k)})
    phi = SSetMap(X, M.underlying, maps, check=False)
    simplicial = phi.violation() is None
    bij = phi.is_bijective()
    marks = {phi(1, e) for e in P.marked} == set(M.marked) if X.dim else True
    return {"cocone": True, "simplicial": simplicial, "bijective": bij, "markings": marks,
            "cells": list(X.counts())}


def _ok(r: dict) -> bool:
    return all(v for k, v in r.items() if k != "cells")


def _leg(phi, lo, shift=0):
    # (τ, σ) ∈ φ(lo) × Δ^{…} ↦ (σ, φ(lo → σ(0))(τ))
    def f(k, x):
        t, s = x
        return (tuple(v + shift for v in s), phi.map(lo, s[0])(k, t))
    return f


def mapping_simplex_decompositions(phi: ChainDiagram) -> VerdictReport:
    """Pushout square, zigzag colimit and coend over ``Tw([n])^op``, each compared with ``M(φ)``."""
    n = phi.n
    if n < 1:
        raise WorkbenchError("the decompositions need n ≥ 1")
    dim = phi.dim
    M = mapping_simplex(phi)
    Dn = {(a, b): sharp(simplex_on(range(a, b + 1), dim)) for a in range(n + 1) for b in range(a, n + 1)}

    def block(i, a):
        return product_marked(phi.values[i], Dn[(a, n)])

    def incl(src, tgt, f=None):
        return SSetMap.from_function(
            src.underlying, tgt.underlying, lambda k, x: ((f(k, x[0]) if f else x[0]), x[1]), check=False,
        )

    # pushout: φ(0) × Δ^{1..n} → φ(0) × Δⁿ, and → M(φ|_{1..n})
    top, big = block(0, 1), block(0, 0)
    rest_phi = phi.restrict(1)
    rest = mapping_simplex(rest_phi)
    down = SSetMap.from_function(
        top.underlying, rest.underlying,
        lambda k, x: (tuple(v - 1 for v in x[1]), phi.map(0, x[1][0])(k, x[0])), check=False,
    )
    legs = {0: _leg(phi, 0), 1: _leg(phi, 0), 2: lambda k, x: (tuple(v + 1 for v in x[0]), x[1])}
    po = _compare([top, big, rest], [(0, 1, incl(top, big)), (0, 2, down)], legs, M)

    # zigzag: A_i = φ(i) × Δ^{i..n} ← B_i = φ(i) × Δ^{i+1..n} → A_{i+1}
    objs, arrows, zlegs = [], [], {}
    A = [block(i, i) for i in range(n + 1)]
    for i in range(n + 1):
        zlegs[len(objs)] = _leg(phi, i)
        objs.append(A[i])
    for i in range(n):
        B = block(i, i + 1)
        b = len(objs)
        objs.append(B)
        zlegs[b] = _leg(phi, i)
        arrows.append((b, i, incl(B, A[i])))
        arrows.append((b, i + 1, incl(B, A[i + 1], phi.steps[i])))
    zz = _compare(objs, arrows, zlegs, M)

    # coend: (x ≤ y) ↦ φ(x) × N([n]_{y/}) with N([n]_{y/}) = Δ^{y..n}
    pairs = [(x, y) for x in range(n + 1) for y in range(x, n + 1)]
    cobjs = [block(x, y) for x, y in pairs]
    carrows = []
    for s, (x2, y2) in enumerate(pairs):
        for t, (x, y) in enumerate(pairs):
            if (x2, y2) != (x, y) and x2 <= x and y <= y2:
                carrows.append((s, t, incl(cobjs[s], cobjs[t], phi.map(x2, x))))
    clegs = {t: _leg(phi, x) for t, (x, _) in enumerate(pairs)}
    ce = _compare(cobjs, carrows, clegs, M)

    ok = _ok(po) and _ok(zz) and _ok(ce)
    details = {"pushout": po, "zigzag": zz, "coend": ce, "mapping_simplex": list(M.underlying.counts())}
    return VerdictReport("mapping-simplex-decompositions", ok, witness=None if ok else details, details=details)
