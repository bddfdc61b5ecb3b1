"""Nerves, realization, isomorphism search, (co)skeleta and edgewise subdivision."""
from __future__ import annotations

from ..errors import CyclicOneSkeleton, DimensionBoundExceeded
from ..fincat import FinCat
from ..fincat.constructions import UnionFind
from ..fincat.search import backtrack
from .core import DEFAULT_DIM, SSet, SSetMap, epi_mono, injective_faces, subcomplex


# ------------------------------------------------------------------ nerve
def nerve(C: FinCat, dim: int = DEFAULT_DIM) -> SSet:
    """A ``k``-cell is ``(objects, arrows)``: a chain of ``k`` composable arrows."""
    level = [((x,), ()) for x in C.objects]
    cells = [level]
    for _ in range(dim):
        level = [(o + (C.tgt(f),), m + (f,)) for o, m in level for f in C.out_of(o[-1])]
        cells.append(level)

    def act(k, x, al):
        objs, mors = x
        out = []
        for a, b in zip(al, al[1:]):
            f = C.identity(objs[a])
            for t in range(a, b):
                f = C.compose(mors[t], f)
            out.append(f)
        return (tuple(objs[a] for a in al), tuple(out))

    return SSet.build(dim, cells, act, name=f"N{C.name or ''}", check=False)


# -------------------------------------------------------------- realization
def _edge_path(X: SSet, e) -> tuple:
    return () if X.is_degenerate(1, e) else (e,)


def realize(X: SSet) -> FinCat:
    """Free category on the nondegenerate edges modulo ``d₁σ ~ d₀σ∘d₂σ``.

    Morphisms are ``(source, target, path)`` with ``path`` the least
    representative of its class.  The nondegenerate 1-skeleton must be acyclic.
    """
    if X.dim < 1:
        return FinCat(list(X.cells(0)), [((v, v, ()), v, v) for v in X.cells(0)],
                      {v: (v, v, ()) for v in X.cells(0)}, lambda g, f: f, name="C", check=False)
    edges = X.nondegenerate(1)
    src = {e: X.face(1, 1, e) for e in edges}
    tgt = {e: X.face(1, 0, e) for e in edges}
    out: dict = {v: [] for v in X.cells(0)}
    for e in edges:
        out[src[e]].append(e)
    _check_acyclic(X, out, tgt)
    paths = []
    for v in X.cells(0):
        stack = [(v, ())]
        while stack:
            w, p = stack.pop()
            paths.append((v, w, p))
            for e in out[w]:
                stack.append((tgt[e], p + (e,)))
    uf = UnionFind(paths)
    by_path = {(p[0], p[2]): p for p in paths}
    if X.dim >= 2:
        for sigma in X.cells(2):
            left = _edge_path(X, X.face(2, 1, sigma))
            right = _edge_path(X, X.face(2, 2, sigma)) + _edge_path(X, X.face(2, 0, sigma))
            if not left or left == right:
                continue
            n = len(left)
            for v, w, p in paths:
                for i in range(len(p) - n + 1):
                    if p[i:i + n] == left:
                        uf.union((v, w, p), by_path[(v, p[:i] + right + p[i + n:])])
    rep: dict = {}
    for p in paths:
        r = uf.find(p)
        if r not in rep or (len(p[2]), repr(p[2])) < (len(rep[r][2]), repr(rep[r][2])):
            rep[r] = p
    canon = {p: rep[uf.find(p)] for p in paths}
    mors = sorted(set(canon.values()), key=lambda p: (len(p[2]), repr(p)))

    def comp(g, f):
        return canon[by_path[(f[0], f[2] + g[2])]]

    return FinCat(
        list(X.cells(0)), [(m, m[0], m[1]) for m in mors],
        {v: (v, v, ()) for v in X.cells(0)}, comp, name="C" + (X.name or ""), check=False,
    )


def _check_acyclic(X, out, tgt):
    state: dict = {}
    for root in X.cells(0):
        if root in state:
            continue
        stack = [(root, iter(out[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for e in it:
                w = tgt[e]
                if state.get(w) == 1:
                    raise CyclicOneSkeleton("1-skeleton has a directed cycle", {"edge": repr(e)})
                if w not in state:
                    state[w] = 1
                    stack.append((w, iter(out[w])))
                    break
            else:
                state[v] = 2
                stack.pop()


# ------------------------------------------------------------ isomorphisms
def _image(X: SSet, Y: SSet, f: dict, k: int, x):
    level, core, epi = X.normal_form(k, x)
    return Y.act(level, f[(level, core)], epi)


def find_sset_iso(X: SSet, Y: SSet) -> SSetMap | None:
    """Backtracking over nondegenerate cells, each placed right after its faces."""
    if X.dim != Y.dim or X.counts() != Y.counts() or X.nondeg_counts() != Y.nondeg_counts():
        return None
    order: list = []
    seen: set = set()

    def visit(k, x):
        stack = [(k, x, False)]
        while stack:
            k, x, done = stack.pop()
            if (k, x) in seen:
                continue
            if done:
                seen.add((k, x))
                order.append((k, x))
                continue
            stack.append((k, x, True))
            if k:
                for i in reversed(range(k + 1)):
                    lvl, core, _ = X.normal_form(k - 1, X.face(k, i, x))
                    if (lvl, core) not in seen:
                        stack.append((lvl, core, False))

    for k in reversed(range(X.dim + 1)):
        for x in X.nondegenerate(k):
            visit(k, x)
    index: list[dict] = [dict() for _ in range(Y.dim + 1)]
    for k in range(Y.dim + 1):
        for y in Y.nondegenerate(k):
            key = tuple(Y.face(k, i, y) for i in range(k + 1)) if k else ()
            index[k].setdefault(key, []).append(y)

    def current(a, upto):
        return {order[j]: a[j] for j in range(upto)}

    def candidates(i, a):
        k, x = order[i]
        f = current(a, i)
        if k == 0:
            return index[0][()]
        key = tuple(_image(X, Y, f, k - 1, X.face(k, j, x)) for j in range(k + 1))
        return index[k].get(key, [])

    def consistent(i, a):
        k = order[i][0]
        return all(not (order[j][0] == k and a[j] == a[i]) for j in range(i))

    for a in backtrack(len(order), candidates, consistent):
        f = dict(zip(order, a))
        maps = [{x: _image(X, Y, f, k, x) for x in X.cells(k)} for k in range(X.dim + 1)]
        phi = SSetMap(X, Y, maps, check=False)
        if phi.violation() is None and phi.is_bijective():
            return phi
    return None


def is_sset_isomorphic(X: SSet, Y: SSet) -> bool:
    return find_sset_iso(X, Y) is not None


# --------------------------------------------------------- (co)skeleta
def skeleton(X: SSet, k: int) -> SSet:
    """Cells whose nondegenerate core has level at most ``k``."""
    return subcomplex(X, lambda m, x: X.normal_form(m, x)[0] <= k, name=f"sk{k}{X.name}")


def _families(X: SSet, m: int, k: int):
    """Face-compatible families on the ``≤ k``-faces of ``Δᵐ``, in :func:`injective_faces` order.

    The search places each face right after its own faces (ordered by largest
    vertex) so constraints prune early.
    """
    subsets = injective_faces(m, k + 1)
    search = sorted(subsets, key=lambda S: (S[-1], len(S), S))
    pos = {S: i for i, S in enumerate(search)}
    back = [pos[S] for S in subsets]
    index: list[dict] = [dict() for _ in range(k + 1)]
    for j in range(1, min(k, X.dim) + 1):
        for x in X.cells(j):
            index[j].setdefault(tuple(X.face(j, i, x) for i in range(j + 1)), []).append(x)

    faces = [tuple(pos[S[:t] + S[t + 1:]] for t in range(len(S))) if len(S) > 1 else () for S in search]
    vertices = X.cells(0)

    def candidates(i, a):
        f = faces[i]
        if not f:
            return vertices
        return index[len(f) - 1].get(tuple([a[p] for p in f]), ())

    fams = ([a[j] for j in back] for a in backtrack(len(search), candidates))
    return subsets, fams


def coskeleton(X: SSet, k: int, dim: int | None = None) -> SSet:
    """``m``-cells are compatible families on the faces of ``Δᵐ`` of dimension ``≤ k``."""
    if k > X.dim:
        raise DimensionBoundExceeded("coskeleton needs the first k levels", {"k": k, "bound": X.dim})
    dim = X.dim if dim is None else dim
    cells = []
    subsets_at = []
    for m in range(dim + 1):
        subsets, fams = _families(X, m, k)
        subsets_at.append({S: i for i, S in enumerate(subsets)})
        cells.append([tuple(a) for a in fams])

    def act(m, fam, al):
        out = []
        for T in injective_faces(len(al) - 1, k + 1):
            epi, S = epi_mono(tuple(al[t] for t in T))
            out.append(X.act(len(S) - 1, fam[subsets_at[m][S]], epi))
        return tuple(out)

    return SSet.build(dim, cells, act, name=f"cosk{k}{X.name}", check=False)


def coskeleton_unit(X: SSet, k: int, C: SSet | None = None) -> SSetMap:
    C = C or coskeleton(X, k)
    return SSetMap.from_function(
        X, C, lambda m, x: tuple(X.act(m, x, S) for S in injective_faces(m, k + 1)), check=False,
    )


def is_k_coskeletal(X: SSet, k: int) -> bool:
    """Every ``(m > k)``-sphere built from ``≤ k``-cells has exactly one filler, up to ``X.dim``."""
    if k >= X.dim:
        return True
    for m in range(k + 1, X.dim + 1):
        subsets = injective_faces(m, k + 1)
        seen = set()
        for x in X.cells(m):
            fam = tuple(X.act(m, x, S) for S in subsets)
            if fam in seen:
                return False
            seen.add(fam)
        _, fams = _families(X, m, k)
        if sum(1 for _ in fams) != len(seen):
            return False
    return True


# --------------------------------------------------- edgewise subdivision
def epsilon(al: tuple, k: int) -> tuple:
    """``α ⋆ α^op: [2m+1] → [2k+1]`` for ``α: [m] → [k]``."""
    m = len(al) - 1
    return tuple(al) + tuple(2 * k + 1 - al[m - q] for q in range(m + 1))


def edgewise_subdivision(X: SSet, dim: int | None = None) -> SSet:
    """``esd(X)_k = X_{2k+1}``; needs ``X.dim ≥ 2·dim + 1``."""
    top = (X.dim - 1) // 2
    dim = top if dim is None else dim
    if dim < 0 or 2 * dim + 1 > X.dim:
        raise DimensionBoundExceeded(
            "edgewise subdivision consumes levels at rate 2k+1", {"needed": 2 * max(dim, 0) + 1, "bound": X.dim}
        )
    cells = [X.cells(2 * k + 1) for k in range(dim + 1)]
    return SSet.build(dim, cells, lambda k, x, al: X.act(2 * k + 1, x, epsilon(al, k)), name=f"esd{X.name}", check=False)


esd = edgewise_subdivision


def coskeletal_extension(X: SSet, k: int, dim: int) -> SSet:
    """Keep ``X`` up to level ``k`` and fill every higher sphere uniquely.

    Cells above ``k`` are tuples indexed by :func:`injective_faces` ``(m, k+1)``.
    """
    if k > X.dim:
        raise DimensionBoundExceeded("extension needs the first k levels", {"k": k, "bound": X.dim})
    if dim <= k:
        from .core import truncate

        return truncate(X, dim)
    cells = [list(X.cells(m)) for m in range(k + 1)]
    pos = {}
    for m in range(k + 1, dim + 1):
        subsets, fams = _families(X, m, k)
        pos[m] = {S: i for i, S in enumerate(subsets)}
        cells.append([tuple(a) for a in fams])

    def act(m, x, al):
        m2 = len(al) - 1
        if m2 <= k:
            if m <= k:
                return X.act(m, x, al)
            epi, S = epi_mono(al)
            return X.act(len(S) - 1, x[pos[m][S]], epi)
        out = []
        for T in injective_faces(m2, k + 1):
            sub = tuple(al[t] for t in T)
            if m <= k:
                out.append(X.act(m, x, sub))
            else:
                epi, S = epi_mono(sub)
                out.append(X.act(len(S) - 1, x[pos[m][S]], epi))
        return tuple(out)

    return SSet.build(dim, cells, act, name=f"{X.name}+cosk{k}", check=False)
