"""Dimension-bounded finite simplicial sets stored as full levelwise tables.

A cell is addressed by its level ``k`` and an id that is unique within that
level.  Monotone maps ``α: [m] → [k]`` are tuples ``(α(0), …, α(m))``.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable

from ..config import check_cells
from ..errors import DimensionBoundExceeded, SimplicialIdentityError, WorkbenchError

DEFAULT_DIM = 6


def monotone_maps(m: int, k: int) -> list[tuple]:
    """All monotone ``[m] → [k]``."""
    return list(combinations_with_replacement(range(k + 1), m + 1))


def coface(k: int, i: int) -> tuple:
    """``δ_i: [k-1] → [k]`` skipping ``i``."""
    return tuple(v for v in range(k + 1) if v != i)


def codegeneracy(k: int, j: int) -> tuple:
    """``σ_j: [k+1] → [k]`` hitting ``j`` twice."""
    return tuple(v if v <= j else v - 1 for v in range(k + 2))


def compose_monotone(b: tuple, a: tuple) -> tuple:
    """``b∘a``."""
    return tuple(b[v] for v in a)


def epi_mono(alpha: tuple) -> tuple[tuple, tuple]:
    """``α = mono∘epi`` with ``mono`` the inclusion of the image."""
    image = sorted(set(alpha))
    pos = {v: p for p, v in enumerate(image)}
    return tuple(pos[v] for v in alpha), tuple(image)


def require_dim(n: int, bound: int, what: str) -> None:
    if n > bound:
        raise DimensionBoundExceeded(f"{what}: needs dimension {n}, bound is {bound}", {"needed": n, "bound": bound})


class SSet:
    """A simplicial set truncated at ``dim``.

    ``cells[k]`` lists the ids at level ``k``; ``d[k][i]`` and ``s[k][j]`` are
    dicts for the face ``X_k → X_{k-1}`` and degeneracy ``X_k → X_{k+1}``.
    """

    def __init__(self, dim: int, cells, d, s, name: str = "", check: bool = True):
        self.dim = dim
        self._cells = [tuple(c) for c in cells]
        self._sets = [frozenset(c) for c in self._cells]
        self._d = d
        self._s = s
        self.name = name
        for k, c in enumerate(self._cells):
            check_cells(len(c), k, name or "simplicial set")
        self._nf: dict = {}
        if check:
            bad = self.identity_violation()
            if bad is not None:
                raise SimplicialIdentityError(f"simplicial identity {bad[0]} fails", {"identity": bad[0], "cell": repr(bad[1])})

    @classmethod
    def build(cls, dim: int, cells: Iterable[Iterable], act: Callable, name: str = "", check: bool = True) -> "SSet":
        """Tables from ``act(k, x, α)``, which returns the id of ``X(α)(x)``."""
        cells = [tuple(c) for c in cells]
        if len(cells) != dim + 1:
            raise WorkbenchError(f"expected {dim + 1} levels, got {len(cells)}")
        sets = [set(c) for c in cells]
        d: list = [[] for _ in range(dim + 1)]
        s: list = [[] for _ in range(dim + 1)]
        for k in range(dim + 1):
            if k:
                for i in range(k + 1):
                    tab = {x: act(k, x, coface(k, i)) for x in cells[k]}
                    cls._check_into(tab, sets[k - 1], name, k - 1)
                    d[k].append(tab)
            if k < dim:
                for j in range(k + 1):
                    tab = {x: act(k, x, codegeneracy(k, j)) for x in cells[k]}
                    cls._check_into(tab, sets[k + 1], name, k + 1)
                    s[k].append(tab)
        return cls(dim, cells, d, s, name, check)

    @staticmethod
    def _check_into(tab, target, name, level):
        for x, y in tab.items():
            if y not in target:
                raise WorkbenchError(f"{name or 'simplicial set'}: {y!r} is not a cell at level {level}", {"cell": repr(x)})

    # -------------------------------------------------------------- access
    def cells(self, k: int) -> tuple:
        return self._cells[k]

    def has(self, k: int, x) -> bool:
        return 0 <= k <= self.dim and x in self._sets[k]

    def face(self, k: int, i: int, x):
        return self._d[k][i][x]

    def degen(self, k: int, j: int, x):
        return self._s[k][j][x]

    def act(self, k: int, x, alpha: tuple):
        """``X(α)(x)`` for ``α: [m] → [k]``, via ``α = mono∘epi``."""
        m = len(alpha) - 1
        require_dim(m, self.dim, self.name or "act")
        epi, mono = epi_mono(alpha)
        missing = [v for v in range(k + 1) if v not in set(mono)]
        level = k
        for i in reversed(missing):
            x = self._d[level][i][x]
            level -= 1
        return self._apply_epi(level, x, epi)

    def _apply_epi(self, level, x, epi):
        # epi = epi'∘σ_p when epi(p) = epi(p+1); X(epi) = s_p∘X(epi')
        for p in range(len(epi) - 1):
            if epi[p] == epi[p + 1]:
                rest = epi[: p + 1] + epi[p + 2:]
                y = self._apply_epi(level, x, rest)
                return self._s[len(rest) - 1][p][y]
        return x

    def counts(self) -> tuple:
        return tuple(len(c) for c in self._cells)

    def n_cells(self) -> int:
        return sum(self.counts())

    def is_degenerate(self, k: int, x) -> bool:
        return any(self._s[k - 1][j][self._d[k][j][x]] == x for j in range(k))

    def nondegenerate(self, k: int) -> list:
        return [x for x in self._cells[k] if k == 0 or not self.is_degenerate(k, x)]

    def nondeg_counts(self) -> tuple:
        return tuple(len(self.nondegenerate(k)) for k in range(self.dim + 1))

    def normal_form(self, k: int, x) -> tuple:
        """``(level, core, epi)`` with ``x = X(epi)(core)`` and ``core`` nondegenerate."""
        key = (k, x)
        if key not in self._nf:
            word = []
            level, y = k, x
            while level:
                for j in range(level):
                    z = self._d[level][j][y]
                    if self._s[level - 1][j][z] == y:
                        word.append(j)
                        y, level = z, level - 1
                        break
                else:
                    break
            e = tuple(range(k + 1))
            for j in word:
                e = tuple(v if v <= j else v - 1 for v in e)
            self._nf[key] = (level, y, e)
        return self._nf[key]

    def vertices(self, k: int, x) -> tuple:
        return tuple(self.act(k, x, (v,)) for v in range(k + 1))

    # ------------------------------------------------------------- checks
    def identity_violation(self):
        d, s, n = self._d, self._s, self.dim
        for k in range(2, n + 1):
            for x in self._cells[k]:
                for j in range(k + 1):
                    for i in range(j):
                        if d[k - 1][i][d[k][j][x]] != d[k - 1][j - 1][d[k][i][x]]:
                            return ("d_i d_j = d_{j-1} d_i", x)
        for k in range(n):
            for x in self._cells[k]:
                for j in range(k + 1):
                    y = s[k][j][x]
                    if d[k + 1][j][y] != x or d[k + 1][j + 1][y] != x:
                        return ("d_j s_j = d_{j+1} s_j = id", x)
                    for i in range(k + 2):
                        if i < j and d[k + 1][i][y] != s[k - 1][j - 1][d[k][i][x]]:
                            return ("d_i s_j = s_{j-1} d_i", x)
                        if i > j + 1 and d[k + 1][i][y] != s[k - 1][j][d[k][i - 1][x]]:
                            return ("d_i s_j = s_j d_{i-1}", x)
                    if k + 1 < n:
                        for i in range(j + 1):
                            if s[k + 1][i][y] != s[k + 1][j + 1][s[k][i][x]]:
                                return ("s_i s_j = s_{j+1} s_i", x)
        return None

    def validate(self) -> None:
        bad = self.identity_violation()
        if bad is not None:
            raise SimplicialIdentityError(f"simplicial identity {bad[0]} fails", {"identity": bad[0], "cell": repr(bad[1])})

    def __repr__(self):
        return f"SSet({self.name or '?'}, nondeg={self.nondeg_counts()})"

    def __eq__(self, other):
        return (
            isinstance(other, SSet)
            and self.dim == other.dim
            and self._sets == other._sets
            and self._d == other._d
            and self._s == other._s
        )

    def __hash__(self):
        return hash((self.dim, tuple(self._sets)))


class SSetMap:
    """Levelwise maps ``f[k]: X_k → Y_k``, checked against faces and degeneracies."""

    def __init__(self, dom: SSet, cod: SSet, maps, check: bool = True):
        if cod.dim < dom.dim:
            raise DimensionBoundExceeded("codomain is truncated below the domain", {"dom": dom.dim, "cod": cod.dim})
        self.dom, self.cod = dom, cod
        self._f = [dict(m) for m in maps]
        if check:
            bad = self.violation()
            if bad is not None:
                raise SimplicialIdentityError(f"map is not simplicial: {bad[0]}", {"cell": repr(bad[1]), "level": bad[2]})

    @classmethod
    def from_function(cls, dom: SSet, cod: SSet, f: Callable, check: bool = True) -> "SSetMap":
        return cls(dom, cod, [{x: f(k, x) for x in dom.cells(k)} for k in range(dom.dim + 1)], check)

    def __call__(self, k: int, x):
        return self._f[k][x]

    def violation(self):
        X, Y = self.dom, self.cod
        for k in range(X.dim + 1):
            f = self._f[k]
            for x in X.cells(k):
                if not Y.has(k, f.get(x)):
                    return ("not a cell", x, k)
                if k:
                    for i in range(k + 1):
                        if self._f[k - 1][X.face(k, i, x)] != Y.face(k, i, f[x]):
                            return (f"d_{i}", x, k)
                if k < X.dim:
                    for j in range(k + 1):
                        if self._f[k + 1][X.degen(k, j, x)] != Y.degen(k, j, f[x]):
                            return (f"s_{j}", x, k)
        return None

    def is_injective(self) -> bool:
        return all(len(set(m.values())) == len(m) for m in self._f)

    def is_bijective(self) -> bool:
        return self.is_injective() and all(
            len(self._f[k]) == len(self.cod.cells(k)) for k in range(self.dom.dim + 1)
        ) and self.dom.dim == self.cod.dim

    def then(self, g: "SSetMap") -> "SSetMap":
        return SSetMap(self.dom, g.cod, [{x: g._f[k][y] for x, y in m.items()} for k, m in enumerate(self._f)], check=False)

    @property
    def tables(self) -> list[dict]:
        return self._f


def identity_map(X: SSet) -> SSetMap:
    return SSetMap(X, X, [{x: x for x in X.cells(k)} for k in range(X.dim + 1)], check=False)


class MarkedSSet:
    """A simplicial set with a set of marked edges; degenerate edges are always marked."""

    def __init__(self, underlying: SSet, marked: Iterable = ()):
        X = underlying
        marked = frozenset(marked)
        if X.dim < 1:
            self.underlying, self.marked = X, frozenset()
            return
        bad = [e for e in marked if not X.has(1, e)]
        if bad:
            raise WorkbenchError("marked edges must be 1-cells", {"edge": repr(bad[0])})
        self.underlying = X
        self.marked = marked | frozenset(X.degen(0, 0, v) for v in X.cells(0))

    @property
    def dim(self) -> int:
        return self.underlying.dim

    def is_marked(self, e) -> bool:
        return e in self.marked

    def __repr__(self):
        return f"Marked({self.underlying!r}, {len(self.marked)} marked)"


def flat(X: SSet) -> MarkedSSet:
    return MarkedSSet(X)


def sharp(X: SSet) -> MarkedSSet:
    return MarkedSSet(X, X.cells(1) if X.dim >= 1 else ())


def preserves_marking(f: SSetMap, A: MarkedSSet, B: MarkedSSet) -> bool:
    return all(f(1, e) in B.marked for e in A.marked)


def subcomplex(X: SSet, keep: Callable, name: str = "") -> SSet:
    """Cells with ``keep(k, x)``; the predicate must be closed under faces and degeneracies."""
    cells = [[x for x in X.cells(k) if keep(k, x)] for k in range(X.dim + 1)]
    sets = [set(c) for c in cells]
    d = [[{x: X.face(k, i, x) for x in cells[k]} for i in range(k + 1)] if k else [] for k in range(X.dim + 1)]
    s = [[{x: X.degen(k, j, x) for x in cells[k]} for j in range(k + 1)] if k < X.dim else [] for k in range(X.dim + 1)]
    for k in range(X.dim + 1):
        for tabs in (d[k], s[k]):
            for tab in tabs:
                for y in tab.values():
                    lvl = k - 1 if tabs is d[k] else k + 1
                    if y not in sets[lvl]:
                        raise WorkbenchError("subcomplex predicate is not closed", {"cell": repr(y)})
    return SSet(X.dim, cells, d, s, name or X.name, check=False)


def inclusion(A: SSet, X: SSet) -> SSetMap:
    return SSetMap(A, X, [{x: x for x in A.cells(k)} for k in range(A.dim + 1)])


def truncate(X: SSet, dim: int) -> SSet:
    """Forget levels above ``dim``."""
    require_dim(dim, X.dim, "truncate")
    d = [X._d[k] for k in range(dim + 1)]
    s = [X._s[k] if k < dim else [] for k in range(dim + 1)]
    return SSet(dim, X._cells[: dim + 1], d, s, X.name, check=False)


def injective_faces(m: int, max_size: int) -> list[tuple]:
    """Nonempty subsets of ``[m]`` with at most ``max_size`` elements, by size."""
    return [S for r in range(1, min(max_size, m + 1) + 1) for S in combinations(range(m + 1), r)]
