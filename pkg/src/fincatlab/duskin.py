"""Strict 2-categories, normal oplax functors and the Duskin nerve."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct
from typing import Callable

from .errors import (
    CoherenceViolation,
    DomainMismatch,
    EnrichedAssocViolation,
    NotAFibration,
    NotRelative,
    WorkbenchError,
)
from .fincat import FinCat, Functor, poset_category
from .groth.grothendieck import (
    FibCat,
    PseudofunctorToCat,
    canonical_cleavage,
    fiber,
    fibration_witness,
    is_cartesian_morphism,
    straighten,
)
from .sset import SSet, SSetMap, coskeletal_extension, find_sset_iso, injective_faces, nerve, product, simplex
from .sset.nerve import _families
from .verdict import VerdictReport


# ------------------------------------------------------------ 2-categories
class TwoCat:
    """A strict 2-category: hom categories, horizontal composition, units.

    1-cells and 2-cells must have globally unique ids.
    """

    def __init__(self, objects, homs: dict, units: dict, comp1: Callable, comp2: Callable,
                 name: str = "", check: bool = True):
        self.objects = tuple(objects)
        self.name = name
        self._homs = {}
        self._one: dict = {}
        self._two: dict = {}
        for x in self.objects:
            for y in self.objects:
                H = homs.get((x, y)) or FinCat([], [], {}, {}, check=False)
                self._homs[(x, y)] = H
                for f in H.objects:
                    if f in self._one:
                        raise WorkbenchError(f"1-cell id {f!r} is used twice")
                    self._one[f] = (x, y)
                for a in H.morphisms:
                    if a in self._two:
                        raise WorkbenchError(f"2-cell id {a!r} is used twice")
                    self._two[a] = (x, y)
        self.units = dict(units)
        self._c1, self._c2 = comp1, comp2
        if check:
            bad = self.law_violation()
            if bad is not None:
                raise EnrichedAssocViolation(bad[0], bad[1])

    # access
    def hom(self, x, y) -> FinCat:
        return self._homs[(x, y)]

    def ends(self, f) -> tuple:
        return self._one[f]

    def cell_hom(self, a) -> FinCat:
        return self._homs[self._two[a]]

    def comp(self, g, f):
        return self._c1(g, f)

    def hcomp(self, b, a):
        return self._c2(b, a)

    def vcomp(self, b, a):
        return self.cell_hom(a).compose(b, a)

    def unit(self, x):
        return self.units[x]

    def id2(self, f):
        return self._homs[self._one[f]].identity(f)

    def src2(self, a):
        return self.cell_hom(a).src(a)

    def tgt2(self, a):
        return self.cell_hom(a).tgt(a)

    def one_cells(self):
        return list(self._one)

    def two_cells(self):
        return list(self._two)

    def is_21(self) -> bool:
        return all(H.inverse(a) is not None for H in self._homs.values() for a in H.morphisms)

    def is_locally_thin(self) -> bool:
        return all(len(H.hom(a, b)) <= 1 for H in self._homs.values() for a in H.objects for b in H.objects)

    def is_locally_discrete(self) -> bool:
        return all(H.is_identity(a) for H in self._homs.values() for a in H.morphisms)

    def law_violation(self):
        ob = self.objects
        for x in ob:
            u = self.units.get(x)
            if u not in self._one or self._one[u] != (x, x):
                return ("unit 1-cell missing", {"object": repr(x)})
        for (x, y), H in self._homs.items():
            for f in H.objects:
                if self.comp(f, self.unit(x)) != f or self.comp(self.unit(y), f) != f:
                    return ("unit law for 1-cells", {"cell": repr(f)})
            for a in H.morphisms:
                if self.hcomp(a, self.id2(self.unit(x))) != a or self.hcomp(self.id2(self.unit(y)), a) != a:
                    return ("unit law for 2-cells", {"cell": repr(a)})
        for x, y, z in iproduct(ob, repeat=3):
            H1, H2, H3 = self.hom(x, y), self.hom(y, z), self.hom(x, z)
            for f in H1.objects:
                for g in H2.objects:
                    if self._one.get(self.comp(g, f)) != (x, z):
                        return ("composite 1-cell has the wrong ends", {"pair": repr((f, g))})
                    if self.hcomp(self.id2(g), self.id2(f)) != self.id2(self.comp(g, f)):
                        return ("horizontal composite of identities", {"pair": repr((f, g))})
            for a in H1.morphisms:
                for b in H2.morphisms:
                    c = self.hcomp(b, a)
                    if not H3.has_morphism(c) or H3.src(c) != self.comp(H2.src(b), H1.src(a)) \
                            or H3.tgt(c) != self.comp(H2.tgt(b), H1.tgt(a)):
                        return ("horizontal composite has the wrong boundary", {"pair": repr((a, b))})
            for a, a2 in _composable(H1):
                for b, b2 in _composable(H2):
                    if self.hcomp(H2.compose(b2, b), H1.compose(a2, a)) != H3.compose(self.hcomp(b2, a2), self.hcomp(b, a)):
                        return ("interchange", {"cells": repr((a, a2, b, b2))})
        for x, y, z, w in iproduct(ob, repeat=4):
            for a in self.hom(x, y).morphisms:
                for b in self.hom(y, z).morphisms:
                    for c in self.hom(z, w).morphisms:
                        if self.hcomp(c, self.hcomp(b, a)) != self.hcomp(self.hcomp(c, b), a):
                            return ("associativity", {"cells": repr((a, b, c))})
            for f in self.hom(x, y).objects:
                for g in self.hom(y, z).objects:
                    for h in self.hom(z, w).objects:
                        if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f):
                            return ("associativity of 1-cells", {"cells": repr((f, g, h))})
        return None

    def __repr__(self):
        return f"TwoCat({self.name or '?'}, {len(self.objects)} objects, {len(self._one)} 1-cells, {len(self._two)} 2-cells)"


def _composable(H: FinCat):
    return [(a, a2) for a in H.morphisms for a2 in H.out_of(H.tgt(a))]


def congruence_two_cat(C: FinCat, pi: Functor | None = None, n: int = 1, name: str = "") -> TwoCat:
    """1-cells are arrows of ``C``; 2-cells ``(f, g, k): f ⇒ g`` whenever ``π(f) = π(g)``, ``k ∈ Z/n``.

    ``π = id`` and ``n = 1`` give ``C`` as a locally discrete 2-category;
    ``C = [0]`` gives the delooping of ``Z/n``.
    """
    def same(f, g):
        if C.src(f) != C.src(g) or C.tgt(f) != C.tgt(g):
            return False
        return f == g if pi is None else pi.mor(f) == pi.mor(g)

    homs = {}
    for x in C.objects:
        for y in C.objects:
            fs = list(C.hom(x, y))
            cells = [((f, g, k), f, g) for f in fs for g in fs if same(f, g) for k in range(n)]
            if not fs:
                continue
            homs[(x, y)] = FinCat(
                fs, cells, {f: (f, f, 0) for f in fs},
                lambda b, a: (a[0], b[1], (a[2] + b[2]) % n), name=f"hom({x!r},{y!r})", check=False,
            )
    return TwoCat(
        C.objects, homs, {x: C.identity(x) for x in C.objects}, C.compose,
        lambda b, a: (C.compose(b[0], a[0]), C.compose(b[1], a[1]), (a[2] + b[2]) % n),
        name=name or f"2{C.name or ''}/{n}",
    )


def delooping(n: int) -> TwoCat:
    """One object, one 1-cell, 2-cells ``Z/n``."""
    from .fincat import ordinal

    return congruence_two_cat(ordinal(0), None, n, name=f"BBZ/{n}")


def walking_two_iso() -> TwoCat:
    """Two parallel 1-cells ``f, g: 0 → 1`` and inverse 2-cells between them."""
    C = FinCat(
        [0, 1], [("id0", 0, 0), ("id1", 1, 1), ("f", 0, 1), ("g", 0, 1)],
        {0: "id0", 1: "id1"},
        lambda b, a: a if b in ("id0", "id1") else b, name="⇉", check=False,
    )
    from .fincat import ordinal

    I1 = ordinal(1)
    pi = Functor(C, I1, {0: 0, 1: 1}, {"id0": (0, 0), "id1": (1, 1), "f": (0, 1), "g": (0, 1)})
    return congruence_two_cat(C, pi, 1, name="walking 2-iso")


# ---------------------------------------------------------- oplax functors
@dataclass
class NormalOplax:
    """``F`` on objects, 1-cells, 2-cells, with ``η[(f, g)]: F(g∘f) ⇒ F(g)∘F(f)``."""

    dom: TwoCat
    cod: TwoCat
    obj: dict
    one: dict
    two: dict
    eta: dict
    pseudo: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> "NormalOplax":
        bad = self.violation()
        if bad is not None:
            raise CoherenceViolation(bad[0], _LAWS[bad[0]], bad[1])
        return self

    def violation(self):
        B, D = self.dom, self.cod
        F1, F2, eta = self.one, self.two, self.eta
        for f in B.one_cells():
            x, y = B.ends(f)
            if D.ends(F1[f]) != (self.obj[x], self.obj[y]):
                return ("b", {"cell": repr(f)})
        for x in B.objects:
            if F1[B.unit(x)] != D.unit(self.obj[x]):
                return ("i", {"object": repr(x)})
        for a in B.two_cells():
            if D.src2(F2[a]) != F1[B.src2(a)] or D.tgt2(F2[a]) != F1[B.tgt2(a)]:
                return ("c", {"cell": repr(a)})
        for f in B.one_cells():
            if F2[B.id2(f)] != D.id2(F1[f]):
                return ("ii", {"cell": repr(f)})
        for a in B.two_cells():
            H = B.cell_hom(a)
            for b in H.out_of(H.tgt(a)):
                if F2[H.compose(b, a)] != D.vcomp(F2[b], F2[a]):
                    return ("iii", {"cells": repr((a, b))})
        pairs = _pairs(B)
        for f, g in pairs:
            e = eta[(f, g)]
            if D.src2(e) != F1[B.comp(g, f)] or D.tgt2(e) != D.comp(F1[g], F1[f]):
                return ("d", {"pair": repr((f, g))})
        for f in B.one_cells():
            x, y = B.ends(f)
            if eta[(B.unit(x), f)] != D.id2(F1[f]) or eta[(f, B.unit(y))] != D.id2(F1[f]):
                return ("iv", {"cell": repr(f)})
        for f, g in pairs:
            Hf, Hg = B.hom(*B.ends(f)), B.hom(*B.ends(g))
            for a in Hf.out_of(f):
                for b in Hg.out_of(g):
                    f2, g2 = Hf.tgt(a), Hg.tgt(b)
                    left = D.vcomp(D.hcomp(F2[b], F2[a]), eta[(f, g)])
                    right = D.vcomp(eta[(f2, g2)], F2[B.hcomp(b, a)])
                    if left != right:
                        return ("v", {"cells": repr((a, b))})
        for f, g in pairs:
            for h in _after(B, g):
                gf, hg = B.comp(g, f), B.comp(h, g)
                left = D.vcomp(D.hcomp(eta[(g, h)], D.id2(F1[f])), eta[(f, hg)])
                right = D.vcomp(D.hcomp(D.id2(F1[h]), eta[(f, g)]), eta[(gf, h)])
                if left != right:
                    return ("vi", {"triple": repr((f, g, h))})
        if self.pseudo:
            for (f, g), e in eta.items():
                if D.cell_hom(e).inverse(e) is None:
                    return ("pseudo", {"pair": repr((f, g))})
        return None


_LAWS = {
    "b": "a 1-cell lands between the wrong objects",
    "c": "a 2-cell lands between the wrong 1-cells",
    "d": "η has the wrong source or target",
    "i": "units are not sent to units",
    "ii": "identity 2-cells are not preserved",
    "iii": "vertical composition is not preserved",
    "iv": "η at a unit is not the identity",
    "v": "η is not natural in the pair",
    "vi": "η fails the cocycle condition",
    "pseudo": "η is not invertible",
}


def _after(B: TwoCat, g):
    y = B.ends(g)[1]
    return [h for z in B.objects for h in B.hom(y, z).objects]


def _pairs(B: TwoCat):
    return [(f, g) for f in B.one_cells() for g in _after(B, f)]


def strict_functor(B: TwoCat, D: TwoCat, obj: dict, one: dict, two: dict) -> NormalOplax:
    eta = {(f, g): D.id2(one[B.comp(g, f)]) for f, g in _pairs(B)}
    return NormalOplax(B, D, obj, one, two, eta)


def identity_oplax(B: TwoCat) -> NormalOplax:
    return strict_functor(B, B, {x: x for x in B.objects}, {f: f for f in B.one_cells()}, {a: a for a in B.two_cells()})


def validate_two_cat(raw) -> TwoCat:
    if isinstance(raw, TwoCat):
        bad = raw.law_violation()
        if bad is not None:
            raise EnrichedAssocViolation(bad[0], bad[1])
        return raw
    from .serialize import two_cat_from_json

    return two_cat_from_json(raw)


def validate_oplax(raw) -> NormalOplax:
    return raw.validate()


# ------------------------------------------------------------- Duskin nerve
def _pairs_of(k):
    return list(combinations(range(k + 1), 2))


def _triples_of(k):
    return list(combinations(range(k + 1), 3))


class _Cell:
    """Read ``f_ij`` and ``φ_ijl`` of a low-dimensional cell, with identities on repeats."""

    def __init__(self, B: TwoCat, cell):
        self.B = B
        self.objs, fs, phis = cell
        k = len(self.objs) - 1
        self.f = dict(zip(_pairs_of(k), fs))
        self.p = dict(zip(_triples_of(k), phis))

    def one(self, i, j):
        return self.B.unit(self.objs[i]) if i == j else self.f[(i, j)]

    def two(self, i, j, l):
        if i == j or j == l:
            return self.B.id2(self.one(i, l))
        return self.p[(i, j, l)]


def _restrict(B, cell, al):
    c = _Cell(B, cell)
    m = len(al) - 1
    return (
        tuple(c.objs[v] for v in al),
        tuple(c.one(al[a], al[b]) for a, b in _pairs_of(m)),
        tuple(c.two(al[a], al[b], al[e]) for a, b, e in _triples_of(m)),
    )


def _square_ok(B: TwoCat, f01, f23, p012, p013, p023, p123) -> bool:
    return B.vcomp(B.hcomp(p123, B.id2(f01)), p013) == B.vcomp(B.hcomp(B.id2(f23), p012), p023)


def _low_cells(B: TwoCat, top: int) -> list[list]:
    ob = B.objects
    levels = [[((x,), (), ()) for x in ob]]
    if top >= 1:
        levels.append([((x, y), (f,), ()) for x in ob for y in ob for f in B.hom(x, y).objects])
    two = []
    if top >= 2:
        for x0, x1, x2 in iproduct(ob, repeat=3):
            H = B.hom(x0, x2)
            for f01 in B.hom(x0, x1).objects:
                for f12 in B.hom(x1, x2).objects:
                    for phi in H.into(B.comp(f12, f01)):
                        two.append(((x0, x1, x2), (f01, H.src(phi), f12), (phi,)))
        levels.append(two)
    if top >= 3:
        three = []
        for t012 in two:
            (x0, x1, x2), (f01, f02, f12), (p012,) = t012
            for t123 in [t for t in two if t[0][0] == x1 and t[1][0] == f12]:
                _, (_, f13, f23), (p123,) = t123
                x3 = t123[0][2]
                H = B.hom(x0, x3)
                for p023 in H.into(B.comp(f23, f02)):
                    f03 = H.src(p023)
                    for p013 in H.hom(f03, B.comp(f13, f01)):
                        if _square_ok(B, f01, f23, p012, p013, p023, p123):
                            three.append(((x0, x1, x2, x3), (f01, f02, f03, f12, f13, f23), (p012, p013, p023, p123)))
        levels.append(three)
    return levels


def duskin_nerve(B: TwoCat, dim: int = 4) -> SSet:
    """Levels up to 3 from objects, 1-cells, 2-cells ``φ: f₀₂ ⇒ f₁₂∘f₀₁`` and commuting squares.

    A cell at level ``≤ 3`` is ``(objects, (f_ij), (φ_ijl))`` with pairs and
    triples in lexicographic order.  Higher levels fill spheres uniquely.
    """
    low = _low_cells(B, min(dim, 3))
    X = SSet.build(min(dim, 3), low, lambda k, x, al: _restrict(B, x, al), name=f"N2{B.name}", check=False)
    return X if dim <= 3 else coskeletal_extension(X, 3, dim)


def from_category_cell(C: FinCat, x) -> tuple:
    """The Duskin label of a nerve cell of ``C`` viewed as a locally discrete 2-category."""
    objs, mors = x
    k = len(objs) - 1

    def arrow(i, j):
        f = C.identity(objs[i])
        for t in range(i, j):
            f = C.compose(mors[t], f)
        return f

    return (objs, tuple(arrow(i, j) for i, j in _pairs_of(k)),
            tuple((arrow(i, l), arrow(i, l), 0) for i, j, l in _triples_of(k)))


def nerve_agreement(C: FinCat, dim: int = 4) -> VerdictReport:
    """The Duskin nerve of a locally discrete 2-category is the nerve."""
    N = nerve(C, dim)
    D = duskin_nerve(congruence_two_cat(C), dim)
    ok = True
    for k in range(min(dim, 3) + 1):
        if sorted(map(repr, (from_category_cell(C, x) for x in N.cells(k)))) != sorted(map(repr, D.cells(k))):
            ok = False
    ok = ok and find_sset_iso(N, D) is not None
    return VerdictReport("duskin-nerve-of-category", ok, details={"counts": list(D.counts())})


# ----------------------------------------------------------- coherent nerve
def hom_poset(n: int, i: int, j: int) -> FinCat:
    """Subsets of ``{i, …, j}`` containing ``i`` and ``j``, ordered by inclusion."""
    if not 0 <= i <= j <= n:
        raise WorkbenchError(f"need 0 ≤ i ≤ j ≤ n, got {(n, i, j)}")
    inner = list(range(i + 1, j))
    subsets = [tuple(sorted({i, j} | set(c))) for r in range(len(inner) + 1) for c in combinations(inner, r)]
    return poset_category(subsets, lambda a, b: set(a) <= set(b), name=f"P{i},{j}")


def cube_check(n: int, i: int, j: int, dim: int = 3) -> VerdictReport:
    P = hom_poset(n, i, j)
    d = max(j - i - 1, 0)
    cube = product(*([simplex(1, dim)] * d)) if d else simplex(0, dim)
    ok = find_sset_iso(nerve(P, dim), cube) is not None
    return VerdictReport("coherent-hom-cube", ok, details={"elements": P.n_objects, "cube_dim": d})


def _subsets(i, l):
    inner = list(range(i + 1, l))
    return [tuple(sorted({i, l} | set(c))) for r in range(len(inner) + 1) for c in combinations(inner, r)]


def _split(S, j):
    return tuple(v for v in S if v <= j), tuple(v for v in S if v >= j)


def _coherent_plan(k: int) -> list:
    """Per pair ``i < l`` (shortest first): which cells of ``P_{i,l}`` are forced by composition."""
    plan = []
    for i, l in sorted(_pairs_of(k), key=lambda p: (p[1] - p[0], p)):
        subs = _subsets(i, l)
        S0 = (i, l)
        objects = [(S, [(j,) + _split(S, j) for j in S[1:-1]]) for S in subs if S != S0]
        incl = [(S, T) for S in subs for T in subs if S != T and set(S) <= set(T)]
        forced = [
            (S, T, [(j, _split(S, j), _split(T, j)) for j in S[1:-1]]) for S, T in incl if len(S) > 2
        ]
        minimal = [T for T in subs if len(T) == 3]
        derived = [(T, [U for U in minimal if set(U) <= set(T)]) for T in subs if len(T) > 3]
        chains = [(S, T, U) for S, T in incl for T2, U in incl if T2 == T]
        plan.append(((i, l), objects, incl, forced, minimal, derived, chains))
    return plan


def coherent_simplices(B: TwoCat, k: int):
    """Simplicial functors ``𝔠(Δᵏ) → N_*B``, enumerated directly.

    Yields ``(objects, O, M)``: ``O[(i, l, S)]`` is the 1-cell at ``S ∈ P_{i,l}``
    and ``M[(i, l, S, T)]`` the 2-cell at ``S ⊊ T``.  Compatibility with the
    composition of ``𝔠(Δᵏ)`` and functoriality on every ``P_{i,l}`` are checked.
    """
    plan = _coherent_plan(k)

    def fill(idx, objs, O, M):
        if idx == len(plan):
            yield dict(O), dict(M)
            return
        (i, l), objects, incl, forced, minimal, derived, chains = plan[idx]
        H = B.hom(objs[i], objs[l])

        def one(a, b, S):
            return B.unit(objs[a]) if a == b else O[(a, b, S)]

        def two(a, b, S, T):
            return B.id2(one(a, b, S)) if S == T else M[(a, b, S, T)]

        # objects of P_{i,l} other than {i, l} are composites
        O2 = dict(O)
        for S, splits in objects:
            vals = {B.comp(one(j, l, Sb), one(i, j, Sa)) for j, Sa, Sb in splits}
            if len(vals) != 1:
                return
            O2[(i, l, S)] = vals.pop()
        M1 = dict(M)
        for S, T, splits in forced:
            vals = {B.hcomp(two(j, l, Sb, Tb), two(i, j, Sa, Ta)) for j, (Sa, Sb), (Ta, Tb) in splits}
            if len(vals) != 1:
                return
            M1[(i, l, S, T)] = vals.pop()
        S0 = (i, l)
        for f in H.objects:
            O3 = dict(O2)
            O3[(i, l, S0)] = f
            choices = [H.hom(f, O3[(i, l, U)]) for U in minimal]
            for pick in iproduct(*choices):
                M2 = dict(M1)
                for U, c in zip(minimal, pick):
                    M2[(i, l, S0, U)] = c
                ok = True
                for T, Us in derived:
                    vals = {H.compose(M2[(i, l, U, T)], M2[(i, l, S0, U)]) for U in Us}
                    if len(vals) != 1:
                        ok = False
                        break
                    M2[(i, l, S0, T)] = vals.pop()
                if ok and _functorial(H, O3, M2, i, l, incl, chains):
                    yield from fill(idx + 1, objs, O3, M2)

    for objs in iproduct(B.objects, repeat=k + 1):
        yield from ((objs, O, M) for O, M in fill(0, objs, {}, {}))


def _functorial(H: FinCat, O, M, i, l, incl, chains) -> bool:
    for S, T in incl:
        c = M[(i, l, S, T)]
        if not H.has_morphism(c) or H.src(c) != O[(i, l, S)] or H.tgt(c) != O[(i, l, T)]:
            return False
    return all(H.compose(M[(i, l, T, U)], M[(i, l, S, T)]) == M[(i, l, S, U)] for S, T, U in chains)


def coherent_to_cell(B: TwoCat, simplex_data, S: tuple) -> tuple:
    """Restrict a coherent simplex to the face ``S`` and read off ``(x, f, φ)``."""
    objs, O, M = simplex_data

    def one(i, l):
        return O[(i, l, (i, l))]

    return (
        tuple(objs[v] for v in S),
        tuple(one(S[a], S[b]) for a, b in _pairs_of(len(S) - 1)),
        tuple(M[(S[a], S[e], (S[a], S[e]), (S[a], S[b], S[e]))] for a, b, e in _triples_of(len(S) - 1)),
    )


def _coherent_labels(B: TwoCat, k: int) -> list:
    out = []
    for data in coherent_simplices(B, k):
        if k <= 3:
            out.append(coherent_to_cell(B, data, tuple(range(k + 1))))
        else:
            out.append(tuple(coherent_to_cell(B, data, S) for S in injective_faces(k, 4)))
    return out


def coherent_nerve_agreement(B: TwoCat, k_max: int = 3) -> VerdictReport:
    """Simplicial functors ``𝔠(Δᵏ) → N_*B`` against the Duskin nerve, level by level."""
    if k_max > 4:
        raise WorkbenchError("coherent nerve comparison is limited to k ≤ 4")
    N = duskin_nerve(B, max(k_max, 1))
    counts, ok = [], True
    for k in range(k_max + 1):
        labels = _coherent_labels(B, k)
        mine = list(N.cells(k))
        same = len(labels) == len(set(labels)) == len(mine) and set(labels) == set(mine)
        counts.append((len(labels), len(mine)))
        ok = ok and same
    return VerdictReport("coherent-nerve-agreement", ok, witness=None if ok else {"counts": counts},
                         details={"counts": counts})


def check_3_coskeletal(B: TwoCat, top: int = 5) -> VerdictReport:
    """Every ``∂Δᵐ`` sphere (``4 ≤ m ≤ top``) in the 3-truncated nerve has exactly one coherent filler."""
    X3 = duskin_nerve(B, 3)
    report = {}
    ok = True
    for m in range(4, top + 1):
        subsets, fams = _families(X3, m, 3)
        spheres = {tuple(a): 0 for a in fams}
        for data in coherent_simplices(B, m):
            key = tuple(coherent_to_cell(B, data, S) for S in subsets)
            if key not in spheres:
                ok = False
                report.setdefault("stray", repr(key)[:200])
                continue
            spheres[key] += 1
        fill_counts = sorted(set(spheres.values()))
        report[m] = {"spheres": len(spheres), "filler_counts": fill_counts}
        ok = ok and fill_counts == [1]
    return VerdictReport("duskin-3-coskeletal", ok, witness=None if ok else report, details=report)


def is_two_coskeletal(B: TwoCat, dim: int = 4) -> bool:
    from .sset import is_k_coskeletal

    return is_k_coskeletal(duskin_nerve(B, dim), 2)


# ------------------------------------------------- the simplicial dictionary
def _map_cell(F: NormalOplax, cell) -> tuple:
    B, D = F.dom, F.cod
    objs, fs, phis = cell
    c = _Cell(B, cell)
    k = len(objs) - 1
    new = []
    for (i, j, l), p in zip(_triples_of(k), phis):
        new.append(D.vcomp(F.eta[(c.one(i, j), c.one(j, l))], F.two[p]))
    return (tuple(F.obj[x] for x in objs), tuple(F.one[f] for f in fs), tuple(new))


def duskin_encode(F: NormalOplax, dim: int = 4, dom: SSet | None = None, cod: SSet | None = None) -> SSetMap:
    """Objects, 1-cells, and ``φ ↦ η∘F(φ)`` on 2-simplices; higher cells facewise."""
    X = dom or duskin_nerve(F.dom, dim)
    Y = cod or duskin_nerve(F.cod, dim)

    def f(k, x):
        if k <= 3:
            return _map_cell(F, x)
        return tuple(_map_cell(F, c) for c in x)

    return SSetMap.from_function(X, Y, f)


def duskin_decode(m: SSetMap, B: TwoCat, D: TwoCat) -> NormalOplax:
    """Read off objects, 1-cells, 2-cells (from 2-simplices with degenerate second edge) and ``η``."""
    X, Y = m.dom, m.cod
    if X.dim < 3 or set(X.cells(1)) != {((x, y), (f,), ()) for f in B.one_cells() for x, y in [B.ends(f)]} \
            or set(Y.cells(1)) != {((x, y), (f,), ()) for f in D.one_cells() for x, y in [D.ends(f)]}:
        raise DomainMismatch("map is not between the Duskin nerves of the given 2-categories")
    obj = {x: m(0, ((x,), (), ()))[0][0] for x in B.objects}
    one = {}
    for f in B.one_cells():
        x, y = B.ends(f)
        one[f] = m(1, ((x, y), (f,), ()))[1][0]
    two = {}
    for a in B.two_cells():
        h, g = B.src2(a), B.tgt2(a)
        x, y = B.ends(g)
        two[a] = m(2, ((x, y, y), (g, h, B.unit(y)), (a,)))[2][0]
    eta = {}
    for f, g in _pairs(B):
        x, y = B.ends(f)
        z = B.ends(g)[1]
        gf = B.comp(g, f)
        eta[(f, g)] = m(2, ((x, y, z), (f, gf, g), (B.id2(gf),)))[2][0]
    F = NormalOplax(B, D, obj, one, two, eta, pseudo=B.is_21())
    return F.validate()


def round_trip(F: NormalOplax, dim: int = 4) -> VerdictReport:
    """``decode∘encode = id`` on the functor data and ``encode∘decode = id`` on the map."""
    m = duskin_encode(F, dim)
    G = duskin_decode(m, F.dom, F.cod)
    same_data = (G.obj, G.one, G.two, G.eta) == (F.obj, F.one, F.two, F.eta)
    m2 = duskin_encode(G, dim, m.dom, m.cod)
    same_map = m2.tables == m.tables
    ok = same_data and same_map
    return VerdictReport("duskin-dictionary", ok, details={"data": same_data, "map": same_map})


# -------------------------------------------- relative Grothendieck fibrations
@dataclass
class RelativeStraightening:
    """A normal pseudofunctor to relative categories ``c ↦ (E_c, W_c)``."""

    pseudofunctor: PseudofunctorToCat
    weak: dict

    def pair(self, c) -> tuple[FinCat, frozenset]:
        return self.pseudofunctor.value[c], self.weak[c]


def relative_fibration_straighten(q: FibCat, W) -> RelativeStraightening:
    """Straighten ``q`` and check each pullback functor preserves the ``W``-fibers."""
    p = q.proj
    E, C = p.dom, p.cod
    w = fibration_witness(p)
    if w is not None:
        raise NotAFibration("not a Grothendieck fibration", w)
    W = frozenset(W)
    for e in E.objects:
        if E.identity(e) not in W:
            raise NotRelative("W misses an identity", {"object": repr(e)})
    for a in W:
        for b in W:
            if E.tgt(a) == E.src(b) and E.compose(b, a) not in W:
                raise NotRelative("W is not closed under composition", {"pair": repr((a, b))})
    for m in E.morphisms:
        if m not in W and is_cartesian_morphism(p, m):
            raise NotRelative("W misses a Cartesian morphism", {"morphism": repr(m)})
    cl = canonical_cleavage(q)
    Ps = straighten(q, cl)
    weak = {c: frozenset(m for m in fiber(p, c)[0].morphisms if m in W) for c in C.objects}
    for g in C.morphisms:
        Fg = Ps.action[g]
        for v in weak[C.tgt(g)]:
            if Fg.mor(v) not in weak[C.src(g)]:
                raise NotRelative("a pullback functor leaves W", {"base": repr(g), "morphism": repr(v), "image": repr(Fg.mor(v))})
    return RelativeStraightening(Ps, weak)
