"""Finite categories, functors and natural transformations as explicit tables.

Object and morphism ids are arbitrary hashables.  Internally every category
also carries integer indices so that the enumerators in
:mod:`fincatlab.fincat.enumerate` can work on small ints.
"""
from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Mapping

from ..config import check_category_size
from ..errors import (
    AssocViolation,
    FunctorLawError,
    NaturalityError,
    TypeMismatch,
    UnitViolation,
    UnknownObject,
)

Id = Hashable


class FinCat:
    """A finite category given by object, morphism, identity and composition tables.

    ``compose`` is either a mapping ``(g, f) -> g∘f`` or a callable; it is
    evaluated on every composable pair at construction time.
    """

    def __init__(
        self,
        objects: Iterable[Id],
        morphisms: Iterable[tuple[Id, Id, Id]],
        identities: Mapping[Id, Id],
        compose: Mapping[tuple[Id, Id], Id] | Callable[[Id, Id], Id],
        *,
        name: str | None = None,
        check: bool = True,
        sized: bool = True,
    ):
        self.objects = tuple(objects)
        self._oidx = {x: i for i, x in enumerate(self.objects)}
        if len(self._oidx) != len(self.objects):
            raise TypeMismatch("duplicate object ids")
        mors = list(morphisms)
        self.morphisms = tuple(m for m, _, _ in mors)
        self._midx = {m: i for i, m in enumerate(self.morphisms)}
        if len(self._midx) != len(self.morphisms):
            raise TypeMismatch("duplicate morphism ids")
        if sized:
            check_category_size(len(self.objects), len(self.morphisms), name or "category")
        try:
            self._src = tuple(self._oidx[s] for _, s, _ in mors)
            self._tgt = tuple(self._oidx[t] for _, _, t in mors)
        except KeyError as exc:
            raise TypeMismatch(f"morphism endpoint {exc.args[0]!r} is not an object") from None
        try:
            self._id = tuple(self._midx[identities[x]] for x in self.objects)
        except KeyError as exc:
            raise UnitViolation(f"missing identity for {exc.args[0]!r}") from None
        for i, m in enumerate(self._id):
            if self._src[m] != i or self._tgt[m] != i:
                raise UnitViolation(
                    f"identity of {self.objects[i]!r} is not an endomorphism",
                    [self.objects[i], self.morphisms[m]],
                )
        hom: dict[tuple[int, int], list[int]] = {}
        out: list[list[int]] = [[] for _ in self.objects]
        inc: list[list[int]] = [[] for _ in self.objects]
        for m in range(len(self.morphisms)):
            hom.setdefault((self._src[m], self._tgt[m]), []).append(m)
            out[self._src[m]].append(m)
            inc[self._tgt[m]].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._out = tuple(tuple(v) for v in out)
        self._in = tuple(tuple(v) for v in inc)
        self._comp: dict[tuple[int, int], int] = {}
        lookup = compose if callable(compose) else compose.__getitem__
        M = self.morphisms
        for f in range(len(M)):
            for g in self._out[self._tgt[f]]:
                try:
                    gf = lookup((M[g], M[f])) if not callable(compose) else compose(M[g], M[f])
                except KeyError:
                    raise TypeMismatch(
                        f"no composite for {M[g]!r} ∘ {M[f]!r}", [M[g], M[f]]
                    ) from None
                if gf not in self._midx:
                    raise TypeMismatch(f"composite {gf!r} is not a morphism", [M[g], M[f], gf])
                h = self._midx[gf]
                if self._src[h] != self._src[f] or self._tgt[h] != self._tgt[g]:
                    raise TypeMismatch(
                        f"composite {M[g]!r} ∘ {M[f]!r} = {gf!r} has wrong endpoints",
                        [M[g], M[f], gf],
                    )
                self._comp[(g, f)] = h
        self.name = name
        self._hash = None
        if check:
            errs = self.law_violations(first_only=True)
            if errs:
                raise errs[0]

    # ------------------------------------------------------------------ laws
    def law_violations(self, first_only: bool = False) -> list:
        errs: list = []
        M = self.morphisms
        for m in range(len(M)):
            s, t = self._src[m], self._tgt[m]
            if self._comp[(m, self._id[s])] != m or self._comp[(self._id[t], m)] != m:
                errs.append(UnitViolation(f"identity law fails at {M[m]!r}", [M[m]]))
                if first_only:
                    return errs
        for f in range(len(M)):
            for g in self._out[self._tgt[f]]:
                gf = self._comp[(g, f)]
                for h in self._out[self._tgt[g]]:
                    if self._comp[(h, gf)] != self._comp[(self._comp[(h, g)], f)]:
                        errs.append(
                            AssocViolation(
                                f"({M[h]!r}∘{M[g]!r})∘{M[f]!r} differs from {M[h]!r}∘({M[g]!r}∘{M[f]!r})",
                                [M[h], M[g], M[f]],
                            )
                        )
                        if first_only:
                            return errs
        return errs

    # ------------------------------------------------------------- accessors
    def _o(self, x) -> int:
        try:
            return self._oidx[x]
        except KeyError:
            raise UnknownObject(f"{x!r} is not an object of {self.name or 'category'}") from None

    def _m(self, m) -> int:
        try:
            return self._midx[m]
        except KeyError:
            raise UnknownObject(f"{m!r} is not a morphism of {self.name or 'category'}") from None

    def has_object(self, x) -> bool:
        return x in self._oidx

    def has_morphism(self, m) -> bool:
        return m in self._midx

    def src(self, m):
        return self.objects[self._src[self._m(m)]]

    def tgt(self, m):
        return self.objects[self._tgt[self._m(m)]]

    def identity(self, x):
        return self.morphisms[self._id[self._o(x)]]

    def is_identity(self, m) -> bool:
        i = self._m(m)
        return self._id[self._src[i]] == i

    def compose(self, g, f):
        """``g ∘ f``."""
        k = (self._m(g), self._m(f))
        try:
            return self.morphisms[self._comp[k]]
        except KeyError:
            raise TypeMismatch(f"{g!r} ∘ {f!r} is not composable", [g, f]) from None

    def compose_many(self, *ms):
        """``ms[0] ∘ ms[1] ∘ ...``."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.compose(g, out)
        return out

    def hom(self, x, y) -> tuple:
        M = self.morphisms
        return tuple(M[m] for m in self._hom.get((self._o(x), self._o(y)), ()))

    def out_of(self, x) -> tuple:
        return tuple(self.morphisms[m] for m in self._out[self._o(x)])

    def into(self, x) -> tuple:
        return tuple(self.morphisms[m] for m in self._in[self._o(x)])

    def inverse(self, m):
        """The inverse of ``m`` or ``None``."""
        i = self._m(m)
        s, t = self._src[i], self._tgt[i]
        for j in self._hom.get((t, s), ()):
            if self._comp[(j, i)] == self._id[s] and self._comp[(i, j)] == self._id[t]:
                return self.morphisms[j]
        return None

    def is_iso(self, m) -> bool:
        return self.inverse(m) is not None

    def non_identity_morphisms(self) -> tuple:
        ids = set(self._id)
        return tuple(self.morphisms[m] for m in range(len(self.morphisms)) if m not in ids)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def composition_table(self) -> list[tuple]:
        M = self.morphisms
        return [(M[g], M[f], M[h]) for (g, f), h in self._comp.items()]

    def is_thin(self) -> bool:
        return all(len(v) == 1 for v in self._hom.values())

    # --------------------------------------------------------------- dunders
    def _key(self):
        return (self.objects, self.morphisms, self._src, self._tgt, self._id)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return self._key() == other._key() and self._comp == other._comp

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((len(self.objects), len(self.morphisms), self._key()))
        return self._hash

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<FinCat {label}{len(self.objects)} objects, {len(self.morphisms)} morphisms>"


class Functor:
    """A functor between finite categories, stored as object and morphism maps."""

    def __init__(self, dom: FinCat, cod: FinCat, obj_map: Mapping, mor_map: Mapping, *, check=True):
        self.dom = dom
        self.cod = cod
        try:
            self._om = tuple(cod._oidx[obj_map[x]] for x in dom.objects)
            self._mm = tuple(cod._midx[mor_map[m]] for m in dom.morphisms)
        except KeyError as exc:
            raise FunctorLawError(f"functor map undefined or out of range at {exc.args[0]!r}") from None
        self._hash = None
        if check:
            err = self.law_violation()
            if err is not None:
                raise err

    @classmethod
    def _raw(cls, dom: FinCat, cod: FinCat, om: tuple, mm: tuple) -> "Functor":
        F = cls.__new__(cls)
        F.dom, F.cod, F._om, F._mm, F._hash = dom, cod, om, mm, None
        return F

    def law_violation(self):
        D, C, om, mm = self.dom, self.cod, self._om, self._mm
        for m in range(len(D.morphisms)):
            n = mm[m]
            if C._src[n] != om[D._src[m]] or C._tgt[n] != om[D._tgt[m]]:
                return FunctorLawError(f"{D.morphisms[m]!r} is sent to a morphism with wrong endpoints", [D.morphisms[m]])
        for i, m in enumerate(D._id):
            if mm[m] != C._id[om[i]]:
                return FunctorLawError(f"identity of {D.objects[i]!r} not preserved", [D.objects[i]])
        for (g, f), h in D._comp.items():
            if C._comp[(mm[g], mm[f])] != mm[h]:
                return FunctorLawError(
                    f"composite {D.morphisms[g]!r}∘{D.morphisms[f]!r} not preserved",
                    [D.morphisms[g], D.morphisms[f]],
                )
        return None

    def obj(self, x):
        return self.cod.objects[self._om[self.dom._o(x)]]

    def mor(self, m):
        return self.cod.morphisms[self._mm[self.dom._m(m)]]

    def __call__(self, x):
        """Apply to an object or a morphism (objects take precedence)."""
        if self.dom.has_object(x):
            return self.obj(x)
        return self.mor(x)

    @property
    def obj_map(self) -> dict:
        return {x: self.cod.objects[i] for x, i in zip(self.dom.objects, self._om)}

    @property
    def mor_map(self) -> dict:
        return {m: self.cod.morphisms[i] for m, i in zip(self.dom.morphisms, self._mm)}

    @property
    def key(self) -> tuple:
        """Hashable content of the functor, relative to its fixed domain and codomain."""
        return (self._om, self._mm)

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self._om == other._om
            and self._mm == other._mm
            and (self.dom is other.dom or self.dom == other.dom)
            and (self.cod is other.cod or self.cod == other.cod)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._om, self._mm))
        return self._hash

    def __repr__(self):
        return f"<Functor {self.obj_map}>"

    def then(self, G: "Functor") -> "Functor":
        """``G ∘ self``."""
        return compose_functors(G, self)


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G ∘ F``."""
    if not (F.cod is G.dom or F.cod == G.dom):
        raise TypeMismatch("functors are not composable")
    return Functor._raw(F.dom, G.cod, tuple(G._om[i] for i in F._om), tuple(G._mm[i] for i in F._mm))


def identity_functor(C: FinCat) -> Functor:
    return Functor._raw(C, C, tuple(range(len(C.objects))), tuple(range(len(C.morphisms))))


class NatTrans:
    """A natural transformation ``src ⇒ tgt`` given by its components."""

    def __init__(self, src: Functor, tgt: Functor, components: Mapping, *, check=True):
        if not (src.dom is tgt.dom or src.dom == tgt.dom) or not (src.cod is tgt.cod or src.cod == tgt.cod):
            raise TypeMismatch("natural transformation between functors with different (co)domains")
        self.src, self.tgt = src, tgt
        D = src.cod
        try:
            self._c = tuple(D._midx[components[x]] for x in src.dom.objects)
        except KeyError as exc:
            raise NaturalityError(f"component at {exc.args[0]!r} missing or not a morphism") from None
        self._hash = None
        if check:
            err = self.law_violation()
            if err is not None:
                raise err

    @classmethod
    def _raw(cls, src: Functor, tgt: Functor, comps: tuple) -> "NatTrans":
        a = cls.__new__(cls)
        a.src, a.tgt, a._c, a._hash = src, tgt, comps, None
        return a

    def law_violation(self):
        C, D = self.src.dom, self.src.cod
        F, G, c = self.src, self.tgt, self._c
        for i, m in enumerate(c):
            if D._src[m] != F._om[i] or D._tgt[m] != G._om[i]:
                return NaturalityError(f"component at {C.objects[i]!r} has wrong endpoints", [C.objects[i]])
        for m in range(len(C.morphisms)):
            x, y = C._src[m], C._tgt[m]
            if D._comp[(c[y], F._mm[m])] != D._comp[(G._mm[m], c[x])]:
                return NaturalityError(f"naturality square fails at {C.morphisms[m]!r}", [C.morphisms[m]])
        return None

    def component(self, x):
        return self.src.cod.morphisms[self._c[self.src.dom._o(x)]]

    @property
    def components(self) -> dict:
        D = self.src.cod
        return {x: D.morphisms[i] for x, i in zip(self.src.dom.objects, self._c)}

    @property
    def key(self) -> tuple:
        return (self.src.key, self.tgt.key, self._c)

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self._c == other._c and self.src == other.src and self.tgt == other.tgt

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __repr__(self):
        return f"<NatTrans {self.components}>"

    def is_invertible(self) -> bool:
        D = self.src.cod
        return all(D.inverse(D.morphisms[m]) is not None for m in self._c)


def vertical(b: NatTrans, a: NatTrans) -> NatTrans:
    """``b • a`` for ``a: F ⇒ G``, ``b: G ⇒ H``."""
    D = a.src.cod
    return NatTrans._raw(a.src, b.tgt, tuple(D._comp[(y, x)] for x, y in zip(a._c, b._c)))


def identity_nat(F: Functor) -> NatTrans:
    D = F.cod
    return NatTrans._raw(F, F, tuple(D._id[i] for i in F._om))


def whisker_left(a: NatTrans, H: Functor) -> NatTrans:
    """``a H``: components ``a_{H(x)}`` for ``H: B → dom(a)``."""
    return NatTrans._raw(compose_functors(a.src, H), compose_functors(a.tgt, H), tuple(a._c[i] for i in H._om))


def whisker_right(K: Functor, a: NatTrans) -> NatTrans:
    """``K a``: components ``K(a_x)``."""
    return NatTrans._raw(compose_functors(K, a.src), compose_functors(K, a.tgt), tuple(K._mm[m] for m in a._c))


class CatValuedDiagram:
    """A strict functor ``index → Cat`` with finite values."""

    def __init__(self, index: FinCat, value: Mapping, action: Mapping, *, check=True):
        self.index = index
        self.value = {i: value[i] for i in index.objects}
        self.action = {m: action[m] for m in index.morphisms}
        if check:
            err = self.law_violation()
            if err is not None:
                raise err

    def law_violation(self):
        I = self.index
        for m in I.morphisms:
            F = self.action[m]
            if not (F.dom == self.value[I.src(m)] and F.cod == self.value[I.tgt(m)]):
                return FunctorLawError(f"action of {m!r} has the wrong (co)domain", [m])
            if I.is_identity(m) and F.key != identity_functor(F.dom).key:
                return FunctorLawError(f"identity {m!r} does not act as the identity", [m])
        for g, f, h in I.composition_table():
            if compose_functors(self.action[g], self.action[f]).key != self.action[h].key:
                return FunctorLawError(f"action of {g!r}∘{f!r} is not the composite", [g, f])
        return None

    def __call__(self, x):
        return self.value[x] if self.index.has_object(x) else self.action[x]

    def __repr__(self):
        return f"<CatValuedDiagram over {self.index!r}>"


class SetDiagram:
    """A functor ``index → FinSet``: values are tuples, actions are dicts."""

    def __init__(self, index: FinCat, value: Mapping, action: Mapping, *, check=True):
        self.index = index
        self.value = {i: tuple(value[i]) for i in index.objects}
        self.action = {m: dict(action[m]) for m in index.morphisms}
        if check:
            for m in index.morphisms:
                a, s, t = self.action[m], self.value[index.src(m)], self.value[index.tgt(m)]
                if set(a) != set(s) or not set(a.values()) <= set(t):
                    raise FunctorLawError(f"action of {m!r} is not a function between the values", [m])
                if index.is_identity(m) and any(a[x] != x for x in s):
                    raise FunctorLawError(f"identity {m!r} does not act trivially", [m])
            for g, f, h in index.composition_table():
                ag, af, ah = self.action[g], self.action[f], self.action[h]
                if any(ag[af[x]] != ah[x] for x in af):
                    raise FunctorLawError(f"action of {g!r}∘{f!r} is not the composite", [g, f])


# ------------------------------------------------------------- basic shapes
def op(C: FinCat) -> FinCat:
    """The opposite category; object and morphism ids are unchanged, so ``op(op(C)) == C``."""
    M = C.morphisms
    return FinCat(
        C.objects,
        [(M[m], C.objects[C._tgt[m]], C.objects[C._src[m]]) for m in range(len(M))],
        {x: M[C._id[i]] for i, x in enumerate(C.objects)},
        {(M[f], M[g]): M[h] for (g, f), h in C._comp.items()},
        name=f"{C.name}^op" if C.name else None,
        check=False,
    )


def op_functor(F: Functor, dom_op: FinCat | None = None, cod_op: FinCat | None = None) -> Functor:
    return Functor._raw(dom_op or op(F.dom), cod_op or op(F.cod), F._om, F._mm)


def poset_category(elements: Iterable, leq: Callable[[object, object], bool], *, name=None) -> FinCat:
    """The category of a finite poset; the morphism ``x ≤ y`` has id ``(x, y)``."""
    els = list(elements)
    mors = [((x, y), x, y) for x in els for y in els if leq(x, y)]
    return FinCat(
        els,
        mors,
        {x: (x, x) for x in els},
        lambda g, f: (f[0], g[1]),
        name=name,
        check=False,
    )


def ordinal(n: int) -> FinCat:
    """``[n] = {0 < 1 < ... < n}``."""
    return poset_category(range(n + 1), lambda a, b: a <= b, name=f"[{n}]")


def discrete(objects: Iterable, *, name=None) -> FinCat:
    objs = list(objects)
    return FinCat(objs, [(("id", x), x, x) for x in objs], {x: ("id", x) for x in objs},
                  lambda g, f: f, name=name, check=False)


def empty_category() -> FinCat:
    return FinCat([], [], {}, {}, name="∅", check=False)


def terminal() -> FinCat:
    return ordinal(0)


def monoid_category(elements: Iterable, mult: Callable, unit, *, obj="*", name=None) -> FinCat:
    """One-object category of a finite monoid; ``mult(g, f)`` is ``g∘f``."""
    els = list(elements)
    return FinCat([obj], [(e, obj, obj) for e in els], {obj: unit}, lambda g, f: mult(g, f),
                  name=name, check=True)


def cyclic_group(n: int, *, obj="*") -> FinCat:
    return monoid_category(range(n), lambda a, b: (a + b) % n, 0, obj=obj, name=f"Z/{n}")


def walking_iso() -> FinCat:
    """Two objects and a pair of inverse isomorphisms ``i: 0 → 1``, ``j: 1 → 0``."""
    mors = [("id0", 0, 0), ("id1", 1, 1), ("i", 0, 1), ("j", 1, 0)]
    table = {
        ("id0", "id0"): "id0", ("id1", "id1"): "id1",
        ("i", "id0"): "i", ("id1", "i"): "i", ("j", "id1"): "j", ("id0", "j"): "j",
        ("j", "i"): "id0", ("i", "j"): "id1",
    }
    return FinCat([0, 1], mors, {0: "id0", 1: "id1"}, table, name="Iso")


def product(*cats: FinCat) -> FinCat:
    """Cartesian product; objects and morphisms are tuples of components."""
    if not cats:
        return terminal()
    objs = list(iproduct(*(C.objects for C in cats)))
    mors = []
    for ms in iproduct(*(C.morphisms for C in cats)):
        mors.append((ms, tuple(C.src(m) for C, m in zip(cats, ms)), tuple(C.tgt(m) for C, m in zip(cats, ms))))
    return FinCat(
        objs,
        mors,
        {x: tuple(C.identity(c) for C, c in zip(cats, x)) for x in objs},
        lambda g, f: tuple(C.compose(a, b) for C, a, b in zip(cats, g, f)),
        name=" × ".join(C.name or "?" for C in cats),
        check=False,
    )


def projection(P: FinCat, cats: tuple, k: int) -> Functor:
    """The ``k``-th projection out of ``product(*cats)``."""
    C = cats[k]
    return Functor._raw(P, C, tuple(C._oidx[x[k]] for x in P.objects), tuple(C._midx[m[k]] for m in P.morphisms))


def product_functor(*Fs: Functor, dom: FinCat | None = None, cod: FinCat | None = None) -> Functor:
    dom = dom or product(*(F.dom for F in Fs))
    cod = cod or product(*(F.cod for F in Fs))
    return Functor(
        dom, cod,
        {x: tuple(F.obj(c) for F, c in zip(Fs, x)) for x in dom.objects},
        {m: tuple(F.mor(c) for F, c in zip(Fs, m)) for m in dom.morphisms},
        check=False,
    )


def coproduct(*cats: FinCat) -> FinCat:
    """Disjoint union; ids are tagged ``(k, id)``."""
    objs = [(k, x) for k, C in enumerate(cats) for x in C.objects]
    mors = [((k, m), (k, C.src(m)), (k, C.tgt(m))) for k, C in enumerate(cats) for m in C.morphisms]
    return FinCat(
        objs, mors,
        {(k, x): (k, cats[k].identity(x)) for k, x in objs},
        lambda g, f: (g[0], cats[g[0]].compose(g[1], f[1])),
        check=False,
    )


def constant_functor(C: FinCat, D: FinCat, d) -> Functor:
    i = D._o(d)
    return Functor._raw(C, D, (i,) * len(C.objects), (D._id[i],) * len(C.morphisms))


def object_functor(D: FinCat, d, point: FinCat | None = None) -> Functor:
    """The functor ``[0] → D`` picking out ``d``."""
    return constant_functor(point or terminal(), D, d)


def functor_from_maps(dom: FinCat, cod: FinCat, obj: Callable, mor: Callable, *, check=True) -> Functor:
    return Functor(dom, cod, {x: obj(x) for x in dom.objects}, {m: mor(m) for m in dom.morphisms}, check=check)


def full_subcategory(C: FinCat, objects: Iterable, *, name=None) -> FinCat:
    keep = [x for x in C.objects if x in set(objects)]
    ks = set(keep)
    mors = [(m, C.src(m), C.tgt(m)) for m in C.morphisms if C.src(m) in ks and C.tgt(m) in ks]
    return FinCat(keep, mors, {x: C.identity(x) for x in keep}, C.compose, name=name, check=False)


def wide_subcategory(C: FinCat, morphisms: Iterable, *, name=None) -> FinCat:
    """The subcategory on all objects with the given morphisms; must be closed under composition."""
    ms = set(morphisms) | {C.identity(x) for x in C.objects}
    mors = [(m, C.src(m), C.tgt(m)) for m in C.morphisms if m in ms]
    return FinCat(C.objects, mors, {x: C.identity(x) for x in C.objects}, C.compose, name=name, check=False)


def inclusion(sub: FinCat, C: FinCat) -> Functor:
    return Functor._raw(sub, C, tuple(C._oidx[x] for x in sub.objects), tuple(C._midx[m] for m in sub.morphisms))


def relabel(C: FinCat, obj: Callable, mor: Callable, *, name=None) -> tuple[FinCat, Functor]:
    """A copy of ``C`` with renamed ids and the isomorphism from ``C`` to it."""
    M = C.morphisms
    D = FinCat(
        [obj(x) for x in C.objects],
        [(mor(M[m]), obj(C.objects[C._src[m]]), obj(C.objects[C._tgt[m]])) for m in range(len(M))],
        {obj(x): mor(M[C._id[i]]) for i, x in enumerate(C.objects)},
        {(mor(M[g]), mor(M[f])): mor(M[h]) for (g, f), h in C._comp.items()},
        name=name or C.name,
        check=False,
    )
    return D, Functor._raw(C, D, tuple(range(len(C.objects))), tuple(range(len(M))))
