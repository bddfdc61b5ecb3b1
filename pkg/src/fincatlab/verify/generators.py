"""Seeded random instances.

Every generator takes a :class:`random.Random` and is a pure function of its
state.  Categories are built as posets with extra parallel arrows whose
composites are forced, so no rejection sampling is needed.
"""
from __future__ import annotations

import random
from itertools import islice

from ..duskin import NormalOplax, TwoCat, congruence_two_cat, delooping, strict_functor
from ..fincat import CatValuedDiagram, FinCat, Functor, iter_functors, ordinal, product, terminal
from ..sset import nerve_chain

# monoids used to colour the arrows of a poset: (elements, product, unit)
MONOIDS = {
    "trivial": ((0,), lambda a, b: 0, 0),
    "max": ((0, 1), max, 0),
    "z2": ((0, 1), lambda a, b: (a + b) % 2, 0),
}


def rng_for(seed: int, *salt) -> random.Random:
    """An independent stream per ``(seed, salt)``."""
    return random.Random(repr((seed,) + salt))


def random_poset(rng: random.Random, n: int, p: float = 0.5) -> set:
    """Strict order relation on ``range(n)`` compatible with the usual order."""
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    changed = True
    while changed:
        extra = {(i, l) for i, j in rel for k, l in rel if j == k} - rel
        rel |= extra
        changed = bool(extra)
    return rel


def colored_poset(n: int, rel: set, coloured: set, monoid: str = "z2", name: str | None = None) -> FinCat:
    """Objects ``range(n)``; arrows ``(i, j, c)`` for ``i ≤ j`` with ``c`` a monoid element.

    Non-unit colours live only on pairs in the closure of ``coloured`` under
    ``(i, j) ↦ (h, l)`` for ``h ≤ i``, ``j ≤ l``; that closure makes the
    monoid product a valid composition.
    """
    els, mult, unit = MONOIDS[monoid]
    leq = {(i, i) for i in range(n)} | set(rel)
    closed = {(h, l) for i, j in coloured for h, l in leq if (h, i) in leq and (j, l) in leq}
    mors = []
    for i, j in sorted(leq):
        for c in (els if (i, j) in closed else (unit,)):
            mors.append(((i, j, c), i, j))
    return FinCat(
        list(range(n)), mors, {i: (i, i, unit) for i in range(n)},
        lambda g, f: (f[0], g[1], mult(g[2], f[2])), name=name, check=True,
    )


def random_category(rng: random.Random, max_objects: int = 3, *, monoid: str | None = None,
                    max_coloured: int = 1) -> FinCat:
    n = rng.randint(1, max_objects)
    rel = random_poset(rng, n)
    leq = sorted({(i, i) for i in range(n)} | rel)
    monoid = monoid or rng.choice(sorted(MONOIDS))
    k = rng.randint(0, max_coloured)
    coloured = set(rng.sample(leq, min(k, len(leq))))
    return colored_poset(n, rel, coloured, monoid, name=f"R{n}")


def random_functor(rng: random.Random, C: FinCat, D: FinCat, limit: int = 500) -> Functor:
    options = list(islice(iter_functors(C, D), limit))
    return rng.choice(options)


def random_functor_pair(rng: random.Random, max_c: int = 3, max_d: int = 4):
    C = random_category(rng, max_c)
    D = random_category(rng, max_d)
    return random_functor(rng, C, D), random_functor(rng, C, D)


def _topological(I: FinCat) -> list:
    """Objects ordered so every arrow between distinct objects goes forward."""
    done, order = set(), []
    while len(order) < len(I.objects):
        for y in I.objects:
            if y not in done and all(I.src(m) in done or I.src(m) == y for m in I.into(y)):
                done.add(y)
                order.append(y)
    return order


def random_diagram(rng: random.Random, index: FinCat, max_objects: int = 2, *, tries: int = 200,
                   values: dict | None = None) -> CatValuedDiagram:
    """A strict functor ``index → Cat`` for an index whose only cycles are endomorphisms.

    Values are chosen in topological order; the actions of arrows into each
    new vertex (endomorphisms included) are searched for compatibility with
    composition, and an unsatisfiable vertex gets ``[0]``.
    """
    value: dict = {}
    action: dict = {}
    for y in _topological(index):
        incoming = [m for m in index.into(y) if not index.is_identity(m)]
        V = (values or {}).get(y) or random_category(rng, max_objects)
        found = _actions_into(rng, index, value, action, y, incoming, V, tries)
        if found is None:
            V = terminal()
            found = _actions_into(rng, index, value, action, y, incoming, V, tries)
        value[y] = V
        action.update(found)
    return CatValuedDiagram(index, value, action)


def _actions_into(rng, I, value, action, y, incoming, V, tries):
    from ..fincat import compose_functors, identity_functor

    value = {**value, y: V}
    fixed = {**action, I.identity(y): identity_functor(V)}
    options = {}
    for m in incoming:
        opts = list(islice(iter_functors(value[I.src(m)], V), 200))
        rng.shuffle(opts)
        options[m] = opts
    relations = [
        (g, f, h) for g, f, h in I.composition_table()
        if (g in options or f in options) and all(x in options or x in fixed for x in (g, f, h))
    ]
    for _ in range(tries):
        pick = {m: rng.choice(options[m]) for m in incoming}
        act = {**fixed, **pick}
        if all(compose_functors(act[g], act[f]).key == act[h].key for g, f, h in relations):
            return {I.identity(y): fixed[I.identity(y)], **pick}
    return None


BASES = {
    "[0]": lambda: ordinal(0),
    "[1]": lambda: ordinal(1),
    "[2]": lambda: ordinal(2),
    "[1]x[1]": lambda: product(ordinal(1), ordinal(1)),
}


# ---------------------------------------------------------------- 2-cats
def random_two_cat(rng: random.Random, max_objects: int = 2) -> TwoCat:
    """A (2,1)-category: parallel arrows of a coloured poset joined by ``Z/n``-labelled 2-cells."""
    C = random_category(rng, max_objects, max_coloured=1)
    n = rng.choice((1, 2))
    if rng.random() < 0.5:
        return congruence_two_cat(C, None, n)
    P = colored_poset(len(C.objects), {(i, j) for i, j, _ in C.morphisms if i != j}, set(), "trivial")
    pi = Functor(C, P, {x: x for x in C.objects}, {m: (m[0], m[1], 0) for m in C.morphisms})
    return congruence_two_cat(C, pi, n)


def _parallel_pair() -> tuple[FinCat, Functor]:
    C = colored_poset(2, {(0, 1)}, {(0, 1)}, "max", name="⇉")
    P = ordinal(1)
    return C, Functor(C, P, {0: 0, 1: 1}, {m: (m[0], m[1]) for m in C.morphisms})


def random_small_two_cat(rng: random.Random) -> TwoCat:
    """A (2,1)-category whose 5-spheres can be enumerated in seconds.

    Underlying 1-category ``[0]``, ``[1]``, two points or a parallel pair;
    2-cells ``Z/n`` torsors (``n ≤ 2``) on each collapsed class.
    """
    from ..fincat import discrete

    shape = rng.choice(("point", "point", "arrow", "two points", "parallel"))
    if shape == "parallel":
        C, pi = _parallel_pair()
        return congruence_two_cat(C, pi, 1, name="parallel/1")
    C = {"point": ordinal(0), "arrow": ordinal(1), "two points": discrete([0, 1])}[shape]
    n = rng.choice((1, 2))
    return congruence_two_cat(C, None, n, name=f"{shape}/{n}")


def random_cocycle_oplax(rng: random.Random, n: int = 2, k: int = 2) -> NormalOplax:
    """``[n] → BBZ/k`` with ``η`` the coboundary of a random normalized 1-cochain."""
    B = congruence_two_cat(ordinal(n))
    D = delooping(k)
    o = D.objects[0]
    u = D.unit(o)
    c = {f: (0 if f[0] == f[1] else rng.randrange(k)) for f in B.one_cells()}
    eta = {}
    for f in B.one_cells():
        for g in B.one_cells():
            if B.ends(f)[1] == B.ends(g)[0]:
                eta[(f, g)] = (u, u, (c[f] + c[g] - c[B.comp(g, f)]) % k)
    F = NormalOplax(B, D, {x: o for x in B.objects}, {f: u for f in B.one_cells()},
                    {a: (u, u, 0) for a in B.two_cells()}, eta)
    return F.validate()


def random_strict_functor(rng: random.Random, max_objects: int = 2) -> NormalOplax:
    """The strict 2-functor induced by a random functor of underlying categories."""
    C, D = random_category(rng, max_objects), random_category(rng, max_objects)
    F = random_functor(rng, C, D)
    B, E = congruence_two_cat(C), congruence_two_cat(D)
    one = {f: F.mor(f) for f in C.morphisms}
    two = {(f, f, 0): (one[f], one[f], 0) for f in C.morphisms}
    return strict_functor(B, E, dict(F.obj_map), one, two).validate()


# ----------------------------------------------------------------- chains
def random_chain(rng: random.Random, n: int, dim: int = 3, max_objects: int = 2):
    cats = [random_category(rng, max_objects) for _ in range(n + 1)]
    functors = [random_functor(rng, cats[i], cats[i + 1]) for i in range(n)]
    return nerve_chain(functors, dim)
