"""The registered check suites.

A suite maps ``(seed, rep, bounds)`` to one :class:`VerdictReport`.  Cases are
pure functions of those inputs, which is what makes replay exact.
"""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from itertools import islice
from typing import Callable

from .. import duskin as dk
from ..config import size_caps
from ..errors import DimensionBoundExceeded, SizeBoundExceeded, UnknownSuite, WorkbenchError
from ..fincat import (
    CatValuedDiagram,
    FinCat,
    Functor,
    default_probes,
    discrete,
    find_isomorphism,
    identity_functor,
    is_isomorphic,
    is_isomorphism,
    iter_functors,
    object_functor,
    op,
    ordinal,
    product,
    terminal,
    walking_iso,
)
from ..groth import (
    adjunction_check,
    canonical_cleavage,
    cart_groth,
    collage_pushout_check,
    dfib_slice_equiv,
    elements,
    fiber_formula_check,
    functors_over,
    iter_presheaves,
    lax_colimit_check,
    oplax_colimit_check,
    phi_universal_check,
    product_compatibility_check,
    regroup,
    sections_vs_oplax_limit,
    source_fibration_check,
    straighten,
    two_of_three_cart,
    two_of_three_discrete,
    undercat_fiber_check,
)
from ..serialize import to_json
from ..sset import (
    esd,
    fiber_compare,
    find_sset_iso,
    horn,
    mapping_simplex_decompositions,
    nerve,
    realize,
    simplex,
    spine,
)
from ..sset import product as sset_product
from ..twisted import nat_agreement, nat_category_agreement, interval_poset_iso, twisted_arrow
from ..verdict import VerdictReport
from . import generators as gen


MAX_OBJECTS = 6
MAX_DIM = 7


@dataclass(frozen=True)
class Bounds:
    max_objects: int = 3
    dim_bound: int = 5
    probes: tuple | None = None

    def probe_categories(self) -> list[FinCat] | None:
        if self.probes is None:
            return None
        return [PROBES[name]() for name in self.probes]

    def validate(self) -> "Bounds":
        if not 1 <= self.max_objects <= MAX_OBJECTS:
            raise SizeBoundExceeded(f"max_objects must lie in 1..{MAX_OBJECTS}", {"max_objects": self.max_objects})
        if not 1 <= self.dim_bound <= MAX_DIM:
            raise DimensionBoundExceeded(f"dim_bound must lie in 1..{MAX_DIM}", {"dim_bound": self.dim_bound})
        unknown = [p for p in self.probes or () if p not in PROBES]
        if unknown:
            raise WorkbenchError(f"unknown probes {unknown}")
        return self


PROBES = {
    "[0]": lambda: ordinal(0),
    "[1]": lambda: ordinal(1),
    "[2]": lambda: ordinal(2),
    "[1]x[1]": lambda: product(ordinal(1), ordinal(1)),
    "iso": walking_iso,
    "two-points": lambda: discrete([0, 1]),
}


@dataclass
class Suite:
    id: str
    citation: str
    run_case: Callable[[int, int, Bounds], VerdictReport]
    default_reps: int = 10
    fixed_cases: int | None = None
    tags: tuple = field(default_factory=tuple)


REGISTRY: dict[str, Suite] = {}


def register(id: str, citation: str, default_reps: int = 10, fixed_cases: int | None = None):
    def wrap(fn):
        REGISTRY[id] = Suite(id, citation, fn, default_reps, fixed_cases)
        return fn
    return wrap


def fingerprint(*objs) -> str:
    parts = []
    for o in objs:
        try:
            parts.append(to_json(o))
        except WorkbenchError:
            parts.append(repr(o))
    blob = json.dumps(parts, sort_keys=True, ensure_ascii=False, default=repr)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _all(suite: str, reports: list[VerdictReport], instance: str, **details) -> VerdictReport:
    ok = all(r.passed for r in reports)
    failing = next((r for r in reports if not r.passed), None)
    return VerdictReport(
        suite, ok, instance=instance,
        witness=None if ok else {"check": failing.suite, "witness": failing.witness, "details": failing.details},
        details={**details, "checks": {r.suite: r.passed for r in reports}},
    )


def _rng(suite, seed, rep):
    return gen.rng_for(seed, suite, rep)


# ----------------------------------------------------------- twisted arrows
@register("twisted-arrow-shape", "Tw([n]) has one object per pair i ≤ j, and with arrows running from "
          "outer to inner intervals it is the interval poset of [n].", fixed_cases=6)
def _twisted_shape(seed, rep, b):
    n = rep
    Tw = twisted_arrow(ordinal(n))
    count = Tw.category.n_objects == (n + 1) * (n + 2) // 2
    iso = interval_poset_iso(n) is not None
    return VerdictReport("twisted-arrow-shape", count and iso, instance=f"[{n}]",
                         witness=None if count and iso else {"objects": Tw.category.n_objects, "iso": iso},
                         details={"n": n, "objects": Tw.category.n_objects})


@register("nat-as-end", "Natural transformations F ⇒ G are the end of D(F-, G-) over the twisted arrow category.",
          default_reps=100)
def _nat_end(seed, rep, b):
    r = _rng("nat-as-end", seed, rep)
    F, G = gen.random_functor_pair(r, min(3, b.max_objects), min(4, b.max_objects + 1))
    v = nat_agreement(F, G)
    v.instance = fingerprint(F, G)
    return v


@register("nat-category-as-end", "The category of strict natural transformations between Cat-valued diagrams "
          "is an end of functor categories.")
def _nat_cat_end(seed, rep, b):
    r = _rng("nat-category-as-end", seed, rep)
    I = gen.BASES[r.choice(["[0]", "[1]"])]()
    F = gen.random_diagram(r, I, 2)
    G = gen.random_diagram(r, I, 2)
    v = nat_category_agreement(F, G)
    v.instance = fingerprint(F, G)
    return v


# ------------------------------------------------------------ free fibrations
def _small_base(r, b):
    return gen.random_category(r, min(3, b.max_objects), max_coloured=1)


def _cart_over(r, C, max_objects=2):
    """A Cartesian fibration over ``C`` from a random diagram on ``op(C)``."""
    return cart_groth(gen.random_diagram(r, op(C), max_objects))


@register("free-fibration-adjunction", "The free fibration on p: E → C is left adjoint to the forgetful functor "
          "from fibrations over C; checked by restriction along the unit, with E = [0] and E = [1] "
          "specializations and compatibility with products.", default_reps=50)
def _adjunction(seed, rep, b):
    r = _rng("free-fibration-adjunction", seed, rep)
    kind = ("object", "arrow", "general", "product", "source")[rep % 5]
    C = _small_base(r, b)
    if kind == "product":
        K = gen.random_category(r, 2, max_coloured=0)
        X = gen.random_category(r, 2, max_coloured=0)
        x = gen.random_functor(r, X, C)
        v = product_compatibility_check(K, x)
        v.instance = fingerprint(K, x)
    elif kind == "source":
        v = source_fibration_check(C)
        v.instance = fingerprint(C)
    else:
        E = {"object": ordinal(0), "arrow": ordinal(1)}.get(kind) or gen.random_category(r, 2, max_coloured=0)
        p = gen.random_functor(r, E, C)
        q = _cart_over(r, C)
        v = adjunction_check(p, q)
        v.instance = fingerprint(p, q.proj)
    v.suite = "free-fibration-adjunction"
    v.details = {**v.details, "kind": kind}
    return v


@register("straightening", "A Grothendieck fibration is recovered from the normal pseudofunctor of its fibers "
          "and chosen Cartesian lifts.")
def _straightening(seed, rep, b):
    r = _rng("straightening", seed, rep)
    C = _small_base(r, b)
    q = _cart_over(r, C)
    cl = canonical_cleavage(q)
    Ps = straighten(q, cl)
    R = regroup(q, Ps, cl)
    ok = is_isomorphism(R)
    return VerdictReport("straightening", ok, instance=fingerprint(q.proj),
                         witness=None if ok else {"total": q.total.n_objects}, details={"strict": Ps.is_strict()})


# ---------------------------------------------------- (op)lax (co)limits
def _base_for(rep):
    return ["[1]", "[2]", "[1]x[1]"][rep % 3]


@register("sections-oplax-limit", "Sections of the Cartesian Grothendieck construction form the oplax limit "
          "of the diagram.", default_reps=50)
def _sections(seed, rep, b):
    r = _rng("sections-oplax-limit", seed, rep)
    base = _base_for(rep)
    F = gen.random_diagram(r, op(gen.BASES[base]()), 2)
    # the weight categories of [1]x[1] make intermediate functor categories large
    with size_caps(max_morphisms=20_000, max_objects=2_000):
        v = sections_vs_oplax_limit(F)
    v.instance = fingerprint(F)
    v.details = {**v.details, "base": base}
    return v


def _constant_point(C: FinCat) -> CatValuedDiagram:
    T = terminal()
    return CatValuedDiagram(C, {c: T for c in C.objects}, {m: identity_functor(T) for m in C.morphisms})


@register("lax-colimit", "The coCartesian Grothendieck construction is the lax colimit of the diagram; "
          "for the constant point diagram it returns the base.", default_reps=30)
def _lax_colimit(seed, rep, b):
    r = _rng("lax-colimit", seed, rep)
    base = _base_for(rep)
    C = gen.BASES[base]()
    probes = b.probe_categories()
    if rep % 5 == 0:
        F = _constant_point(C)
        v = lax_colimit_check(F, probes)
        from ..groth import cocart_groth

        same = find_isomorphism(cocart_groth(F).total, C) is not None
        v = _all("lax-colimit", [v, VerdictReport("constant-point", same)], fingerprint(F), base=base,
                 kind="constant point")
        return v
    F = gen.random_diagram(r, C, 2)
    v = lax_colimit_check(F, probes)
    v.instance = fingerprint(F)
    v.details = {**v.details, "base": base}
    return v


@register("oplax-colimit", "The Cartesian Grothendieck construction is the oplax colimit of a diagram on op(C).")
def _oplax_colimit(seed, rep, b):
    r = _rng("oplax-colimit", seed, rep)
    base = _base_for(rep)
    F = gen.random_diagram(r, op(gen.BASES[base]()), 2)
    v = oplax_colimit_check(F, b.probe_categories())
    v.instance = fingerprint(F)
    return v


@register("phi-fibration", "Functors out of a pullback of the coCartesian construction correspond to functors "
          "over C into the fibration of functor categories.", default_reps=20)
def _phi(seed, rep, b):
    r = _rng("phi-fibration", seed, rep)
    C = gen.BASES[["[0]", "[1]"][rep % 2]]()
    F = gen.random_diagram(r, C, 2)
    X = gen.random_category(r, 2, max_coloured=0)
    K = ordinal((rep // 2) % 2)
    k = gen.random_functor(r, K, C)
    v = phi_universal_check(F, X, k)
    v.instance = fingerprint(F, X, k)
    return v


@register("exponential-fiber", "The fiber of an exponentiated fibration over φ: D → C is the oplax limit of F∘φ.",
          default_reps=20)
def _exp_fiber(seed, rep, b):
    r = _rng("exponential-fiber", seed, rep)
    C = gen.BASES[["[0]", "[1]"][rep % 2]]()
    D = ordinal((rep // 2) % 2)
    F = gen.random_diagram(r, op(C), 2)
    phi = gen.random_functor(r, D, C)
    v = fiber_formula_check(F, D, phi)
    v.instance = fingerprint(F, phi)
    v.details = {**v.details, "D": D.name}
    return v


# ------------------------------------------------------------ simplicial
@register("mapping-simplex", "The mapping simplex of a chain of marked simplicial sets is a pushout, a zigzag "
          "colimit and a coend; over each vertex it is the value there.", default_reps=20)
def _mapping(seed, rep, b):
    r = _rng("mapping-simplex", seed, rep)
    n = 1 + rep % 2
    phi = gen.random_chain(r, n, dim=min(3, b.dim_bound), max_objects=2)
    reports = [mapping_simplex_decompositions(phi)] + [fiber_compare(phi, i) for i in range(n + 1)]
    inst = fingerprint(*(A.underlying for A in phi.values))
    return _all("mapping-simplex", reports, inst, n=n)


def _realization_cases():
    cases = []
    for n in range(2, 5):
        for i in range(1, n):
            cases.append(("horn", n, i))
    for n in range(1, 6):
        cases.append(("spine", n, None))
    for n in range(5):
        for m in range(5 - n):
            cases.append(("product", n, m))
    return cases


REALIZATION_CASES = _realization_cases()


@register("realization", "The left adjoint of the nerve sends inner horns and spines to [n] and Δⁿ × Δᵐ to "
          "[n] × [m].", fixed_cases=len(REALIZATION_CASES))
def _realization(seed, rep, b):
    kind, n, i = REALIZATION_CASES[rep]
    if kind == "horn":
        X, target = horn(n, i, max(n, 2)), ordinal(n)
    elif kind == "spine":
        X, target = spine(n, max(n, 2)), ordinal(n)
    else:
        d = max(n + i, 2)
        X, target = sset_product(simplex(n, d), simplex(i, d)), product(ordinal(n), ordinal(i))
    ok = is_isomorphic(realize(X), target)
    return VerdictReport("realization", ok, instance=f"{kind}({n},{i})",
                         witness=None if ok else {"case": [kind, n, i]}, details={"case": [kind, n, i]})


@register("esd-twisted", "Edgewise subdivision of the nerve of C is the nerve of its twisted arrow category "
          "(outer to inner orientation).", default_reps=30)
def _esd(seed, rep, b):
    r = _rng("esd-twisted", seed, rep)
    C = gen.random_category(r, min(3, b.max_objects), max_coloured=1)
    d = 2
    left = esd(nerve(C, 2 * d + 1), d)
    right = nerve(twisted_arrow(C).outer_to_inner(), d)
    ok = find_sset_iso(left, right) is not None
    return VerdictReport("esd-twisted", ok, instance=fingerprint(C),
                         witness=None if ok else {"left": list(left.counts()), "right": list(right.counts())},
                         details={"counts": list(left.counts())})


# --------------------------------------------------------------- Duskin
@register("duskin-3-coskeletal", "The Duskin nerve of a strict (2,1)-category is 3-coskeletal: each 4- and "
          "5-sphere has exactly one filler among coherent simplices.")
def _duskin_cosk(seed, rep, b):
    B = dk.delooping(2) if rep == 0 else gen.random_small_two_cat(_rng("duskin-3-coskeletal", seed, rep))
    v = dk.check_3_coskeletal(B)
    v.instance = fingerprint(B)
    v.details = {**v.details, "two_cat": B.name}
    return v


@register("coherent-nerve-agreement", "Simplicial functors from 𝔠(Δᵏ) into the hom-nerve enrichment agree "
          "with the explicit Duskin simplices.")
def _coherent(seed, rep, b):
    if rep == 0:
        B, k = dk.delooping(2), 4
    else:
        B, k = gen.random_small_two_cat(_rng("coherent-nerve-agreement", seed, rep)), 3
    v = dk.coherent_nerve_agreement(B, k)
    v.instance = fingerprint(B)
    return v


@register("duskin-dictionary", "Maps of Duskin nerves are exactly normal oplax functors: encode and decode are "
          "mutually inverse.")
def _dictionary(seed, rep, b):
    r = _rng("duskin-dictionary", seed, rep)
    kind = ("cocycle", "strict", "identity")[rep % 3]
    if kind == "cocycle":
        F = gen.random_cocycle_oplax(r, n=r.choice((1, 2)))
    elif kind == "strict":
        F = gen.random_strict_functor(r)
    else:
        F = dk.identity_oplax(gen.random_small_two_cat(r))
    v = dk.round_trip(F, 4)
    v.instance = fingerprint(F)
    v.details = {**v.details, "kind": kind}
    return v


@register("duskin-nerve-of-category", "For a 1-category viewed as a locally discrete 2-category the Duskin "
          "nerve is the ordinary nerve.")
def _duskin_cat(seed, rep, b):
    C = gen.random_category(_rng("duskin-nerve-of-category", seed, rep), min(3, b.max_objects))
    v = dk.nerve_agreement(C, 4)
    v.instance = fingerprint(C)
    return v


CUBE_CASES = [(n, i, j) for n in range(5) for i in range(n + 1) for j in range(i, n + 1)]


@register("coherent-hom-cube", "The hom posets of 𝔠(Δⁿ) have nerves isomorphic to cubes (Δ¹)^(j-i-1).",
          fixed_cases=len(CUBE_CASES))
def _cube(seed, rep, b):
    n, i, j = CUBE_CASES[rep]
    v = dk.cube_check(n, i, j)
    v.instance = f"P({n},{i},{j})"
    return v


@register("relative-straightening", "A fibration with a subcategory W containing the Cartesian arrows "
          "straightens to a pseudofunctor into relative categories.")
def _relative(seed, rep, b):
    r = _rng("relative-straightening", seed, rep)
    C = _small_base(r, b)
    q = _cart_over(r, C)
    E = q.total
    if rep % 2:
        W = set(E.morphisms)
    else:
        W = {m for m in E.morphisms if E.is_iso(m)} | set(q.cartesian)
        W |= {E.compose(g, f) for f in W for g in W if E.tgt(f) == E.src(g)}
    R = dk.relative_fibration_straighten(q, W)
    ok = all(R.weak[c] <= set(R.pseudofunctor.value[c].morphisms) for c in C.objects)
    return VerdictReport("relative-straightening", ok, instance=fingerprint(q.proj),
                         details={"W": "all" if rep % 2 else "isos+cartesian"})


# ------------------------------------------------------------- collages
def _small_functor(r, b):
    E = gen.random_category(r, 2, max_coloured=0)
    B = gen.random_category(r, 2, max_coloured=0)
    return gen.random_functor(r, E, B)


@register("collage-pushout", "The left collage of p: E → B is the pushout of B ← E → E × [1].")
def _collage(seed, rep, b):
    r = _rng("collage-pushout", seed, rep)
    p = _small_functor(r, b)
    v = collage_pushout_check(p, b.probe_categories(), right=bool(rep % 2))
    v.instance = fingerprint(p)
    return v


@register("collage-undercategory", "Restriction from functors on the collage to functors on B is a fibration "
          "whose fibers are undercategories.")
def _undercat(seed, rep, b):
    r = _rng("collage-undercategory", seed, rep)
    E = gen.random_category(r, 2, max_coloured=0)
    B = ordinal(r.choice((0, 1)))
    p = gen.random_functor(r, E, B)
    D = ordinal(r.choice((0, 1)))
    F = gen.random_functor(r, B, D)
    v = undercat_fiber_check(p, D, F)
    v.instance = fingerprint(p, F)
    return v


@register("fibration-two-of-three", "With p = q∘f and the four hypotheses on p, q and the fibers, f is a "
          "fibration; the discrete case needs only p and q discrete.")
def _two_of_three(seed, rep, b):
    r = _rng("fibration-two-of-three", seed, rep)
    C = gen.random_category(r, 2, max_coloured=0)
    if rep % 2:
        presheaves = list(islice(iter_presheaves(C, 2), 40))
        _, p = elements(r.choice(presheaves))
        _, q = elements(r.choice(presheaves))
        fs = list(islice(functors_over(p, q), 50))
        f = r.choice(fs) if fs else identity_functor(p.dom)
        if not fs:
            q = p
        v = two_of_three_discrete(f, p, q)
        v.instance = fingerprint(f, p, q)
        return v
    qF = _cart_over(r, C)
    pF = _cart_over(r, C)
    fs = list(islice(functors_over(pF.proj, qF.proj), 50))
    if fs:
        f, p, q = r.choice(fs), pF.proj, qF.proj
    else:
        f, p, q = identity_functor(qF.total), qF.proj, qF.proj
    v = two_of_three_cart(f, p, q)
    v.instance = fingerprint(f, q)
    return v


@register("discrete-fibration-slice", "Composition with a discrete fibration p: K → C identifies discrete "
          "fibrations over K with discrete fibrations over C sliced over p.")
def _dfib(seed, rep, b):
    r = _rng("discrete-fibration-slice", seed, rep)
    C = gen.random_category(r, 2, max_coloured=0)
    X = r.choice(list(islice(iter_presheaves(C, 2), 30)))
    _, p = elements(X)
    if p.dom.n_objects > 3:
        X = next(iter_presheaves(C, 1))
        _, p = elements(X)
    v = dfib_slice_equiv(p, max_fiber=1 if p.dom.n_objects > 2 else 2)
    v.instance = fingerprint(p)
    return v


# ------------------------------------------------------------------ run
def list_suites() -> list[dict]:
    return [{"id": s.id, "citation": s.citation, "default_reps": s.fixed_cases or s.default_reps}
            for s in REGISTRY.values()]


def get_suite(suite_id: str) -> Suite:
    try:
        return REGISTRY[suite_id]
    except KeyError:
        raise UnknownSuite(f"no suite named {suite_id!r}", {"known": sorted(REGISTRY)}) from None


def run_case(suite_id: str, seed: int, rep: int, bounds: Bounds = Bounds()) -> VerdictReport:
    s = get_suite(suite_id)
    bounds.validate()
    t = time.perf_counter()
    v = s.run_case(seed, rep, bounds)
    v.seconds = time.perf_counter() - t
    v.suite = s.id
    v.citation = s.citation
    v.case = {"suite": s.id, "seed": seed, "rep": rep, "bounds": asdict(bounds)}
    return v


def run(suite_id: str, seed: int = 0, reps: int | None = None, bounds: Bounds = Bounds()) -> list[VerdictReport]:
    """Every case of a suite, in case order; deterministic given the arguments."""
    s = get_suite(suite_id)
    n = s.fixed_cases if s.fixed_cases is not None else (reps or s.default_reps)
    if s.fixed_cases is not None and reps is not None:
        n = min(reps, s.fixed_cases)
    return [run_case(suite_id, seed, rep, bounds) for rep in range(n)]
