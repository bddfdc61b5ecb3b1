"""One test per acceptance criterion; each prints a pass/fail line with its time bound."""
import time

import pytest

from conftest import ACCEPTANCE_LINES
from fincatlab import is_isomorphic, ordinal
from fincatlab.duskin import delooping, duskin_nerve
from fincatlab.twisted import interval_poset, interval_poset_iso, twisted_arrow
from fincatlab.verify import run


def report(number, title, bound, body):
    t = time.perf_counter()
    ok, note = body()
    elapsed = time.perf_counter() - t
    within = elapsed < bound
    verdict = "PASS" if ok and within else "FAIL"
    line = f"criterion {number}: {verdict}  {title}  [{note}]  {elapsed:.2f}s (bound {bound:g}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


def suites(*specs):
    """Run ``(suite, minimum cases)`` pairs at seed 0 and summarize."""

    def body():
        notes, ok = [], True
        for sid, least in specs:
            rs = run(sid, seed=0)
            good = sum(r.passed for r in rs)
            ok &= good == len(rs) and len(rs) >= least
            notes.append(f"{sid} {good}/{len(rs)}")
        return ok, ", ".join(notes)

    return body


def test_criterion_1_twisted_arrow_shape():
    def body():
        counts = all(twisted_arrow(ordinal(n)).category.n_objects == (n + 1) * (n + 2) // 2 for n in range(6))
        isos = all(interval_poset_iso(n) is not None for n in range(6))
        sizes = all(interval_poset(n).n_objects == (n + 1) * (n + 2) // 2 for n in range(6))
        return counts and isos and sizes, "n ≤ 5 counts and interval poset isomorphisms"

    report(1, "twisted arrow categories of [n]", 1, body)


def test_criterion_2_nat_as_end():
    report(2, "natural transformations as an end", 30, suites(("nat-as-end", 100)))


def test_criterion_3_free_fibration_adjunction():
    def body():
        rs = run("free-fibration-adjunction", seed=0)
        kinds = {r.details["kind"] for r in rs}
        ok = all(rs) and len(rs) >= 50 and {"object", "arrow", "product"} <= kinds
        return ok, f"{sum(r.passed for r in rs)}/{len(rs)} cases, kinds {sorted(kinds)}"

    report(3, "free fibration adjunction", 60, body)


def test_criterion_4_sections_oplax_limit():
    def body():
        rs = run("sections-oplax-limit", seed=0)
        bases = {r.details["base"] for r in rs}
        ok = all(rs) and len(rs) >= 50 and bases == {"[1]", "[2]", "[1]x[1]"}
        return ok, f"{sum(r.passed for r in rs)}/{len(rs)} over {sorted(bases)}"

    report(4, "sections are the oplax limit", 60, body)


def test_criterion_5_lax_colimit():
    def body():
        rs = run("lax-colimit", seed=0)
        point = [r for r in rs if r.details.get("kind") == "constant point"]
        ok = all(rs) and len(rs) >= 30 and bool(point)
        return ok, f"{sum(r.passed for r in rs)}/{len(rs)}, {len(point)} constant point cases"

    report(5, "coCartesian construction is the lax colimit", 120, body)


def test_criterion_6_phi_and_fiber_formula():
    def body():
        ok, notes = suites(("phi-fibration", 20), ("exponential-fiber", 20))()
        ds = {r.details["D"] for r in run("exponential-fiber", seed=0)}
        return ok and ds == {"[0]", "[1]"}, f"{notes}, D in {sorted(ds)}"

    report(6, "Φ-fibration universal property and fiber formula", 120, body)


def test_criterion_7_mapping_simplex():
    report(7, "mapping simplex decompositions and fibers", 60, suites(("mapping-simplex", 20)))


def test_criterion_8_realization():
    report(8, "realization of horns, spines and prisms", 30, suites(("realization", 26)))


def test_criterion_9_duskin():
    def body():
        X = duskin_nerve(delooping(2), 3)
        counts = tuple(len(X.cells(k)) for k in range(4))
        ok, notes = suites(("duskin-3-coskeletal", 10), ("duskin-dictionary", 10),
                           ("coherent-nerve-agreement", 10))()
        return ok and counts == (1, 1, 2, 8), f"Z/2 counts {counts}; {notes}"

    report(9, "Duskin nerve", 120, body)


def test_criterion_10_collages_and_fibrations():
    report(10, "collages, two-of-three and discrete fibrations", 120,
           suites(("collage-pushout", 10), ("collage-undercategory", 10), ("fibration-two-of-three", 10),
                  ("discrete-fibration-slice", 10)))


def test_criterion_11_esd_twisted():
    report(11, "edgewise subdivision is the twisted arrow nerve", 30, suites(("esd-twisted", 30)))


@pytest.mark.parametrize("n", range(6))
def test_interval_poset_is_not_the_inner_to_outer_orientation(n):
    # the orientation matters: from n = 1 on, the un-flipped category is a different poset
    T = twisted_arrow(ordinal(n)).category
    assert is_isomorphic(T, interval_poset(n)) == (n == 0)
