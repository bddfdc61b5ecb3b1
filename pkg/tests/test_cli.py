import json

import pytest

from fincatlab.errors import MalformedWitness, SizeBoundExceeded, UnknownSuite
from fincatlab.verify import generate, list_suites, main, replay, run
from fincatlab.verify.cli import report_json
from fincatlab.verify.suites import Bounds


def test_catalog_has_citations():
    suites = list_suites()
    assert len(suites) >= 15
    assert all(s["citation"] for s in suites)
    assert len({s["id"] for s in suites}) == len(suites)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run("no-such-suite")
    assert main(["verify", "no-such-suite"]) == 2


def test_bounds_are_capped():
    with pytest.raises(SizeBoundExceeded):
        run("nat-as-end", reps=1, bounds=Bounds(max_objects=100))


def test_run_is_deterministic_modulo_timing():
    a = report_json(run("nat-as-end", seed=7, reps=10), with_timing=False)
    b = report_json(run("nat-as-end", seed=7, reps=10), with_timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["failed"] == 0 and a["passed"] == 10


def test_different_seeds_give_different_instances():
    a = {r.instance for r in run("nat-as-end", seed=1, reps=10)}
    b = {r.instance for r in run("nat-as-end", seed=2, reps=10)}
    assert a != b


@pytest.mark.parametrize("kind", ["fincat", "functor", "diagram", "two_cat", "oplax", "chain"])
def test_generate_is_pure(kind):
    assert generate(kind, 42, 3) == generate(kind, 42, 3)


def test_replay_reproduces_case():
    reports = run("esd-twisted", seed=3, reps=3)
    again = replay(reports[2].to_json())
    assert again.passed and again.instance == reports[2].instance


def test_replay_rejects_garbage():
    with pytest.raises(MalformedWitness):
        replay({"suite": "nat-as-end"})


def test_cli_round_trip(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "realization", "--reps", "4", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["passed"] == 4 and data["suite"] == "realization"
    assert main(["replay", str(out)]) == 0
    assert main(["list"]) == 0
    assert "nat-as-end" in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["replay", str(bad)]) == 2


def test_cli_generate_writes_json(tmp_path):
    out = tmp_path / "c.json"
    assert main(["generate", "fincat", "--seed", "42", "--json", str(out)]) == 0
    assert json.loads(out.read_text())["kind"] == "category"


def test_probe_option(tmp_path):
    assert main(["verify", "lax-colimit", "--reps", "1", "--probes", "[0],[1]"]) == 0
    assert main(["verify", "lax-colimit", "--reps", "1", "--probes", "nope"]) == 2
