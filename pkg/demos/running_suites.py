"""Running verification suites from Python, and replaying a recorded case.

The same flow from a shell::

    fincatlab list
    fincatlab verify esd-twisted --seed 3 --reps 5 --json report.json
    fincatlab replay report.json

Run with ``python demos/running_suites.py``.
"""
import json

from fincatlab.verify import generate, list_suites, replay, run
from fincatlab.verify.cli import report_json

print(f"{len(list_suites())} suites registered; the first three:")
for s in list_suites()[:3]:
    print(f"  {s['id']}: {s['citation']}")

reports = run("esd-twisted", seed=3, reps=5)
summary = report_json(reports, with_timing=False)
print(f"\nesd-twisted: {summary['passed']} passed, {summary['failed']} failed")

again = replay(json.loads(json.dumps(reports[4].to_json())))
print("replayed case 4:", again.passed, "same instance:", again.instance == reports[4].instance)

instance = generate("fincat", 42, 3)
print(f"\ngenerate('fincat', 42) gives {len(instance['objects'])} objects,",
      f"{len(instance['morphisms'])} morphisms, and the same JSON every time:",
      instance == generate("fincat", 42, 3))
