"""Structured pass/fail results."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field


@dataclass
class VerdictReport:
    suite: str
    passed: bool
    citation: str = ""
    instance: str = ""
    witness: object = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0
    case: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        d = asdict(self)
        d["witness"] = _jsonable(self.witness)
        d["details"] = _jsonable(self.details)
        d["case"] = _jsonable(self.case)
        return d


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    return repr(x)


def passed(suite: str = "", **details) -> VerdictReport:
    return VerdictReport(suite, True, details=details)


def failed(suite: str = "", witness=None, **details) -> VerdictReport:
    return VerdictReport(suite, False, witness=witness, details=details)


def combine(suite: str, reports) -> VerdictReport:
    """All sub-reports must pass; the first failure supplies the witness."""
    reports = list(reports)
    details = {}
    for r in reports:
        details.update(r.details)
    for r in reports:
        if not r.passed:
            return VerdictReport(suite, False, witness=r.witness, details=details)
    return VerdictReport(suite, True, details=details)
