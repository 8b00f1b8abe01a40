"""Check results and their JSON / markdown serializations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = "pass"
FAIL = "fail"
VARIANT = "reported-variant"
NOT_APPLICABLE = "not-applicable"

EXACT = "exact"
SAMPLED_EXACT = "sampled-exact"
SAMPLED_NUMERIC = "sampled-numeric"
DIAGNOSTIC = "diagnostic"

GATING_MODES = (EXACT, SAMPLED_EXACT)

REPORT_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["lemma_id", "params", "status", "millis"],
        "properties": {
            "lemma_id": {"type": "string"},
            "params": {"type": "object"},
            "status": {"enum": [PASS, FAIL, VARIANT, NOT_APPLICABLE]},
            "mode": {"enum": [EXACT, SAMPLED_EXACT, SAMPLED_NUMERIC, DIAGNOSTIC]},
            "ratio": {"type": ["number", "null"]},
            "counterexample": {},
            "details": {"type": "object"},
            "millis": {"type": "number"},
        },
    },
}


@dataclass
class CheckResult:
    lemma_id: str
    params: Dict[str, Any]
    status: str
    mode: str = EXACT
    ratio: Optional[float] = None
    counterexample: Any = None
    details: Dict[str, Any] = field(default_factory=dict)
    millis: float = 0.0

    @property
    def gating(self) -> bool:
        return self.mode in GATING_MODES

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def sort_key(self):
        return (self.lemma_id, json.dumps(self.params, sort_keys=True))

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "lemma_id": self.lemma_id,
            "params": self.params,
            "status": self.status,
            "mode": self.mode,
        }
        if self.ratio is not None:
            out["ratio"] = self.ratio
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        out["millis"] = round(self.millis, 3) if timing else 0
        return out


class Report:
    """Ordered collection of :class:`CheckResult` (sorted by lemma id, then params)."""

    def __init__(self, results: Optional[List[CheckResult]] = None):
        self.results: List[CheckResult] = sorted(results or [], key=CheckResult.sort_key)

    def extend(self, results: List[CheckResult]) -> None:
        self.results = sorted(self.results + list(results), key=CheckResult.sort_key)

    def __iter__(self):
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def by_id(self, lemma_id: str) -> List[CheckResult]:
        return [r for r in self.results if r.lemma_id == lemma_id]

    def lemma_ids(self) -> List[str]:
        return sorted({r.lemma_id for r in self.results})

    @property
    def exact_failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.failed and r.gating]

    @property
    def ok(self) -> bool:
        return not self.exact_failures

    def to_json(self, timing: bool = True, indent: Optional[int] = 2) -> str:
        return json.dumps([r.to_dict(timing) for r in self.results], indent=indent, sort_keys=True)

    def to_markdown(self) -> str:
        lines = ["| lemma_id | params | mode | status | ratio | millis |",
                 "|---|---|---|---|---|---|"]
        for r in self.results:
            params = ", ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            ratio = "" if r.ratio is None else f"{r.ratio:.6g}"
            lines.append(f"| {r.lemma_id} | {params} | {r.mode} | {r.status} | {ratio} | {r.millis:.0f} |")
        failed = len(self.exact_failures)
        lines.append("")
        lines.append(f"{len(self.results)} checks, {failed} exact failure(s)")
        return "\n".join(lines) + "\n"


def validate_report_json(payload) -> None:
    """Minimal structural validation against :data:`REPORT_SCHEMA`."""
    if isinstance(payload, str):
        payload = json.loads(payload)
    if not isinstance(payload, list):
        raise ValueError("report must be a JSON list")
    allowed_status = REPORT_SCHEMA["items"]["properties"]["status"]["enum"]
    allowed_mode = REPORT_SCHEMA["items"]["properties"]["mode"]["enum"]
    for i, entry in enumerate(payload):
        if not isinstance(entry, dict):
            raise ValueError(f"entry {i} is not an object")
        for key in REPORT_SCHEMA["items"]["required"]:
            if key not in entry:
                raise ValueError(f"entry {i} lacks {key!r}")
        if not isinstance(entry["lemma_id"], str) or not isinstance(entry["params"], dict):
            raise ValueError(f"entry {i} has malformed lemma_id/params")
        if entry["status"] not in allowed_status:
            raise ValueError(f"entry {i} has unknown status {entry['status']!r}")
        if "mode" in entry and entry["mode"] not in allowed_mode:
            raise ValueError(f"entry {i} has unknown mode {entry['mode']!r}")
        if "ratio" in entry and entry["ratio"] is not None and not isinstance(entry["ratio"], (int, float)):
            raise ValueError(f"entry {i} has non-numeric ratio")
        if not isinstance(entry["millis"], (int, float)):
            raise ValueError(f"entry {i} has non-numeric millis")
