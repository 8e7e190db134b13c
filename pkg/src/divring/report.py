"""Deterministic audit reports: per-check aggregates plus explicit failure
witnesses, rendered as text or JSON with identical verdicts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class CheckRecord:
    axiom: str
    instance: str
    verdict: str  # "pass" or "fail"
    witness: Optional[str] = None

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "instance": self.instance, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AuditReport:
    title: str
    config: dict
    counts: Dict[str, List[int]] = field(default_factory=dict)  # axiom -> [tested, failed]
    failures: List[CheckRecord] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def record(self, axiom: str, instance: str, passed: bool, witness: Optional[str] = None):
        tested_failed = self.counts.setdefault(axiom, [0, 0])
        tested_failed[0] += 1
        if not passed:
            tested_failed[1] += 1
            self.failures.append(CheckRecord(axiom, instance, "fail", witness))

    def note(self, text: str):
        self.notes.append(text)

    @property
    def passed(self) -> bool:
        return not self.failures

    def failures_for(self, axiom: str) -> List[CheckRecord]:
        return [f for f in self.failures if f.axiom == axiom]

    def to_text(self) -> str:
        lines = ["== %s ==" % self.title]
        for key in sorted(self.config):
            lines.append("config %s = %s" % (key, self.config[key]))
        for axiom in self.counts:
            tested, failed = self.counts[axiom]
            lines.append("%-45s tested %-6d failed %-5d %s"
                         % (axiom, tested, failed, "PASS" if failed == 0 else "FAIL"))
        for rec in self.failures:
            lines.append("failure: %s at %s%s"
                         % (rec.axiom, rec.instance,
                            (" | " + rec.witness) if rec.witness else ""))
        for note in self.notes:
            lines.append("note: " + note)
        lines.append("verdict: %s" % ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "config": {k: str(v) for k, v in sorted(self.config.items())},
            "checks": [
                {"axiom": a, "tested": t, "failed": f, "verdict": "pass" if f == 0 else "fail"}
                for a, (t, f) in self.counts.items()
            ],
            "failures": [rec.to_json() for rec in self.failures],
            "notes": list(self.notes),
            "verdict": "pass" if self.passed else "fail",
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)
