"""Check results and report emission.

Reports are deterministic given their contents: JSON uses sorted keys and a
fixed layout, text is a fixed-width table.  Wall-clock fields are the one
exception to cross-run byte identity; `stable` zeroes them for byte-for-byte
comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import __version__

STATUSES = ("Pass", "ProbablyPass", "Fail", "Skipped", "Overflowed")


@dataclass
class CheckResult:
    check_id: str
    paper_anchor: str
    mode: str                    # symbolic | sampled | numeric
    status: str                  # one of STATUSES
    residual_terms: int = 0
    witness: Optional[str] = None
    time_ms: int = 0

    def to_dict(self) -> Dict:
        return {
            "check_id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "mode": self.mode,
            "status": self.status,
            "residual_terms": self.residual_terms,
            "witness": self.witness,
            "time_ms": self.time_ms,
        }


@dataclass
class Report:
    version: str
    config: Dict
    results: List[CheckResult] = field(default_factory=list)

    def summary(self) -> Dict[str, int]:
        out = {"pass": 0, "probably_pass": 0, "fail": 0, "skipped": 0,
               "overflowed": 0, "total": len(self.results)}
        key = {"Pass": "pass", "ProbablyPass": "probably_pass",
               "Fail": "fail", "Skipped": "skipped",
               "Overflowed": "overflowed"}
        for r in self.results:
            out[key[r.status]] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status != "Fail" for r in self.results)

    def to_json(self, stable: bool = False) -> str:
        results = [r.to_dict() for r in self.results]
        if stable:
            for r in results:
                r["time_ms"] = 0
        doc = {
            "version": self.version,
            "config": self.config,
            "results": results,
            "summary": self.summary(),
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        w_id = max([len("check"), *(len(r.check_id) for r in self.results)])
        lines = [
            f"{'check':<{w_id}}  {'mode':<8}  {'status':<12}  "
            f"{'resid':>6}  {'ms':>7}  witness",
            "-" * (w_id + 50),
        ]
        for r in self.results:
            wit = (r.witness or "")[:120]
            lines.append(
                f"{r.check_id:<{w_id}}  {r.mode:<8}  {r.status:<12}  "
                f"{r.residual_terms:>6}  {r.time_ms:>7}  {wit}")
        s = self.summary()
        lines.append("-" * (w_id + 50))
        lines.append(
            f"pass={s['pass']} probably_pass={s['probably_pass']} "
            f"fail={s['fail']} skipped={s['skipped']} "
            f"overflowed={s['overflowed']} total={s['total']}")
        return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "text",
                path: Optional[str] = None, stable: bool = False) -> str:
    """Render (and optionally write) a report; returns the rendered text."""
    if fmt == "json":
        body = report.to_json(stable=stable)
    elif fmt == "text":
        body = report.to_text()
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(body)
    return body


def make_report(config: Dict, results: List[CheckResult]) -> Report:
    return Report(version=__version__, config=dict(sorted(config.items())),
                  results=results)
