"""
iQuantum verification report writer.

Renders a VerificationReport either as JSON lines (one record per check, keys
in a fixed order, no timing so that two runs with the same seed are
byte-identical) or as a plain-text summary: a per-suite count table followed
by every theorem failure and every finding with its witness.

Public API
----------
render_records(report: VerificationReport, timing: bool = False) -> str
render_text(report: VerificationReport, witness_limit: int = 400) -> str
write_report(report: VerificationReport, fmt: str, out: str | Path | None) -> None
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

from config.constants import STATUS_FAIL, STATUS_FINDING
from services.verify import CheckRecord, VerificationReport

logger = logging.getLogger(__name__)

FORMAT_TEXT = "text"
FORMAT_RECORDS = "records"
FORMATS = (FORMAT_TEXT, FORMAT_RECORDS)

_RULE = "─" * 78


def render_records(report: VerificationReport, timing: bool = False) -> str:
    lines = [json.dumps(record, ensure_ascii=False) for record in report.to_records(timing)]
    return "\n".join(lines) + ("\n" if lines else "")


def _clip(text: str, limit: int) -> str:
    if limit <= 0 or len(text) <= limit:
        return text
    return text[:limit] + f" … ({len(text) - limit} more chars)"


def _detail(record: CheckRecord, witness_limit: int) -> str:
    params = ", ".join(f"{k}={v}" for k, v in sorted(record.params.items()))
    head = f"  [{record.status}] {record.case}" + (f"  ({params})" if params else "")
    if not record.witness:
        return head
    return f"{head}\n      witness: {_clip(record.witness, witness_limit)}"


def render_text(report: VerificationReport, witness_limit: int = 400) -> str:
    table = report.summary_table()
    failures = report.theorem_failures()
    findings = report.findings()

    out = [
        f"iQuantum verification report: datum {report.datum}",
        _RULE,
        table.to_string(index=False) if not table.empty else "(no checks)",
        _RULE,
    ]
    if failures:
        out.append(f"Theorem-class failures ({len(failures)}):")
        out.extend(_detail(r, witness_limit) for r in failures)
    else:
        out.append("All theorem-class checks passed.")
    if findings:
        out.append(f"Findings ({len(findings)}):")
        out.extend(
            _detail(r, witness_limit) if r.witness or r.zero is None
            else f"  [{STATUS_FINDING}] {r.case}: vanishes"
            for r in findings
        )
    out.append(f"Overall: {'OK' if report.ok else STATUS_FAIL.upper()}")
    return "\n".join(out) + "\n"


def write_report(report: VerificationReport, fmt: str = FORMAT_TEXT, out: str | Path | None = None) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    payload = render_records(report) if fmt == FORMAT_RECORDS else render_text(report)
    if out is None:
        sys.stdout.write(payload)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(payload, encoding="utf-8")
    logger.info("Wrote %d records to %s", len(report.records), path)
