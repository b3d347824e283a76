# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Report Writer Tests
# ═══════════════════════════════════════════════════════════════════════════════

import json

import pytest

from config.constants import EXPECT_FINDING, EXPECT_ZERO, STATUS_FAIL, STATUS_FINDING, STATUS_PASS
from services.report_generator import (
    FORMAT_RECORDS,
    FORMAT_TEXT,
    render_records,
    render_text,
    write_report,
)
from services.verify import CheckRecord, VerificationReport


def make_report(*statuses, witness="0|1,0,0,1|=num:[(0,1)];den:[(0,1)]"):
    records = []
    for n, status in enumerate(statuses):
        expect = EXPECT_FINDING if status == STATUS_FINDING else EXPECT_ZERO
        zero = status == STATUS_PASS
        records.append(
            CheckRecord("demo", f"demo:case{n}", {"m": n}, expect, status, zero, "" if zero else witness, "exact", 0.25)
        )
    return VerificationReport("a2-swap", records)


class TestRenderRecords:
    def test_one_line_per_record(self):
        text = render_records(make_report(STATUS_PASS, STATUS_FAIL))
        lines = text.splitlines()
        assert len(lines) == 2
        first = json.loads(lines[0])
        assert first["case"] == "demo:case0"
        assert first["params"] == {"m": 0}
        assert "elapsed" not in first

    def test_timing_on_request(self):
        text = render_records(make_report(STATUS_PASS), timing=True)
        assert json.loads(text)["elapsed"] == 0.25

    def test_empty(self):
        assert render_records(VerificationReport("a2-swap")) == ""

    def test_stable(self):
        assert render_records(make_report(STATUS_PASS, STATUS_FINDING)) == render_records(
            make_report(STATUS_PASS, STATUS_FINDING)
        )


class TestRenderText:
    def test_all_passed(self):
        text = render_text(make_report(STATUS_PASS, STATUS_PASS))
        assert text.startswith("iQuantum verification report: datum a2-swap")
        assert "All theorem-class checks passed." in text
        assert text.rstrip().endswith("Overall: OK")

    def test_failure_section(self):
        text = render_text(make_report(STATUS_PASS, STATUS_FAIL))
        assert "Theorem-class failures (1):" in text
        assert "[fail] demo:case1  (m=1)" in text
        assert "witness: 0|1,0,0,1|" in text
        assert text.rstrip().endswith("Overall: FAIL")

    def test_findings_section(self):
        report = make_report(STATUS_FINDING)
        report.records[0].zero = True
        report.records[0].witness = ""
        text = render_text(report)
        assert "Findings (1):" in text
        assert "demo:case0: vanishes" in text

    def test_witness_is_clipped(self):
        text = render_text(make_report(STATUS_FAIL, witness="x" * 50), witness_limit=10)
        assert "x" * 10 + " … (40 more chars)" in text

    def test_empty_report(self):
        assert "(no checks)" in render_text(VerificationReport("a2-swap"))


class TestWriteReport:
    def test_to_file(self, tmp_path):
        out = tmp_path / "reports" / "run.jsonl"
        write_report(make_report(STATUS_PASS), FORMAT_RECORDS, out)
        assert json.loads(out.read_text(encoding="utf-8"))["status"] == STATUS_PASS

    def test_to_stdout(self, capsys):
        write_report(make_report(STATUS_PASS), FORMAT_TEXT)
        assert "Overall: OK" in capsys.readouterr().out

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="format"):
            write_report(make_report(STATUS_PASS), "pdf")
