# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Verification Runner Tests
# ═══════════════════════════════════════════════════════════════════════════════

import pytest

from config.constants import (
    EXPECT_FINDING,
    EXPECT_NONZERO,
    EXPECT_ZERO,
    STATUS_FAIL,
    STATUS_FINDING,
    STATUS_NONZERO_AS_EXPECTED,
    STATUS_PASS,
)
from core import udouble
from core.cartan import from_preset
from core.iqg import relation_set
from core.udouble import DegreeBudgetExceeded
from services import verify
from services.suites import SUITE_IDS, get_suite
from services.verify import (
    METHOD_FAST,
    CheckCase,
    CheckRecord,
    Outcome,
    SuiteSpec,
    UnknownSuiteError,
    VerificationReport,
    classify,
    iexpr_case,
    run_case,
    run_suite,
    run_suites,
)


@pytest.fixture(autouse=True)
def fresh_cache():
    udouble.clear_cache()
    yield
    udouble.clear_cache()


def spec_for(suite, preset="a2-swap", **kwargs):
    return SuiteSpec(suite=suite, datum=from_preset(preset), **kwargs)


def record(case, status, suite="demo", witness=""):
    return CheckRecord(suite, case, {"i": 1}, EXPECT_ZERO, status, status == STATUS_PASS, witness, "exact", 0.5)


# ─────────────────────────────────────────────────────────────────────────────
# SUITE PARAMETERS & CLASSIFICATION
# ─────────────────────────────────────────────────────────────────────────────

class TestSuiteSpec:
    def test_defaults(self):
        spec = spec_for("scalars")
        assert spec.e_set == (1, -1)
        assert spec.jobs == 1

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="method"):
            spec_for("scalars", method="guess")

    @pytest.mark.parametrize("e_set", [(), (2,), (1, 0)])
    def test_bad_e_set(self, e_set):
        with pytest.raises(ValueError):
            spec_for("scalars", e_set=e_set)


class TestClassify:
    @pytest.mark.parametrize(
        "expect,zero,status",
        [
            (EXPECT_ZERO, True, STATUS_PASS),
            (EXPECT_ZERO, False, STATUS_FAIL),
            (EXPECT_NONZERO, False, STATUS_NONZERO_AS_EXPECTED),
            (EXPECT_NONZERO, True, STATUS_FAIL),
            (EXPECT_FINDING, True, STATUS_FINDING),
            (EXPECT_FINDING, False, STATUS_FINDING),
        ],
    )
    def test_status(self, expect, zero, status):
        assert classify(expect, Outcome(zero)) == status

    @pytest.mark.parametrize(
        "expect,status",
        [(EXPECT_ZERO, STATUS_FAIL), (EXPECT_NONZERO, STATUS_FAIL), (EXPECT_FINDING, STATUS_FINDING)],
    )
    def test_disagreement_overrides(self, expect, status):
        assert classify(expect, Outcome(True, disagreement="modular/exact disagreement")) == status


class TestRunCase:
    @staticmethod
    def _exhausted(spec):
        raise DegreeBudgetExceeded("degree budget exceeded")

    def test_budget_on_theorem_is_failure(self):
        case = CheckCase("demo:budget", {}, EXPECT_ZERO, self._exhausted)
        rec = run_case("demo", case, spec_for("scalars"))
        assert rec.status == STATUS_FAIL
        assert rec.zero is None
        assert rec.witness == "degree budget exceeded"

    def test_budget_on_finding_stays_finding(self):
        case = CheckCase("demo:budget", {}, EXPECT_FINDING, self._exhausted)
        assert run_case("demo", case, spec_for("scalars")).status == STATUS_FINDING

    def test_method_label_follows_outcome(self):
        bare = CheckCase("demo:ok", {}, EXPECT_ZERO, lambda spec: Outcome(True))
        assert run_case("demo", bare, spec_for("scalars")).method == "exact"
        assert run_case("demo", bare, spec_for("scalars", method=METHOD_FAST)).method == "exact"
        sampled = CheckCase("demo:ok", {}, EXPECT_ZERO, lambda spec: Outcome(True, modular_zero=True))
        rec = run_case("demo", sampled, spec_for("scalars", method=METHOD_FAST))
        assert rec.method == "modular+exact"
        assert rec.modular_zero is True


class TestSelfChecks:
    @staticmethod
    def _relation_case(datum, expect=EXPECT_ZERO):
        name, rel = relation_set(datum)[0]
        return iexpr_case(f"demo:{name}", {}, expect, datum, lambda: rel)

    def test_modular_verdict_is_recorded(self):
        d = from_preset("a1xa1-swap")
        rec = run_case("demo", self._relation_case(d), SuiteSpec("demo", d, method=METHOD_FAST))
        assert rec.status == STATUS_PASS
        assert rec.method == "modular+exact"
        assert rec.as_dict(timing=False)["modular_zero"] is True

    def test_modular_disagreement_fails(self, monkeypatch):
        monkeypatch.setattr(verify, "embed_is_zero_modular", lambda *args, **kwargs: False)
        d = from_preset("a1xa1-swap")
        rec = run_case("demo", self._relation_case(d), SuiteSpec("demo", d, method=METHOD_FAST))
        assert rec.status == STATUS_FAIL
        assert rec.zero is True
        assert rec.modular_zero is False
        assert rec.witness.startswith("modular/exact disagreement")

    def test_modular_disagreement_on_finding_stays_finding(self, monkeypatch):
        monkeypatch.setattr(verify, "embed_is_zero_modular", lambda *args, **kwargs: False)
        d = from_preset("a1xa1-swap")
        case = self._relation_case(d, EXPECT_FINDING)
        assert run_case("demo", case, SuiteSpec("demo", d, method=METHOD_FAST)).status == STATUS_FINDING

    def test_exact_method_skips_modular_pass(self, monkeypatch):
        monkeypatch.setattr(verify, "embed_is_zero_modular", lambda *args, **kwargs: pytest.fail("sampled"))
        d = from_preset("a1xa1-swap")
        rec = run_case("demo", self._relation_case(d), SuiteSpec("demo", d))
        assert rec.modular_zero is None
        assert rec.status == STATUS_PASS

    def test_oracle_components_on_request(self, monkeypatch):
        calls = []

        def fake(datum, tri):
            calls.append(len(tri))
            return ["oracle disagreement at sign + weight (1, 0)"]

        monkeypatch.setattr(verify, "oracle_disagreements", fake)
        d = from_preset("a1xa1-swap")
        assert run_case("demo", self._relation_case(d), SuiteSpec("demo", d)).status == STATUS_PASS
        assert calls == []
        rec = run_case("demo", self._relation_case(d), SuiteSpec("demo", d, oracle_components=True))
        assert rec.status == STATUS_FAIL
        assert rec.witness.startswith("oracle disagreement")
        assert len(calls) == 1

    def test_oracle_components_agree_on_presentation(self):
        report = run_suite(spec_for("presentation", "a1xa1-swap", oracle_components=True))
        assert report.ok


# ─────────────────────────────────────────────────────────────────────────────
# REGISTRY
# ─────────────────────────────────────────────────────────────────────────────

class TestRegistry:
    @pytest.mark.parametrize("suite_id", SUITE_IDS)
    def test_suites_instantiate(self, suite_id):
        handler = get_suite(suite_id)
        assert handler.suite_id == suite_id
        assert handler.description

    def test_unknown_suite(self):
        with pytest.raises(UnknownSuiteError, match="Unknown suite: nope"):
            get_suite("nope")

    @pytest.mark.parametrize("suite_id", SUITE_IDS)
    @pytest.mark.parametrize("preset", ["a1xa1-swap", "a2-swap", "a3-tau13"])
    def test_case_labels(self, suite_id, preset):
        cases = get_suite(suite_id).cases(spec_for(suite_id, preset))
        labels = [c.label for c in cases]
        assert len(labels) == len(set(labels))
        assert all(label.startswith(f"{suite_id}:") for label in labels)

    def test_orbit_only_suites_skip_fixed_nodes(self):
        d = from_preset("a3-tau13")
        bkl = get_suite("bkl").cases(SuiteSpec("bkl", d))
        assert [c.params["i"] for c in bkl] == [1]

    def test_braid_suite_needs_orthogonal_orbit(self):
        assert get_suite("braid_conjecture").cases(spec_for("braid_conjecture")) == []
        cases = get_suite("braid_conjecture").cases(spec_for("braid_conjecture", "a1xa1-swap", e_set=(1,)))
        assert all(c.expect == EXPECT_FINDING for c in cases)
        assert len(cases) == 6


# ─────────────────────────────────────────────────────────────────────────────
# RUNNERS
# ─────────────────────────────────────────────────────────────────────────────

class TestRunSuite:
    def test_scalar_identities(self):
        report = run_suite(spec_for("scalars"))
        assert len(report.records) == 71
        assert report.ok
        assert all(r.status == STATUS_PASS for r in report.records)

    def test_records_sorted_by_case(self):
        report = run_suite(spec_for("scalars"))
        cases = [r.case for r in report.records]
        assert cases == sorted(cases)

    @pytest.mark.parametrize("preset", ["a1xa1-swap", "a2-swap"])
    def test_bkl(self, preset):
        report = run_suite(spec_for("bkl", preset))
        assert report.ok
        assert [r.case for r in report.records] == ["bkl:i=1"]

    def test_parallel_matches_serial(self):
        serial = run_suite(spec_for("rank1", "a1xa1-swap", max_nm=2))
        parallel = run_suite(spec_for("rank1", "a1xa1-swap", max_nm=2, jobs=4))
        assert serial.to_records(timing=False) == parallel.to_records(timing=False)
        assert serial.ok

    def test_fast_method(self):
        report = run_suite(spec_for("presentation", "a1xa1-swap", method=METHOD_FAST))
        assert report.ok
        assert {r.method for r in report.records} == {"modular+exact"}

    def test_run_suites_concatenates(self):
        report = run_suites(["bkl", "scalars"], spec_for("bkl", "a1xa1-swap"))
        assert {r.suite for r in report.records} == {"bkl", "scalars"}
        assert report.records[0].suite == "bkl"

    def test_unknown_name(self):
        with pytest.raises(UnknownSuiteError):
            run_suites(["nope"], spec_for("scalars"))


# ─────────────────────────────────────────────────────────────────────────────
# REPORT
# ─────────────────────────────────────────────────────────────────────────────

class TestReport:
    def test_to_records_key_order(self):
        report = VerificationReport("demo", [record("demo:a", STATUS_PASS)])
        rec = report.to_records(timing=False)[0]
        assert list(rec) == ["suite", "case", "params", "expect", "status", "zero", "witness", "method", "modular_zero"]
        assert "elapsed" in report.to_records()[0]

    def test_ok_ignores_findings(self):
        report = VerificationReport("demo", [record("demo:a", STATUS_PASS), record("demo:b", STATUS_FINDING)])
        assert report.ok
        assert len(report.findings()) == 1
        report.records.append(record("demo:c", STATUS_FAIL))
        assert not report.ok

    def test_summary_table(self):
        report = VerificationReport(
            "demo",
            [
                record("demo:a", STATUS_PASS),
                record("demo:b", STATUS_FAIL),
                record("other:a", STATUS_PASS, suite="other"),
            ],
        )
        table = report.summary_table().set_index("suite")
        assert table.loc["demo", "checks"] == 2
        assert table.loc["demo", STATUS_FAIL] == 1
        assert table.loc["other", STATUS_FINDING] == 0

    def test_empty_summary_table(self):
        table = VerificationReport("demo").summary_table()
        assert table.empty
        assert "checks" in table.columns
