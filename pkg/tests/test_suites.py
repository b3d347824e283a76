# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Suite Handler Tests
# ═══════════════════════════════════════════════════════════════════════════════

import pytest

from config.constants import (
    EXPECT_FINDING,
    EXPECT_NONZERO,
    STATUS_FINDING,
    STATUS_NONZERO_AS_EXPECTED,
    STATUS_PASS,
)
from core import udouble
from core.cartan import Weight, from_preset
from core.braid import tprime
from core.iqg import relation_set
from core.ncalg import GeneratorSymbol
from core.udouble import WeightBasis, words_of_weight
from services.suites import oracle
from services.suites.mutation import flipped_braid
from services.verify import SuiteSpec, run_suite


@pytest.fixture(autouse=True)
def fresh_cache():
    udouble.clear_cache()
    yield
    udouble.clear_cache()


def spec_for(suite, preset="a1xa1-swap", **kwargs):
    return SuiteSpec(suite=suite, datum=from_preset(preset), **kwargs)


def statuses(report):
    return {r.case: r.status for r in report.records}


# ─────────────────────────────────────────────────────────────────────────────
# THEOREM SUITES
# ─────────────────────────────────────────────────────────────────────────────

class TestTheoremSuites:
    def test_involutions(self):
        d = from_preset("a1xa1-swap")
        report = run_suite(spec_for("involutions"))
        assert len(report.records) == 2 * len(relation_set(d))
        assert set(statuses(report).values()) == {STATUS_PASS}

    def test_recursion(self):
        report = run_suite(spec_for("recursion", max_m=1))
        assert sorted(statuses(report)) == [
            "recursion:RR1:i=1:m=1:e=+1",
            "recursion:RR1:i=1:m=1:e=-1",
            "recursion:RR2:i=1:m=1:e=+1",
            "recursion:RR2:i=1:m=1:e=-1",
        ]
        assert report.ok

    def test_serre_lusztig_controls_below_threshold(self):
        report = run_suite(spec_for("serre_lusztig", "a2-swap", max_m=0))
        found = statuses(report)
        assert len(found) == 6
        controls = {case: s for case, s in found.items() if ":control:" in case}
        assert sorted(controls) == ["serre_lusztig:control:i=1:m=1:e=+1", "serre_lusztig:control:i=1:m=1:e=-1"]
        assert set(controls.values()) == {STATUS_NONZERO_AS_EXPECTED}
        assert all(s == STATUS_PASS for case, s in found.items() if case not in controls)

    def test_serre_lusztig_closed_forms_above_threshold(self):
        report = run_suite(spec_for("serre_lusztig", max_m=1))
        found = statuses(report)
        assert len(found) == 10
        assert sorted(case for case in found if ":HOSII" in case) == [
            "serre_lusztig:HOSII1:i=1:m=2",
            "serre_lusztig:HOSII2:i=1:m=2",
        ]
        assert set(found.values()) == {STATUS_PASS}

    @pytest.mark.slow
    def test_higher_serre_first_order(self):
        report = run_suite(spec_for("higher_serre", "a3-tau13", max_m=1, max_n=1, e_set=(1,)))
        found = statuses(report)
        assert sorted(found) == [
            "higher_serre:recursion:i=1:j=2:n=1:m=0:e=+1",
            "higher_serre:recursion:i=1:j=2:n=1:m=1:e=+1",
            "higher_serre:recursion:i=1:j=2:n=1:m=2:e=+1",
            "higher_serre:ygen':i=1:j=2:n=1:m=2:e=+1",
            "higher_serre:ygen:i=1:j=2:n=1:m=2:e=+1",
        ]
        assert set(found.values()) == {STATUS_PASS}

    def test_higher_serre_needs_node_outside_orbit(self):
        assert run_suite(spec_for("higher_serre")).records == []


# ─────────────────────────────────────────────────────────────────────────────
# ENGINE SELF-CHECKS
# ─────────────────────────────────────────────────────────────────────────────

class TestOracleSuite:
    def test_small_degree(self):
        d = from_preset("a1xa1-swap")
        report = run_suite(spec_for("oracle", max_m=2))
        found = statuses(report)
        weights = [case for case in found if ":weight:" in case]
        components = [case for case in found if ":components:" in case]
        assert len(weights) == 5
        assert len(components) == len(relation_set(d))
        assert set(found.values()) == {STATUS_PASS}

    def test_oversized_basis_is_caught(self, monkeypatch):
        d = from_preset("a2-swap")
        wt = Weight((2, 1))
        words = words_of_weight(wt)
        monkeypatch.setattr(
            oracle, "serre_basis", lambda datum, weight, sign: WeightBasis(weight, sign, words, [True] * len(words), {})
        )
        outcome = oracle.cross_check(d, wt)
        assert not outcome.zero
        assert "radical dimension 1 but 0 reduction rows" in outcome.witness

    def test_cross_check_on_true_basis(self):
        assert oracle.cross_check(from_preset("a2-swap"), Weight((2, 2))).zero


@pytest.mark.slow
class TestEngineSuite:
    def test_engine_properties(self):
        report = run_suite(spec_for("engine"))
        found = statuses(report)
        assert "engine:kostant:degree=6" in found
        assert "engine:modular-agreement" in found
        assert report.ok
        assert set(found.values()) == {STATUS_PASS}


class TestMutationSuite:
    def test_each_mutant_fails_only_its_own_check(self):
        report = run_suite(spec_for("mutation"))
        mutants = [r for r in report.records if ":mutant:" in r.case]
        intact = [r for r in report.records if ":intact:" in r.case]
        assert mutants
        assert all(r.expect == EXPECT_NONZERO for r in mutants)
        assert all(r.status == STATUS_NONZERO_AS_EXPECTED for r in mutants)
        for r in intact:
            expected = STATUS_FINDING if r.expect == EXPECT_FINDING else STATUS_PASS
            assert r.status == expected, r.case
        assert {r.case.split(":", 2)[2] for r in mutants} == {r.case.split(":", 2)[2] for r in intact}
        assert report.ok

    def test_braid_mutant_is_included_for_orthogonal_orbit(self):
        found = statuses(run_suite(spec_for("mutation")))
        assert found["mutation:mutant:braid-sign(i=1)"] == STATUS_NONZERO_AS_EXPECTED
        assert found["mutation:intact:braid-sign(i=1)"] == STATUS_FINDING

    def test_flipped_braid_negates_one_image(self):
        d = from_preset("a1xa1-swap")
        gmap, original = flipped_braid(d, 1), tprime(d, 1, 1)
        assert gmap.label.endswith("[flipped]")
        b1 = GeneratorSymbol("B", 1)
        assert gmap.table[b1] == -original.table[b1]
        assert {s: x for s, x in gmap.table.items() if s != b1} == {s: x for s, x in original.table.items() if s != b1}
