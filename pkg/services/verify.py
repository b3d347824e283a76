"""
Verification runner.

Binds the core engine into named suites. Each suite declares its checks up
front as CheckCase objects carrying the expected outcome; the runner evaluates
them (optionally in a thread pool), classifies each result and assembles a
VerificationReport whose record order is the sorted case label.

Public API
----------
run_suite(spec: SuiteSpec) -> VerificationReport
run_suites(names: list[str], spec: SuiteSpec) -> VerificationReport
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable

import pandas as pd

from config.constants import (
    DEFAULT_MODULAR_TRIALS,
    DEFAULT_SEED,
    EXPECT_FINDING,
    EXPECT_NONZERO,
    EXPECT_ZERO,
    STATUS_FAIL,
    STATUS_FINDING,
    STATUS_NONZERO_AS_EXPECTED,
    STATUS_PASS,
)
from core.cartan import CartanDatum
from core.iqg import embed_is_zero_modular, embed_triangular
from core.ncalg import NCPoly
from core.udouble import DegreeBudgetExceeded, ModularSamplingError, canonicalize, oracle_disagreements

logger = logging.getLogger(__name__)

METHOD_EXACT = "exact"
METHOD_FAST = "fast"
METHODS = (METHOD_EXACT, METHOD_FAST)

E_CHOICES = {"both": (1, -1), "+1": (1,), "-1": (-1,)}


class UnknownSuiteError(ValueError):
    """Raised for a suite name missing from the registry."""


# ─────────────────────────────────────────────────────────────────────────────
# DATA TYPES
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SuiteSpec:
    suite: str
    datum: CartanDatum
    max_m: int | None = None
    max_n: int | None = None
    max_nm: int | None = None
    e_set: tuple[int, ...] = (1, -1)
    method: str = METHOD_EXACT
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_MODULAR_TRIALS
    jobs: int = 1
    oracle_components: bool = False

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if not self.e_set or any(e not in (1, -1) for e in self.e_set):
            raise ValueError("e_set must be a nonempty subset of {+1, -1}")


@dataclass(frozen=True)
class Outcome:
    """
    Raw result of evaluating one check: zero / nonzero plus a witness.
    modular_zero is None when no modular pass ran; disagreement names any
    engine self-check (modular vs exact, radical oracle) that did not agree.
    """

    zero: bool
    witness: str = ""
    modular_zero: bool | None = None
    disagreement: str = ""


@dataclass
class CheckCase:
    label: str
    params: dict[str, Any]
    expect: str
    evaluate: Callable[[SuiteSpec], Outcome]


@dataclass
class CheckRecord:
    suite: str
    case: str
    params: dict[str, Any]
    expect: str
    status: str
    zero: bool | None
    witness: str
    method: str
    elapsed: float
    modular_zero: bool | None = None

    def as_dict(self, timing: bool = True) -> dict[str, Any]:
        record = {
            "suite": self.suite,
            "case": self.case,
            "params": dict(sorted(self.params.items())),
            "expect": self.expect,
            "status": self.status,
            "zero": self.zero,
            "witness": self.witness,
            "method": self.method,
            "modular_zero": self.modular_zero,
        }
        if timing:
            record["elapsed"] = round(self.elapsed, 4)
        return record


@dataclass
class VerificationReport:
    datum: str
    records: list[CheckRecord] = field(default_factory=list)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.records.extend(other.records)
        return self

    def to_records(self, timing: bool = True) -> list[dict[str, Any]]:
        return [r.as_dict(timing) for r in self.records]

    def theorem_failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == STATUS_FAIL]

    def findings(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == STATUS_FINDING]

    @property
    def ok(self) -> bool:
        return not self.theorem_failures()

    def summary_table(self) -> pd.DataFrame:
        """Counts per suite and status, one row per suite."""
        if not self.records:
            return pd.DataFrame(columns=["suite", "checks", STATUS_PASS, STATUS_FAIL, STATUS_NONZERO_AS_EXPECTED, STATUS_FINDING, "seconds"])
        frame = pd.DataFrame(
            [{"suite": r.suite, "status": r.status, "elapsed": r.elapsed} for r in self.records]
        )
        counts = frame.pivot_table(index="suite", columns="status", values="elapsed", aggfunc="count", fill_value=0)
        for status in (STATUS_PASS, STATUS_FAIL, STATUS_NONZERO_AS_EXPECTED, STATUS_FINDING):
            if status not in counts.columns:
                counts[status] = 0
        table = counts[[STATUS_PASS, STATUS_FAIL, STATUS_NONZERO_AS_EXPECTED, STATUS_FINDING]].astype(int)
        table.insert(0, "checks", table.sum(axis=1))
        table["seconds"] = frame.groupby("suite")["elapsed"].sum().round(2)
        return table.reset_index()


# ─────────────────────────────────────────────────────────────────────────────
# CASE HELPERS (used by services/suites/*)
# ─────────────────────────────────────────────────────────────────────────────

def iexpr_outcome(datum: CartanDatum, x: NCPoly, spec: SuiteSpec) -> Outcome:
    """
    Zero-test an ı-expression by embedding, with the modular pre-pass when
    asked and the radical-oracle cross-check of every one-sign component when
    spec.oracle_components is set.
    """
    modular = None
    if spec.method == METHOD_FAST:
        modular = embed_is_zero_modular(datum, x, spec.trials, spec.seed)
    tri = embed_triangular(datum, x)
    image = canonicalize(datum, tri)
    zero = image.is_zero()
    problems = []
    if modular is not None and modular != zero:
        logger.warning("Modular/exact disagreement on %s (modular zero=%s)", datum.name, modular)
        problems.append(f"modular/exact disagreement: modular zero={modular}, exact zero={zero}")
    if spec.oracle_components:
        problems.extend(oracle_disagreements(datum, tri))
    return Outcome(zero, "" if zero else image.serialize(), modular, "; ".join(problems))


def iexpr_case(label: str, params: dict[str, Any], expect: str, datum: CartanDatum, build: Callable[[], NCPoly]) -> CheckCase:
    return CheckCase(label, params, expect, lambda spec: iexpr_outcome(datum, build(), spec))


def classify(expect: str, outcome: Outcome) -> str:
    if outcome.disagreement:
        return STATUS_FINDING if expect == EXPECT_FINDING else STATUS_FAIL
    if expect == EXPECT_ZERO:
        return STATUS_PASS if outcome.zero else STATUS_FAIL
    if expect == EXPECT_NONZERO:
        return STATUS_FAIL if outcome.zero else STATUS_NONZERO_AS_EXPECTED
    return STATUS_FINDING


def method_label(outcome: Outcome | None) -> str:
    return METHOD_EXACT if outcome is None or outcome.modular_zero is None else "modular+exact"


def run_case(suite: str, case: CheckCase, spec: SuiteSpec) -> CheckRecord:
    started = time.perf_counter()
    outcome = None
    try:
        outcome = case.evaluate(spec)
        status = classify(case.expect, outcome)
        zero, witness = outcome.zero, outcome.witness
        if outcome.disagreement:
            witness = outcome.disagreement + (f" | {witness}" if witness else "")
    except (DegreeBudgetExceeded, ModularSamplingError) as exc:
        status = STATUS_FINDING if case.expect == EXPECT_FINDING else STATUS_FAIL
        zero, witness = None, str(exc)
        logger.warning("%s: %s", case.label, exc)
    record = CheckRecord(
        suite, case.label, case.params, case.expect, status, zero, witness,
        method_label(outcome), time.perf_counter() - started,
        outcome.modular_zero if outcome is not None else None,
    )
    if status == STATUS_FAIL:
        logger.warning("FAIL %s", case.label)
    return record


# ─────────────────────────────────────────────────────────────────────────────
# RUNNERS
# ─────────────────────────────────────────────────────────────────────────────

def run_suite(spec: SuiteSpec) -> VerificationReport:
    from services.suites import get_suite

    handler = get_suite(spec.suite)
    cases = handler.cases(spec)
    logger.info("Suite %s on %s: %d checks", handler.suite_id, spec.datum.name, len(cases))
    started = time.perf_counter()
    if spec.jobs > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=spec.jobs) as pool:
            records = list(pool.map(lambda c: run_case(handler.suite_id, c, spec), cases))
    else:
        records = [run_case(handler.suite_id, c, spec) for c in cases]
    records.sort(key=lambda r: r.case)
    report = VerificationReport(spec.datum.name, records)
    logger.info(
        "Suite %s finished in %.1fs: %d fail, %d findings",
        handler.suite_id, time.perf_counter() - started, len(report.theorem_failures()), len(report.findings()),
    )
    return report


def run_suites(names: list[str], spec: SuiteSpec) -> VerificationReport:
    from services.suites import SUITE_IDS

    if names == ["all"] or "all" in names:
        names = list(SUITE_IDS)
    report = VerificationReport(spec.datum.name)
    for name in names:
        report.extend(run_suite(replace(spec, suite=name)))
    return report
