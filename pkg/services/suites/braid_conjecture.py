from config.constants import EXPECT_FINDING
from core.braid import (
    TDOUBLEPRIME,
    TPRIME,
    BraidCheck,
    check_compatibility,
    check_hom,
    check_inverse,
    check_weights,
    operator,
)
from core.cartan import ibar_tau
from services.suites.base import VerificationSuite
from services.verify import CheckCase, Outcome, SuiteSpec


def _summarize(checks: list[BraidCheck]) -> Outcome:
    failed = [c for c in checks if not c.passed]
    if not failed:
        return Outcome(True)
    return Outcome(False, "; ".join(f"{c.label} -> {c.witness}" for c in failed))


class BraidConjectureSuite(VerificationSuite):
    """Conjectural T'/T'' operators on every node with c_{i,τi} = 0, recorded as findings."""

    @property
    def suite_id(self) -> str:
        return "braid_conjecture"

    @property
    def description(self) -> str:
        return "Homomorphism, weight and σ/ψ compatibility checks of T' and T''"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        nodes = [i for i in ibar_tau(datum) if datum.tau_of(i) != i and datum.c_tau(i) == 0]
        cases = []
        for i in nodes:
            for kind in (TPRIME, TDOUBLEPRIME):
                for e in spec.e_set:
                    params = {"i": i, "operator": kind, "e": e}
                    cases.append(
                        CheckCase(
                            self.label("hom", kind, f"i={i}", f"e={e:+d}"),
                            params,
                            EXPECT_FINDING,
                            lambda spec, i=i, kind=kind, e=e: _summarize(check_hom(datum, operator(datum, kind, i, e))),
                        )
                    )
                    cases.append(
                        CheckCase(
                            self.label("weights", kind, f"i={i}", f"e={e:+d}"),
                            params,
                            EXPECT_FINDING,
                            lambda spec, i=i, kind=kind, e=e: _summarize(check_weights(datum, operator(datum, kind, i, e))),
                        )
                    )
            cases.append(
                CheckCase(
                    self.label("compatibility", f"i={i}"),
                    {"i": i},
                    EXPECT_FINDING,
                    lambda spec, i=i: _summarize(check_compatibility(datum, i)),
                )
            )
            for e in spec.e_set:
                cases.append(
                    CheckCase(
                        self.label("inverse", f"i={i}", f"e={e:+d}"),
                        {"i": i, "e": e},
                        EXPECT_FINDING,
                        lambda spec, i=i, e=e: _summarize(check_inverse(datum, i, e)),
                    )
                )
        return cases
