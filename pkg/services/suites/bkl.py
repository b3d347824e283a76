from config.constants import EXPECT_ZERO
from core.iqg import relation5, rewr, ytilde
from services.suites.base import VerificationSuite
from services.verify import CheckCase, Outcome, SuiteSpec, iexpr_outcome


class BKLSuite(VerificationSuite):
    """
    One check per τ-orbit: the BKL relation vanishes under embed, and its
    Pochhammer form, its expanded form and ỹ at the Serre threshold (both e)
    coincide as ı-expressions.
    """

    @property
    def suite_id(self) -> str:
        return "bkl"

    @property
    def description(self) -> str:
        return "BKL relation vanishes and agrees with its rewritten forms"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        cases = []
        for i in self.orbit_nodes(datum):
            c = datum.c_tau(i)

            def evaluate(spec: SuiteSpec, i: int = i, c: int = c) -> Outcome:
                rel = relation5(datum, i)
                forms = {"rewr": rewr(datum, i)}
                for e in (1, -1):
                    forms[f"ytilde(e={e:+d})"] = ytilde(datum, i, 1 - c, e)
                mismatched = [name for name, form in forms.items() if form != rel]
                outcome = iexpr_outcome(datum, rel, spec)
                if mismatched:
                    return Outcome(False, "forms differ: " + ", ".join(mismatched), outcome.modular_zero)
                return outcome

            cases.append(CheckCase(self.label(f"i={i}"), {"i": i, "c": c}, EXPECT_ZERO, evaluate))
        return cases
