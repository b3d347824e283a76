from config.constants import EXPECT_ZERO
from core.iqg import psi, relation_set, sigma
from services.suites.base import VerificationSuite
from services.verify import CheckCase, SuiteSpec, iexpr_case


class InvolutionsSuite(VerificationSuite):
    @property
    def suite_id(self) -> str:
        return "involutions"

    @property
    def description(self) -> str:
        return "ψ and σ map every presentation relation into the relation ideal"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        cases = []
        for name, rel in relation_set(datum):
            for tag, twist in (("psi", psi), ("sigma", sigma)):
                cases.append(
                    iexpr_case(
                        self.label(tag, name),
                        {"relation": name, "map": tag},
                        EXPECT_ZERO,
                        datum,
                        lambda rel=rel, twist=twist: twist(datum, rel),
                    )
                )
        return cases
