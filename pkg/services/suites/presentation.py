from config.constants import EXPECT_ZERO
from core.iqg import centrality_identities, relation_set
from services.suites.base import VerificationSuite
from services.verify import CheckCase, SuiteSpec, iexpr_case


class PresentationSuite(VerificationSuite):
    @property
    def suite_id(self) -> str:
        return "presentation"

    @property
    def description(self) -> str:
        return "Every presentation relation and central element vanishes under embed"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        cases = []
        for name, rel in relation_set(datum) + centrality_identities(datum):
            cases.append(
                iexpr_case(self.label(name), {"relation": name}, EXPECT_ZERO, datum, lambda rel=rel: rel)
            )
        return cases
