from config.constants import EXPECT_ZERO, RANK1_MAX_NM
from core.iqg import bb_identity
from services.suites.base import VerificationSuite
from services.verify import CheckCase, SuiteSpec, iexpr_case


class RankOneSuite(VerificationSuite):
    @property
    def suite_id(self) -> str:
        return "rank1"

    @property
    def description(self) -> str:
        return "Commutation of divided powers across an orbit with c = 0"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        top = spec.max_nm if spec.max_nm is not None else RANK1_MAX_NM
        cases = []
        for i in self.orbit_nodes(datum):
            if datum.c_tau(i) != 0:
                continue
            for N in range(top + 1):
                for M in range(top + 1):
                    for which in (1, 2):
                        cases.append(
                            iexpr_case(
                                self.label(f"BB{which}", f"i={i}", f"N={N}", f"M={M}"),
                                {"i": i, "N": N, "M": M, "form": which},
                                EXPECT_ZERO,
                                datum,
                                lambda i=i, N=N, M=M, which=which: bb_identity(datum, i, N, M, which),
                            )
                        )
        return cases
