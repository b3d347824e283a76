from config.constants import EXPECT_ZERO, RECURSION_MAX_M
from core.iqg import recursion_identity
from services.suites.base import VerificationSuite
from services.verify import CheckCase, SuiteSpec, iexpr_case


class RecursionSuite(VerificationSuite):
    @property
    def suite_id(self) -> str:
        return "recursion"

    @property
    def description(self) -> str:
        return "Recursion between consecutive ỹ and ỹ' for m ≥ 1, e = ±1"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        cases = []
        for i in self.orbit_nodes(datum):
            c = datum.c_tau(i)
            max_m = spec.max_m if spec.max_m is not None else RECURSION_MAX_M.get(c, 3)
            for m in range(1, max_m + 1):
                for e in spec.e_set:
                    for which in (1, 2):
                        cases.append(
                            iexpr_case(
                                self.label(f"RR{which}", f"i={i}", f"m={m}", f"e={e:+d}"),
                                {"i": i, "c": c, "m": m, "e": e, "form": which},
                                EXPECT_ZERO,
                                datum,
                                lambda i=i, m=m, e=e, which=which: recursion_identity(datum, i, m, e, which),
                            )
                        )
        return cases
