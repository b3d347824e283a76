from config.constants import EXPECT_NONZERO, EXPECT_ZERO, SERRE_LUSZTIG_EXTRA_M
from core.iqg import hosii, ytilde, ytilde_prime
from services.suites.base import VerificationSuite
from services.verify import CheckCase, SuiteSpec, iexpr_case


class SerreLusztigSuite(VerificationSuite):
    """
    ỹ_m and ỹ'_m vanish from the Serre threshold m = 1 − c on, the closed
    forms hold above it, and below it ỹ_m is kept as a nonzero control.
    """

    @property
    def suite_id(self) -> str:
        return "serre_lusztig"

    @property
    def description(self) -> str:
        return "Serre–Lusztig vanishing, closed forms and negative controls"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        cases = []
        for i in self.orbit_nodes(datum):
            c = datum.c_tau(i)
            top = 1 - c + (spec.max_m if spec.max_m is not None else SERRE_LUSZTIG_EXTRA_M.get(c, 2))
            for m in range(1, top + 1):
                for e in spec.e_set:
                    params = {"i": i, "c": c, "m": m, "e": e}
                    if m < 1 - c:
                        cases.append(
                            iexpr_case(
                                self.label("control", f"i={i}", f"m={m}", f"e={e:+d}"),
                                params,
                                EXPECT_NONZERO,
                                datum,
                                lambda i=i, m=m, e=e: ytilde(datum, i, m, e),
                            )
                        )
                        continue
                    for tag, build in (("ytilde", ytilde), ("ytilde'", ytilde_prime)):
                        cases.append(
                            iexpr_case(
                                self.label(tag, f"i={i}", f"m={m}", f"e={e:+d}"),
                                params,
                                EXPECT_ZERO,
                                datum,
                                lambda i=i, m=m, e=e, build=build: build(datum, i, m, e),
                            )
                        )
                if m > 1 - c:
                    for which in (1, 2):
                        cases.append(
                            iexpr_case(
                                self.label(f"HOSII{which}", f"i={i}", f"m={m}"),
                                {"i": i, "c": c, "m": m, "form": which},
                                EXPECT_ZERO,
                                datum,
                                lambda i=i, m=m, which=which: hosii(datum, i, m, which),
                            )
                        )
        return cases
