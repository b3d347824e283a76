from config.constants import (
    EXPECT_FINDING,
    EXPECT_ZERO,
    HIGHER_SERRE_EXTRA_M,
    HIGHER_SERRE_FINDING_MAX_M,
    HIGHER_SERRE_MAX_N,
)
from core.cartan import CartanDatum
from core.iqg import YGEN_VARIANTS, ygen, ygen_prime, ygen_recursion
from services.suites.base import VerificationSuite
from services.verify import CheckCase, SuiteSpec, iexpr_case


class HigherSerreSuite(VerificationSuite):
    """
    ỹ_{i,j;n,m,e} for i ≠ τi and j outside the orbit.

    n = 1 is theorem class: the element and its σ-image vanish for
    m ∈ (−c_ij, −c_ij + extra] and the recursion holds for every m ≥ 0.
    For n ≥ 2 both exponent variants are evaluated and only recorded.
    """

    @property
    def suite_id(self) -> str:
        return "higher_serre"

    @property
    def description(self) -> str:
        return "Serre–Lusztig elements built on the standard Serre relation"

    def _pairs(self, datum: CartanDatum) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in self.orbit_nodes(datum)
            for j in datum.labels
            if j not in (i, datum.tau_of(i)) and datum.c(i, j) != 0
        ]

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        max_n = spec.max_n if spec.max_n is not None else HIGHER_SERRE_MAX_N
        cases = []
        for i, j in self._pairs(datum):
            cij = datum.c(i, j)
            for e in spec.e_set:
                top = -cij + (spec.max_m if spec.max_m is not None else HIGHER_SERRE_EXTRA_M)
                for m in range(0, top + 1):
                    params = {"i": i, "j": j, "n": 1, "m": m, "e": e}
                    cases.append(
                        iexpr_case(
                            self.label("recursion", f"i={i}", f"j={j}", "n=1", f"m={m}", f"e={e:+d}"),
                            params,
                            EXPECT_ZERO,
                            datum,
                            lambda i=i, j=j, m=m, e=e: ygen_recursion(datum, i, j, 1, m, e),
                        )
                    )
                    if m <= -cij:
                        continue
                    for tag, build in (("ygen", ygen), ("ygen'", ygen_prime)):
                        cases.append(
                            iexpr_case(
                                self.label(tag, f"i={i}", f"j={j}", "n=1", f"m={m}", f"e={e:+d}"),
                                params,
                                EXPECT_ZERO,
                                datum,
                                lambda i=i, j=j, m=m, e=e, build=build: build(datum, i, j, 1, m, e),
                            )
                        )
                for n in range(2, max_n + 1):
                    for m in range(1, HIGHER_SERRE_FINDING_MAX_M + 1):
                        for variant in YGEN_VARIANTS:
                            params = {"i": i, "j": j, "n": n, "m": m, "e": e, "variant": variant}
                            stem = (f"i={i}", f"j={j}", f"n={n}", f"m={m}", f"e={e:+d}", variant)
                            cases.append(
                                iexpr_case(
                                    self.label("ygen", *stem),
                                    params,
                                    EXPECT_FINDING,
                                    datum,
                                    lambda i=i, j=j, n=n, m=m, e=e, v=variant: ygen(datum, i, j, n, m, e, v),
                                )
                            )
                            cases.append(
                                iexpr_case(
                                    self.label("recursion", *stem),
                                    params,
                                    EXPECT_FINDING,
                                    datum,
                                    lambda i=i, j=j, n=n, m=m, e=e, v=variant: ygen_recursion(datum, i, j, n, m, e, v),
                                )
                            )
        return cases
