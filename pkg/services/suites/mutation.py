from config.constants import EXPECT_FINDING, EXPECT_NONZERO, EXPECT_ZERO
from core.braid import TPRIME, GeneratorMap, check_hom, tprime
from core.cartan import CartanDatum
from core.iqg import I_ALPHABET, relation_set, ytilde
from core.ncalg import GeneratorSymbol, NCPoly
from core.scalars import q_power
from services.suites.base import VerificationSuite
from services.verify import CheckCase, Outcome, SuiteSpec, iexpr_case


def mutate(x: NCPoly) -> NCPoly:
    """x with the coefficient of its first canonical term multiplied by q."""
    word, coeff = x.terms()[0]
    return x + NCPoly.from_word(I_ALPHABET, word, coeff * (q_power(1) - 1))


def flipped_braid(datum: CartanDatum, i: int) -> GeneratorMap:
    """T'_{i,+1} with the sign of its B_i image reversed."""
    gmap = tprime(datum, i, 1)
    table = dict(gmap.table)
    key = GeneratorSymbol("B", i)
    table[key] = -table[key]
    return GeneratorMap(f"{gmap.label}[flipped]", TPRIME, i, 1, table)


def _braid_outcome(gmap: GeneratorMap, datum: CartanDatum) -> Outcome:
    failed = [c.label for c in check_hom(datum, gmap) if not c.passed]
    return Outcome(not failed, ", ".join(failed))


class MutationSuite(VerificationSuite):
    """
    Each mutant differs from a vanishing identity in one place and must not
    vanish, while its unmutated original, run alongside it, still does. The
    braid original is conjectural and only recorded.
    """

    @property
    def suite_id(self) -> str:
        return "mutation"

    @property
    def description(self) -> str:
        return "Single-coefficient mutants of vanishing identities are detected"

    def _pair(self, name: str, params: dict, datum: CartanDatum, x: NCPoly) -> list[CheckCase]:
        return [
            iexpr_case(self.label("mutant", name), params, EXPECT_NONZERO, datum, lambda: mutate(x)),
            iexpr_case(self.label("intact", name), params, EXPECT_ZERO, datum, lambda: x),
        ]

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        cases = []
        seen = set()
        for name, rel in relation_set(datum):
            family = name.split("(")[0]
            if family in seen:
                continue
            seen.add(family)
            cases.extend(self._pair(name, {"relation": name}, datum, rel))
        for i in self.orbit_nodes(datum):
            m = 1 - datum.c_tau(i)
            cases.extend(self._pair(f"ytilde(i={i},m={m})", {"i": i, "m": m}, datum, ytilde(datum, i, m, 1)))
            if datum.c_tau(i) == 0:
                cases.append(
                    CheckCase(
                        self.label("mutant", f"braid-sign(i={i})"),
                        {"i": i},
                        EXPECT_NONZERO,
                        lambda spec, i=i: _braid_outcome(flipped_braid(datum, i), datum),
                    )
                )
                cases.append(
                    CheckCase(
                        self.label("intact", f"braid-sign(i={i})"),
                        {"i": i},
                        EXPECT_FINDING,
                        lambda spec, i=i: _braid_outcome(tprime(datum, i, 1), datum),
                    )
                )
        return cases
