from itertools import combinations_with_replacement

from config.constants import EXPECT_ZERO, ORACLE_MAX_DEGREE, ORACLE_MAX_DEGREE_HIGH_RANK
from core.cartan import CartanDatum, Weight
from core.iqg import embed_triangular, relation_set
from core.ncalg import NCPoly
from core.scalars import ONE
from core.udouble import PLUS, form_radical_dimension, form_radical_oracle, oracle_disagreements, serre_basis
from services.suites.base import VerificationSuite
from services.verify import CheckCase, Outcome, SuiteSpec


def weights_up_to(datum: CartanDatum, degree: int) -> list[Weight]:
    """Every nonnegative weight of height 1..degree, by height then coordinates."""
    out = []
    for height in range(1, degree + 1):
        found = set()
        for letters in combinations_with_replacement(datum.labels, height):
            coords = [0] * datum.n
            for a in letters:
                coords[a - 1] += 1
            found.add(Weight(tuple(coords)))
        out.extend(sorted(found, key=lambda w: w.coords, reverse=True))
    return out


def cross_check(datum: CartanDatum, wt: Weight) -> Outcome:
    """
    The Serre-basis reduction rows span the radical of the form on this
    weight: every row lies in the radical, no standard word does, and the
    radical has exactly as many dimensions as there are rows.
    """
    basis = serre_basis(datum, wt, PLUS)
    disagreements = []
    for lead, row in basis.reduction.items():
        element = {lead: ONE}
        for word, c in row.items():
            element[word] = -c
        if not form_radical_oracle(datum, element, wt):
            disagreements.append(f"relation {lead} not in radical")
    for word in basis.standard:
        if form_radical_oracle(datum, {word: ONE}, wt):
            disagreements.append(f"standard word {word} in radical")
    radical = form_radical_dimension(datum, wt)
    if radical != len(basis.reduction):
        disagreements.append(f"radical dimension {radical} but {len(basis.reduction)} reduction rows")
    return Outcome(not disagreements, "; ".join(disagreements))


def component_check(datum: CartanDatum, x: NCPoly) -> Outcome:
    """Basis and oracle agree on every one-sign component of the embedding of x."""
    bad = oracle_disagreements(datum, embed_triangular(datum, x))
    return Outcome(not bad, "; ".join(bad))


class OracleSuite(VerificationSuite):
    @property
    def suite_id(self) -> str:
        return "oracle"

    @property
    def description(self) -> str:
        return "Radical-form oracle against Serre-basis reduction, every weight up to a degree"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        default = ORACLE_MAX_DEGREE if datum.n <= 2 else ORACLE_MAX_DEGREE_HIGH_RANK
        degree = spec.max_m if spec.max_m is not None else default
        cases = [
            CheckCase(
                self.label("weight", str(wt).replace(" ", "")),
                {"weight": list(wt.coords)},
                EXPECT_ZERO,
                lambda spec, wt=wt: cross_check(datum, wt),
            )
            for wt in weights_up_to(datum, degree)
        ]
        for name, rel in relation_set(datum):
            cases.append(
                CheckCase(
                    self.label("components", name),
                    {"relation": name},
                    EXPECT_ZERO,
                    lambda spec, rel=rel: component_check(datum, rel),
                )
            )
        return cases
