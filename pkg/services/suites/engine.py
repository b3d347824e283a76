import random

from config.constants import (
    ENGINE_KOSTANT_MAX_DEGREE,
    ENGINE_RANDOM_DEGREE,
    ENGINE_RANDOM_PAIRS,
    EXPECT_ZERO,
)
from core.cartan import CartanDatum, is_finite_type, kostant_partition_count, positive_roots
from core.iqg import B, embed, embed_is_zero_modular, k, relation_set, ytilde
from core.ncalg import NCPoly
from core.udouble import PLUS, E, F, K, Kp, reduce, serre_basis, umul
from services.suites.base import VerificationSuite
from services.suites.oracle import weights_up_to
from services.verify import CheckCase, Outcome, SuiteSpec

PAIRS_PER_CASE = 20


def random_iword(datum: CartanDatum, rng: random.Random, max_degree: int) -> NCPoly:
    letters = []
    for _ in range(rng.randint(1, max_degree)):
        j = rng.choice(list(datum.labels))
        letters.append(rng.choice((B(j), k(j), k(j, -1))))
    result = letters[0]
    for x in letters[1:]:
        result = result * x
    return result


def random_upoly(datum: CartanDatum, rng: random.Random, max_degree: int) -> NCPoly:
    factories = (E, F, K, Kp)
    result = None
    for _ in range(2):
        term = None
        for _ in range(rng.randint(1, max_degree)):
            x = rng.choice(factories)(rng.choice(list(datum.labels)))
            term = x if term is None else term * x
        result = term if result is None else result + term
    return result


class EngineSuite(VerificationSuite):
    """Structural properties of the reduction engine itself."""

    @property
    def suite_id(self) -> str:
        return "engine"

    @property
    def description(self) -> str:
        return "Idempotence, multiplicativity, Kostant dimensions, centrality, modular agreement"

    def _idempotence(self, datum: CartanDatum, seed: int) -> Outcome:
        rng = random.Random(seed)
        for trial in range(10):
            p = random_upoly(datum, rng, 4)
            once = reduce(datum, p)
            if reduce(datum, once.to_poly()) != once:
                return Outcome(False, f"trial {trial}: {p.format()}")
        return Outcome(True)

    def _multiplicativity(self, datum: CartanDatum, seed: int, batch: int) -> Outcome:
        rng = random.Random(seed * 1009 + batch)
        for pair in range(PAIRS_PER_CASE):
            x = random_iword(datum, rng, ENGINE_RANDOM_DEGREE)
            y = random_iword(datum, rng, ENGINE_RANDOM_DEGREE)
            if embed(datum, x * y) != umul(embed(datum, x), embed(datum, y)):
                return Outcome(False, f"pair {pair}: x = {x.format()}, y = {y.format()}")
        return Outcome(True)

    def _kostant(self, datum: CartanDatum, degree: int) -> Outcome:
        roots = positive_roots(datum, degree)
        bad = []
        for wt in weights_up_to(datum, degree):
            if wt.height() != degree:
                continue
            dim = serre_basis(datum, wt, PLUS).dimension
            expected = kostant_partition_count(roots, wt)
            if dim != expected:
                bad.append(f"{wt}: {dim} != {expected}")
        return Outcome(not bad, "; ".join(bad))

    def _centrality(self, datum: CartanDatum, i: int) -> Outcome:
        central = K(i) * Kp(i)
        bad = []
        for j in datum.labels:
            for x in (E(j), F(j)):
                image = reduce(datum, central * x - x * central)
                if image:
                    bad.append(f"{x.format()}: {image.serialize()}")
        return Outcome(not bad, "; ".join(bad))

    def _agreement(self, datum: CartanDatum, spec: SuiteSpec) -> Outcome:
        elements = list(relation_set(datum))
        for i in self.orbit_nodes(datum):
            c = datum.c_tau(i)
            if c < 0:
                elements.append((f"control(i={i})", ytilde(datum, i, 1, 1)))
        elements.extend((f"B{j}", B(j)) for j in datum.labels)
        bad = []
        for name, x in elements:
            exact = embed(datum, x).is_zero()
            modular = embed_is_zero_modular(datum, x, spec.trials, spec.seed)
            if exact != modular:
                bad.append(f"{name}: exact={exact} modular={modular}")
        return Outcome(not bad, "; ".join(bad))

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        datum = spec.datum
        cases = [
            CheckCase(self.label("idempotence"), {}, EXPECT_ZERO, lambda spec: self._idempotence(datum, spec.seed)),
            CheckCase(self.label("modular-agreement"), {}, EXPECT_ZERO, lambda spec: self._agreement(datum, spec)),
        ]
        for batch in range(ENGINE_RANDOM_PAIRS // PAIRS_PER_CASE):
            cases.append(
                CheckCase(
                    self.label("multiplicativity", f"batch={batch:02d}"),
                    {"batch": batch, "pairs": PAIRS_PER_CASE},
                    EXPECT_ZERO,
                    lambda spec, batch=batch: self._multiplicativity(datum, spec.seed, batch),
                )
            )
        if is_finite_type(datum):
            for degree in range(1, ENGINE_KOSTANT_MAX_DEGREE + 1):
                cases.append(
                    CheckCase(
                        self.label("kostant", f"degree={degree}"),
                        {"degree": degree},
                        EXPECT_ZERO,
                        lambda spec, degree=degree: self._kostant(datum, degree),
                    )
                )
        for i in datum.labels:
            cases.append(
                CheckCase(
                    self.label("centrality", f"i={i}"),
                    {"i": i},
                    EXPECT_ZERO,
                    lambda spec, i=i: self._centrality(datum, i),
                )
            )
        return cases
