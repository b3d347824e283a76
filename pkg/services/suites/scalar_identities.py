from typing import Callable

from config.constants import EXPECT_ZERO
from core.scalars import ONE, Scalar, pochhammer, q_power, qbinom, qfact, qint
from services.suites.base import VerificationSuite
from services.verify import CheckCase, Outcome, SuiteSpec

_Q_DIFF = q_power(1) - q_power(-1)


def _product(c: int, m: int, top: int) -> Scalar:
    """∏_{j=0}^{c+m−2} (q^top − q^{2j−c−2m+2}); empty product is 1."""
    result = ONE
    for j in range(c + m - 1):
        result = result * (q_power(top) - q_power(2 * j - c - 2 * m + 2))
    return result


def prod2_closed_form(c: int, m: int) -> Scalar:
    span = c + m - 1
    result = q_power(-(span - 1) * span // 2) * _Q_DIFF ** span
    for a in range(2 - c, m + 1):
        result = result * qint(a)
    return result


def _difference(build: Callable[[], Scalar]) -> Callable[[SuiteSpec], Outcome]:
    def evaluate(spec: SuiteSpec) -> Outcome:
        value = build()
        return Outcome(value.is_zero(), "" if value.is_zero() else value.to_text())

    return evaluate


class ScalarIdentitiesSuite(VerificationSuite):
    """Closed-form scalar identities used by the Serre–Lusztig and BKL reductions."""

    @property
    def suite_id(self) -> str:
        return "scalars"

    @property
    def description(self) -> str:
        return "Product vanishing, product closed form, Pochhammer and binomial identities"

    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        cases = []
        # first vanishing factor appears at j = m − 1 + c, which needs m ≥ 2 − c
        for c in (0, -1, -2, -3):
            for m in range(2 - c, 2 - c + 4):
                cases.append(
                    CheckCase(
                        self.label("prod1", f"c={c}", f"m={m}"),
                        {"c": c, "m": m},
                        EXPECT_ZERO,
                        _difference(lambda c=c, m=m: _product(c, m, c - 2)),
                    )
                )
        for c in (0, -1, -2):
            for m in range(1 - c, 1 - c + 4):
                cases.append(
                    CheckCase(
                        self.label("prod2", f"c={c}", f"m={m}"),
                        {"c": c, "m": m},
                        EXPECT_ZERO,
                        _difference(lambda c=c, m=m: _product(c, m, 2 - c) - prod2_closed_form(c, m)),
                    )
                )
        for n in range(1, 5):
            cases.append(
                CheckCase(
                    self.label("pochhammer", f"n={n}"),
                    {"n": n},
                    EXPECT_ZERO,
                    _difference(
                        lambda n=n: pochhammer(q_power(-2), q_power(-2), n)
                        - q_power(-n * (n + 1) // 2) * _Q_DIFF ** n * qfact(n)
                    ),
                )
            )
            cases.append(
                CheckCase(
                    self.label("pochhammer-bar", f"n={n}"),
                    {"n": n},
                    EXPECT_ZERO,
                    _difference(
                        lambda n=n: pochhammer(q_power(-2), q_power(-2), n).bar()
                        - pochhammer(q_power(2), q_power(2), n)
                    ),
                )
            )
        for n in range(0, 7):
            for d in range(n + 1):
                cases.append(
                    CheckCase(
                        self.label("qbinom-symmetry", f"n={n}", f"d={d}"),
                        {"n": n, "d": d},
                        EXPECT_ZERO,
                        _difference(lambda n=n, d=d: qbinom(n, d) - qbinom(n, n - d)),
                    )
                )
            cases.append(
                CheckCase(
                    self.label("qint-bar", f"n={n}"),
                    {"n": n},
                    EXPECT_ZERO,
                    _difference(lambda n=n: qint(n).bar() - qint(n)),
                )
            )
        return cases
