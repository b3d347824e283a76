# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Exact Scalar Arithmetic Tests
# ═══════════════════════════════════════════════════════════════════════════════

import random
from fractions import Fraction

import pytest

from core.scalars import (
    EXACT,
    ONE,
    ZERO,
    BadSampleError,
    LaurentPoly,
    PrimeField,
    Scalar,
    ScalarError,
    bar,
    eval_mod,
    format_scalar,
    pochhammer,
    q_power,
    qbinom,
    qfact,
    qint,
    subresultant_gcd,
)

q = q_power(1)
qinv = q_power(-1)
P = 101


def random_scalar(rng: random.Random) -> Scalar:
    num = LaurentPoly({rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(3)})
    den = LaurentPoly({rng.randint(-2, 2): rng.randint(1, 4) for _ in range(2)})
    return Scalar.from_laurent(num) / Scalar.from_laurent(den)


# ─────────────────────────────────────────────────────────────────────────────
# CANONICAL FORM
# ─────────────────────────────────────────────────────────────────────────────

class TestNormalize:
    def test_zero_numerator(self):
        x = Scalar(0) / (q ** 3)
        assert x.is_zero()
        assert x == ZERO

    def test_common_factor_cancels(self):
        x = ((q - qinv) * (q + qinv)) / (q - qinv)
        assert x == q + qinv
        assert x.is_laurent()

    def test_division_by_zero(self):
        with pytest.raises(ScalarError, match="division by zero"):
            ONE / ZERO

    def test_inverse_of_zero(self):
        with pytest.raises(ScalarError):
            ZERO.inverse()

    def test_equal_values_have_equal_representations(self):
        a = (q ** 2 - 1) / (q - 1)
        b = (q + 1) * (q ** 3 + q) / (q ** 3 + q)
        assert a == b
        assert hash(a) == hash(b)

    def test_denominator_has_positive_constant_term(self):
        x = ONE / (1 - q)
        assert x.den.coefficient(0) > 0
        assert x.den.min_exp == 0

    def test_monomial_denominator_moves_to_numerator(self):
        x = Scalar(3) / (q ** 2 * -2)
        assert x.den.is_one()
        assert x.num == LaurentPoly({-2: Fraction(-3, 2)})

    def test_int_equality(self):
        assert q / q == 1
        assert Scalar(Fraction(1, 2)) == Fraction(1, 2)


class TestFieldAxioms:
    def test_randomized_triples(self):
        rng = random.Random(7)
        for _ in range(25):
            a, b, c = random_scalar(rng), random_scalar(rng), random_scalar(rng)
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if a:
                assert a * a.inverse() == ONE


# ─────────────────────────────────────────────────────────────────────────────
# GCD
# ─────────────────────────────────────────────────────────────────────────────

class TestSubresultantGcd:
    def test_linear_factor(self):
        f = LaurentPoly({2: 1, 0: -1})
        g = LaurentPoly({1: 1, 0: -1})
        assert subresultant_gcd(f, g) == LaurentPoly({1: 1, 0: -1})

    def test_coprime(self):
        f = LaurentPoly({1: 1, 0: 1})
        g = LaurentPoly({1: 1, 0: -1})
        assert subresultant_gcd(f, g) == LaurentPoly({0: 1})

    def test_gcd_with_zero(self):
        g = LaurentPoly({1: -2, 0: 4})
        assert subresultant_gcd(LaurentPoly(), g) == LaurentPoly({1: 2, 0: -4})


# ─────────────────────────────────────────────────────────────────────────────
# BAR INVOLUTION
# ─────────────────────────────────────────────────────────────────────────────

class TestBar:
    def test_monomials(self):
        assert (q ** 2 + qinv).bar() == q ** -2 + q
        assert bar(q) == qinv

    def test_quantum_integers_are_bar_invariant(self):
        for n in range(1, 6):
            assert qint(n).bar() == qint(n)

    def test_pochhammer_image(self):
        x = pochhammer(q, q ** 2, 2)
        assert x == (1 - q) * (1 - q ** 3)
        assert x.bar() == (1 - qinv) * (1 - q ** -3)

    def test_involutive_on_fractions(self):
        rng = random.Random(3)
        for _ in range(10):
            x = random_scalar(rng)
            assert x.bar().bar() == x


# ─────────────────────────────────────────────────────────────────────────────
# Q-COMBINATORICS
# ─────────────────────────────────────────────────────────────────────────────

class TestQCombinatorics:
    def test_qint_two(self):
        assert qint(2) == q + qinv

    def test_qint_negative(self):
        assert qint(-3) == -qint(3)

    def test_qint_with_power(self):
        assert qint(2, 2) == q ** 2 + q ** -2

    def test_qfact(self):
        assert qfact(0) == ONE
        assert qfact(3) == qint(2) * qint(3)

    def test_qfact_negative_raises(self):
        with pytest.raises(ScalarError):
            qfact(-1)

    def test_qbinom_negative_d_is_zero(self):
        assert qbinom(5, -1) == ZERO

    def test_qbinom_three_one(self):
        assert qbinom(3, 1) == q ** 2 + 1 + q ** -2

    @pytest.mark.parametrize("n", range(0, 6))
    def test_qbinom_symmetry(self, n):
        for d in range(n + 1):
            assert qbinom(n, d) == qbinom(n, n - d)

    def test_pochhammer_empty(self):
        assert pochhammer(q ** 5, q ** 7, 0) == ONE

    def test_pochhammer_two(self):
        assert pochhammer(q ** -2, q ** -2, 2) == (1 - q ** -2) * (1 - q ** -4)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_pochhammer_closed_form(self, n):
        closed = q ** (-n * (n + 1) // 2) * (q - qinv) ** n * qfact(n)
        assert pochhammer(q ** -2, q ** -2, n) == closed


# ─────────────────────────────────────────────────────────────────────────────
# TEXT AND MODULAR IMAGES
# ─────────────────────────────────────────────────────────────────────────────

class TestSerialization:
    def test_canonical_text(self):
        assert (q + qinv).to_text() == "num:[(-1,1),(1,1)];den:[(0,1)]"

    def test_text_round_trip_with_denominator(self):
        x = Scalar(Fraction(3, 2)) * q / (q ** 2 + q + 1)
        assert Scalar.from_text(x.to_text()) == x
        assert Scalar.from_text(x.to_text()).to_text() == x.to_text()

    def test_malformed_text(self):
        with pytest.raises(ScalarError):
            Scalar.from_text("q + 1")

    def test_format(self):
        assert format_scalar(q + qinv) == "q + q^-1"
        assert format_scalar(1 - q ** 2) == "-q^2 + 1"
        assert format_scalar(ZERO) == "0"
        assert format_scalar(ONE / (q + 1)) == "(1)/(q + 1)"


class TestModular:
    def test_zero_maps_to_zero(self):
        for image in (2, 5, 77):
            assert eval_mod(ZERO, image, P).value == 0

    def test_example_value(self):
        assert eval_mod(q + qinv, 2, P).value == 53

    def test_vanishing_denominator(self):
        with pytest.raises(BadSampleError, match="bad sample"):
            eval_mod(ONE / (q - 1), 1, P)

    def test_homomorphism(self):
        rng = random.Random(11)
        for _ in range(100):
            a, b = random_scalar(rng), random_scalar(rng)
            image = rng.randrange(2, P - 1)
            try:
                lhs = eval_mod(a * b, image, P)
                rhs = eval_mod(a, image, P) * eval_mod(b, image, P)
            except BadSampleError:
                continue
            assert lhs == rhs

    def test_prime_field_protocol(self):
        fld = PrimeField(P, 3)
        assert fld.convert(q) == fld.q_power(1)
        assert (fld.q_power(1) * fld.q_power(-1)).value == 1
        assert fld.qint(2) == fld.q_power(1) + fld.q_power(-1)
        assert fld.key == ("mod", P, 3)

    def test_exact_field_protocol(self):
        assert EXACT.one == ONE
        assert EXACT.qfact(2) == qint(2)
        assert EXACT.key == ("exact",)
