# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Noncommutative Polynomial Tests
# ═══════════════════════════════════════════════════════════════════════════════

import pytest

from core.cartan import Weight
from core.ncalg import (
    INHOMOGENEOUS,
    Alphabet,
    AlphabetMismatchError,
    GeneratorSymbol,
    MissingImageError,
    NCPoly,
    enumerate_words,
    linear_combination,
    reverse,
    substitute,
    weight,
)
from core.scalars import ONE, q_power

A = Alphabet("T", ("X", "t"), frozenset({"t"}))
OTHER = Alphabet("S", ("Y",), frozenset())
q = q_power(1)


def X(i):
    return NCPoly.letter(A, "X", i)


def t(i, sign=1):
    return NCPoly.letter(A, "t", i, sign)


def assign(s: GeneratorSymbol) -> Weight:
    coords = [0, 0]
    if s.kind == "X":
        coords[s.index - 1] = 1
    return Weight(tuple(coords))


# ─────────────────────────────────────────────────────────────────────────────
# ARITHMETIC
# ─────────────────────────────────────────────────────────────────────────────

class TestArithmetic:
    def test_noncommutative(self):
        assert X(1) * X(2) != X(2) * X(1)

    def test_inverse_letters_cancel(self):
        assert t(1) * t(1, -1) == NCPoly.constant(A, 1)
        assert X(1) * t(2) * t(2, -1) * X(2) == X(1) * X(2)

    def test_cancellation_removes_terms(self):
        p = X(1) * 2 + X(2)
        assert (p - X(1) * 2) == X(2)
        assert (p - p).is_zero()

    def test_scalars_lift(self):
        p = X(1) + 1
        assert p.coefficient(()) == ONE
        assert (2 * X(1)).coefficient((GeneratorSymbol("X", 1),)) == 2
        assert (X(1) * q).coefficient((GeneratorSymbol("X", 1),)) == q

    def test_power(self):
        assert X(1) ** 0 == NCPoly.constant(A, 1)
        assert (X(1) ** 3).degree() == 3
        with pytest.raises(ValueError):
            X(1) ** -1

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            X(1) + NCPoly.letter(OTHER, "Y", 1)

    def test_non_invertible_letter(self):
        with pytest.raises(AlphabetMismatchError):
            NCPoly.letter(A, "X", 1, -1)

    def test_equality_and_hash_are_canonical(self):
        a = X(1) * X(2) + X(2)
        b = X(2) + X(1) * X(2)
        assert a == b
        assert hash(a) == hash(b)

    def test_linear_combination(self):
        p = linear_combination(A, [(2, X(1)), (q, X(2)), (-2, X(1))])
        assert p == X(2) * q


# ─────────────────────────────────────────────────────────────────────────────
# CANONICAL OUTPUT
# ─────────────────────────────────────────────────────────────────────────────

class TestFormat:
    def test_terms_in_degree_order(self):
        p = X(2) * X(1) + X(1) + 3
        words = [w for w, _ in p.terms()]
        assert [len(w) for w in words] == [0, 1, 2]

    def test_format(self):
        p = X(1) * X(2) - (q + q ** -1) * t(1)
        assert p.format() == "(-q - q^-1)*t1 + X1*X2"

    def test_format_inverse(self):
        assert (t(1, -1) * 3).format() == "3*t1^-1"

    def test_zero(self):
        assert NCPoly.zero(A).format() == "0"


# ─────────────────────────────────────────────────────────────────────────────
# MAPS AND GRADING
# ─────────────────────────────────────────────────────────────────────────────

class TestMaps:
    def test_reverse(self):
        assert reverse(X(1) * X(2) * q) == X(2) * X(1) * q

    def test_substitute_is_multiplicative(self):
        images = {
            GeneratorSymbol("X", 1): X(2),
            GeneratorSymbol("X", 2): X(1) + X(2),
            GeneratorSymbol("t", 1): t(1),
            GeneratorSymbol("t", 1, -1): t(1, -1),
        }
        p = X(1) * X(2)
        assert substitute(p, images) == X(2) * X(1) + X(2) * X(2)

    def test_substitute_with_twist(self):
        images = {GeneratorSymbol("X", 1): X(1)}
        assert substitute(X(1) * q, images, coefficient_twist=lambda c: c.bar()) == X(1) * q ** -1

    def test_missing_image(self):
        with pytest.raises(MissingImageError):
            substitute(X(1) * X(2), {GeneratorSymbol("X", 1): X(1)})

    def test_weight(self):
        assert weight(X(1) * X(2) + X(2) * X(1), assign, 2) == Weight((1, 1))
        assert weight(X(1) + X(2), assign, 2) == INHOMOGENEOUS
        assert weight(NCPoly.zero(A), assign, 2) == Weight((0, 0))

    def test_enumerate_words(self):
        letters = [GeneratorSymbol("X", 1), GeneratorSymbol("X", 2)]
        words = enumerate_words(letters, Weight((2, 1)), A)
        assert len(words) == 3
        assert len(set(words)) == 3
        assert enumerate_words(letters, Weight((0, 0)), A) == [()]
        assert enumerate_words(letters, Weight((-1, 0)), A) == []
