# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Exact Scalar Arithmetic
#
# Coefficient field Q(q): ratios of integer-coefficient Laurent polynomials
# in one indeterminate q, kept in a canonical reduced form so that equality
# of Scalars is equality of representations.
#
# Canonical form (num / den):
#   • num and den share no polynomial factor (gcd via subresultant PRS)
#   • den has integer content 1, positive lowest coefficient, min exponent 0
#   • q-powers and rational constants live in the numerator
#
# The modular image (ModularScalar, PrimeField) evaluates q at a random point
# of GF(p), p = 2^61 - 1, for the probabilistic zero-test fast path.
# ═══════════════════════════════════════════════════════════════════════════════

from __future__ import annotations

import functools
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_rr_prs_gcd

logger = logging.getLogger(__name__)

Coeff = Union[int, Fraction]


class ScalarError(ArithmeticError):
    """Raised on invalid exact arithmetic (zero denominators, bad arguments)."""


class BadSampleError(ArithmeticError):
    """Raised when a sample point makes a denominator vanish modulo p."""


def _clean(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ─────────────────────────────────────────────────────────────────────────────
# LAURENT POLYNOMIALS
# ─────────────────────────────────────────────────────────────────────────────

class LaurentPoly:
    """Finite map exponent -> nonzero rational coefficient. Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | None = None) -> None:
        cleaned: dict[int, Coeff] = {}
        for exp, coeff in (terms or {}).items():
            coeff = _clean(coeff)
            if coeff:
                cleaned[int(exp)] = coeff
        self._terms = cleaned
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: dict[int, Coeff]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: Coeff = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, coeff: Coeff) -> "LaurentPoly":
        return cls({0: coeff})

    # ── inspection ───────────────────────────────────────────────────────────
    def items(self) -> list[tuple[int, Coeff]]:
        """Terms sorted by increasing exponent."""
        return sorted(self._terms.items())

    def coefficient(self, exp: int) -> Coeff:
        return self._terms.get(exp, 0)

    @property
    def min_exp(self) -> int:
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        return max(self._terms)

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get(0) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: _clean(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.items())})"

    # ── ring operations ──────────────────────────────────────────────────────
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            s = _clean(out.get(exp, 0) + coeff)
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPoly._wrap(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._terms or not other._terms:
            return LaurentPoly._wrap({})
        out: dict[int, Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def scale(self, coeff: Coeff) -> "LaurentPoly":
        coeff = _clean(coeff)
        if not coeff:
            return LaurentPoly._wrap({})
        return LaurentPoly._wrap({e: _clean(c * coeff) for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly._wrap({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """Substitute q -> q^-1."""
        return LaurentPoly._wrap({-e: c for e, c in self._terms.items()})

    def evaluate_mod(self, q_image: int, prime: int) -> int:
        q_inv = pow(q_image, prime - 2, prime)
        total = 0
        for exp, coeff in self._terms.items():
            base = pow(q_image, exp, prime) if exp >= 0 else pow(q_inv, -exp, prime)
            if isinstance(coeff, Fraction):
                c = coeff.numerator * pow(coeff.denominator % prime, prime - 2, prime)
            else:
                c = coeff
            total = (total + c * base) % prime
        return total

    # ── dense integer views used by the gcd ──────────────────────────────────
    def _primitive_dense(self) -> tuple[list[int], Fraction]:
        """Return (primitive dense ints high->low, scale) with self = scale * q^min * poly."""
        lo, hi = self.min_exp, self.max_exp
        lcm_den = 1
        for coeff in self._terms.values():
            if isinstance(coeff, Fraction):
                lcm_den = lcm_den * coeff.denominator // math.gcd(lcm_den, coeff.denominator)
        dense = [0] * (hi - lo + 1)
        for exp, coeff in self._terms.items():
            dense[hi - exp] = int(coeff * lcm_den)
        content = 0
        for c in dense:
            content = math.gcd(content, c)
        return [c // content for c in dense], Fraction(content, lcm_den)

    @staticmethod
    def _from_dense(dense: list[int], low_exp: int, scale: Coeff = 1) -> "LaurentPoly":
        hi = low_exp + len(dense) - 1
        return LaurentPoly({hi - k: c * scale for k, c in enumerate(dense) if c})


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly({0: 1})


def _prs_gcd(f: list[int], g: list[int]) -> tuple[list[int], list[int], list[int]]:
    """Subresultant-PRS gcd over ZZ with cofactors, on dense high->low lists."""
    h, cff, cfg = dup_rr_prs_gcd([ZZ(c) for c in f], [ZZ(c) for c in g], ZZ)
    return [int(c) for c in h], [int(c) for c in cff], [int(c) for c in cfg]


def subresultant_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """
    Gcd of two integer Laurent polynomials, normalized to min exponent 0 and
    positive leading coefficient. gcd(0, g) = normalized g.
    """
    if not f and not g:
        return ZERO_POLY
    if not f:
        f, g = g, f
    if not g:
        dense, scale = f._primitive_dense()
        sign = -1 if dense[0] < 0 else 1
        return LaurentPoly._from_dense([sign * c for c in dense], 0, abs(scale))
    fd, fs = f._primitive_dense()
    gd, gs = g._primitive_dense()
    h, _, _ = _prs_gcd(fd, gd)
    content = Fraction(math.gcd(fs.numerator, gs.numerator), fs.denominator * gs.denominator // math.gcd(fs.denominator, gs.denominator))
    return LaurentPoly._from_dense(h, 0, content)


# ─────────────────────────────────────────────────────────────────────────────
# RATIONAL FUNCTIONS
# ─────────────────────────────────────────────────────────────────────────────

class Scalar:
    """An element of Q(q) in canonical form. Construct via normalize() or helpers."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: Coeff = 0) -> None:
        self.num = LaurentPoly.constant(value) if value else ZERO_POLY
        self.den = ONE_POLY
        self._hash: int | None = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_laurent(cls, poly: LaurentPoly) -> "Scalar":
        return cls._raw(poly, ONE_POLY)

    # ── predicates ───────────────────────────────────────────────────────────
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # ── field operations ─────────────────────────────────────────────────────
    def __add__(self, other: "Scalar | Coeff") -> "Scalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den.is_one() and other.den.is_one():
            return Scalar._raw(self.num + other.num, ONE_POLY)
        if self.den == other.den:
            return normalize(self.num + other.num, self.den)
        return normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other: "Scalar | Coeff") -> "Scalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coeff) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: "Scalar | Coeff") -> "Scalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar._raw(self.num * other.num, ONE_POLY)
        return normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ScalarError("division by zero")
        return normalize(self.den, self.num)

    def __truediv__(self, other: "Scalar | Coeff") -> "Scalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise ScalarError("division by zero")
        return normalize(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Coeff) -> "Scalar":
        return Scalar(other) / self

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def bar(self) -> "Scalar":
        return normalize(self.num.bar(), self.den.bar())

    # ── serialization ────────────────────────────────────────────────────────
    def to_text(self) -> str:
        def fmt(poly: LaurentPoly) -> str:
            return "[" + ",".join(f"({e},{c})" for e, c in poly.items()) + "]"
        return f"num:{fmt(self.num)};den:{fmt(self.den)}"

    @classmethod
    def from_text(cls, text: str) -> "Scalar":
        match = _TEXT_RE.fullmatch(text.strip())
        if match is None:
            raise ScalarError(f"malformed scalar text: {text!r}")
        num = LaurentPoly({int(e): Fraction(c) for e, c in _PAIR_RE.findall(match.group(1))})
        den = LaurentPoly({int(e): Fraction(c) for e, c in _PAIR_RE.findall(match.group(2))})
        return normalize(num, den)

    def evaluate_mod(self, q_image: int, prime: int) -> "ModularScalar":
        return eval_mod(self, q_image, prime)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)})"


_TEXT_RE = re.compile(r"num:\[(.*)\];den:\[(.*)\]")
_PAIR_RE = re.compile(r"\((-?\d+),(-?\d+(?:/\d+)?)\)")


def _coerce(value: object) -> Scalar | None:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return None


def normalize(num: LaurentPoly, den: LaurentPoly) -> Scalar:
    """Canonical form of num/den. Idempotent; invariant under common factors."""
    if not den:
        raise ScalarError("division by zero")
    if not num:
        return ZERO
    shift = num.min_exp - den.min_exp
    n_dense, n_scale = num._primitive_dense()
    d_dense, d_scale = den._primitive_dense()
    if len(d_dense) > 1 and len(n_dense) > 1:
        _, n_dense, d_dense = _prs_gcd(n_dense, d_dense)
    elif len(d_dense) > 1:
        pass
    else:
        # monomial denominator: already primitive, absorb the sign
        n_scale = n_scale * d_dense[0]
        d_dense = [1]
    scale = n_scale / d_scale
    if d_dense[-1] < 0:
        d_dense = [-c for c in d_dense]
        scale = -scale
    return Scalar._raw(
        LaurentPoly._from_dense(n_dense, shift, _clean(scale)),
        LaurentPoly._from_dense(d_dense, 0),
    )


ZERO = Scalar(0)
ONE = Scalar(1)


@functools.lru_cache(maxsize=None)
def q_power(k: int) -> Scalar:
    """q^k."""
    return Scalar.from_laurent(LaurentPoly.monomial(k))


def bar(x: Scalar) -> Scalar:
    return x.bar()


# ─────────────────────────────────────────────────────────────────────────────
# Q-COMBINATORICS   ([n]_t, [m]_t^!, binomials, (a; x)_n with t = q^k)
# ─────────────────────────────────────────────────────────────────────────────

@functools.lru_cache(maxsize=None)
def qint(n: int, k: int = 1) -> Scalar:
    """[n]_t at t = q^k: (t^n - t^-n)/(t - t^-1)."""
    if k <= 0:
        raise ScalarError("qint requires a positive power k")
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n, k)
    return Scalar.from_laurent(LaurentPoly({k * (n - 1 - 2 * j): 1 for j in range(n)}))


@functools.lru_cache(maxsize=None)
def qfact(m: int, k: int = 1) -> Scalar:
    """[m]_t^! at t = q^k."""
    if m < 0:
        raise ScalarError(f"quantum factorial of negative integer {m}")
    result = ONE
    for a in range(1, m + 1):
        result = result * qint(a, k)
    return result


@functools.lru_cache(maxsize=None)
def qbinom(n: int, d: int, k: int = 1) -> Scalar:
    """Quantum binomial [n choose d]_t at t = q^k; zero when d < 0."""
    if d < 0:
        return ZERO
    top = ONE
    for a in range(d):
        top = top * qint(n - a, k)
    return top / qfact(d, k)


def pochhammer(a: Scalar, x: Scalar, n: int) -> Scalar:
    """(a; x)_n = (1 - a)(1 - a x) ... (1 - a x^(n-1)); (a; x)_0 = 1."""
    if n < 0:
        raise ScalarError("pochhammer requires n >= 0")
    result, factor = ONE, a
    for _ in range(n):
        result = result * (ONE - factor)
        factor = factor * x
    return result


# ─────────────────────────────────────────────────────────────────────────────
# HUMAN-READABLE FORMAT  (parsed back by app/expression_parser.py)
# ─────────────────────────────────────────────────────────────────────────────

def _format_monomial(exp: int, coeff: Coeff) -> tuple[str, str]:
    """Return (sign, body) of coeff*q^exp."""
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    if exp == 0:
        return sign, str(mag)
    qpart = "q" if exp == 1 else f"q^{exp}"
    if mag == 1:
        return sign, qpart
    return sign, f"{mag}*{qpart}"


def format_laurent(poly: LaurentPoly) -> str:
    if not poly:
        return "0"
    parts: list[str] = []
    for exp, coeff in sorted(poly.items(), reverse=True):
        sign, body = _format_monomial(exp, coeff)
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def format_scalar(x: Scalar) -> str:
    """'q + q^-1', '(q^2 + 1)/(q^2 + q + 1)', '1/2*q'."""
    if x.den.is_one():
        return format_laurent(x.num)
    return f"({format_laurent(x.num)})/({format_laurent(x.den)})"


def needs_parens(x: Scalar) -> bool:
    return not x.den.is_one() or len(x.num) > 1


# ─────────────────────────────────────────────────────────────────────────────
# MODULAR IMAGES
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class ModularScalar:
    """Image of a Scalar in GF(prime) under q -> q_image."""

    value: int
    prime: int
    q_image: int

    def _other(self, other: object) -> int | None:
        if isinstance(other, ModularScalar):
            if other.prime != self.prime or other.q_image != self.q_image:
                raise ScalarError("mixing modular scalars from different sample points")
            return other.value
        if isinstance(other, int):
            return other % self.prime
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, self.prime - 2, self.prime) % self.prime
        return None

    def _make(self, value: int) -> "ModularScalar":
        return ModularScalar(value % self.prime, self.prime, self.q_image)

    def __bool__(self) -> bool:
        return self.value != 0

    def __add__(self, other: object) -> "ModularScalar":
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self._make(self.value + v)

    __radd__ = __add__

    def __sub__(self, other: object) -> "ModularScalar":
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self._make(self.value - v)

    def __rsub__(self, other: object) -> "ModularScalar":
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self._make(v - self.value)

    def __neg__(self) -> "ModularScalar":
        return self._make(-self.value)

    def __mul__(self, other: object) -> "ModularScalar":
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self._make(self.value * v)

    __rmul__ = __mul__

    def inverse(self) -> "ModularScalar":
        if self.value == 0:
            raise BadSampleError("bad sample, resample")
        return self._make(pow(self.value, self.prime - 2, self.prime))

    def __truediv__(self, other: object) -> "ModularScalar":
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self * self._make(v).inverse()

    def __pow__(self, n: int) -> "ModularScalar":
        if n < 0:
            return self.inverse() ** (-n)
        return self._make(pow(self.value, n, self.prime))

    def __str__(self) -> str:
        return f"{self.value} (mod {self.prime}, q={self.q_image})"


def eval_mod(x: Scalar, q_image: int, prime: int) -> ModularScalar:
    """Ring-homomorphic image of x at q = q_image in GF(prime)."""
    q_image %= prime
    if q_image == 0:
        raise BadSampleError("bad sample, resample")
    den = x.den.evaluate_mod(q_image, prime)
    if den == 0:
        raise BadSampleError("bad sample, resample")
    num = x.num.evaluate_mod(q_image, prime)
    return ModularScalar(num * pow(den, prime - 2, prime) % prime, prime, q_image)


# ─────────────────────────────────────────────────────────────────────────────
# COEFFICIENT FIELDS  (the reduction engine is written against this protocol)
# ─────────────────────────────────────────────────────────────────────────────

class RationalFunctionField:
    """Exact coefficients: Scalars themselves."""

    key: tuple = ("exact",)
    zero = ZERO
    one = ONE

    def convert(self, x: Scalar) -> Scalar:
        return x

    def from_int(self, n: Coeff) -> Scalar:
        return Scalar(n)

    def q_power(self, k: int) -> Scalar:
        return q_power(k)

    def qint(self, n: int, k: int = 1) -> Scalar:
        return qint(n, k)

    def qfact(self, m: int, k: int = 1) -> Scalar:
        return qfact(m, k)

    def __repr__(self) -> str:
        return "RationalFunctionField()"


class PrimeField:
    """Coefficients in GF(prime) with q evaluated at q_image."""

    def __init__(self, prime: int, q_image: int) -> None:
        if q_image % prime == 0:
            raise BadSampleError("bad sample, resample")
        self.prime = prime
        self.q_image = q_image % prime
        self.key = ("mod", prime, self.q_image)
        self.zero = ModularScalar(0, prime, self.q_image)
        self.one = ModularScalar(1, prime, self.q_image)
        self._q_inv = pow(self.q_image, prime - 2, prime)

    def convert(self, x: Scalar) -> ModularScalar:
        return eval_mod(x, self.q_image, self.prime)

    def from_int(self, n: Coeff) -> ModularScalar:
        return self.zero + n

    def q_power(self, k: int) -> ModularScalar:
        base = self.q_image if k >= 0 else self._q_inv
        return ModularScalar(pow(base, abs(k), self.prime), self.prime, self.q_image)

    def qint(self, n: int, k: int = 1) -> ModularScalar:
        return self.convert(qint(n, k))

    def qfact(self, m: int, k: int = 1) -> ModularScalar:
        return self.convert(qfact(m, k))

    def __repr__(self) -> str:
        return f"PrimeField(prime={self.prime}, q_image={self.q_image})"


EXACT = RationalFunctionField()
