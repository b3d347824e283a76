# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Noncommutative Polynomials
#
# Free-algebra substrate shared by the Drinfeld double (letters E, F, K, K')
# and the ıquantum group (letters B, k). An Alphabet fixes the symbol order
# and which kinds are invertible; words never contain an adjacent x·x⁻¹.
# ═══════════════════════════════════════════════════════════════════════════════

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from sympy.utilities.iterables import multiset_permutations

from core.cartan import Weight
from core.scalars import ONE, Scalar, format_scalar, needs_parens

logger = logging.getLogger(__name__)

INHOMOGENEOUS = "inhomogeneous"


class AlphabetMismatchError(ValueError):
    """Raised when polynomials over different alphabets are combined."""


class MissingImageError(KeyError):
    """Raised when a substitution map has no image for a symbol."""


# ─────────────────────────────────────────────────────────────────────────────
# SYMBOLS & ALPHABETS
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class GeneratorSymbol:
    kind: str
    index: int
    sign: int = 1

    def inverse(self) -> "GeneratorSymbol":
        return GeneratorSymbol(self.kind, self.index, -self.sign)

    def __str__(self) -> str:
        return f"{self.kind}{self.index}" + ("^-1" if self.sign < 0 else "")


Word = tuple[GeneratorSymbol, ...]


@dataclass(frozen=True)
class Alphabet:
    name: str
    kinds: tuple[str, ...]
    invertible: frozenset[str]

    def symbol(self, kind: str, index: int, sign: int = 1) -> GeneratorSymbol:
        if kind not in self.kinds:
            raise AlphabetMismatchError(f"letter kind {kind!r} not in alphabet {self.name}")
        if sign != 1 and kind not in self.invertible:
            raise AlphabetMismatchError(f"letter {kind}{index} is not invertible")
        return GeneratorSymbol(kind, index, sign)

    def symbol_key(self, s: GeneratorSymbol) -> tuple[int, int, int]:
        return (self.kinds.index(s.kind), s.index, -s.sign)

    def word_key(self, w: Word) -> tuple:
        return (len(w), tuple(self.symbol_key(s) for s in w))

    def contains(self, s: GeneratorSymbol) -> bool:
        return s.kind in self.kinds and (s.sign == 1 or s.kind in self.invertible)


def _join(left: Word, right: Word) -> Word:
    """Concatenate, cancelling x·x⁻¹ at the junction."""
    i = 0
    while i < len(left) and i < len(right) and left[-1 - i] == right[i].inverse():
        i += 1
    return left[: len(left) - i] + right[i:]


def reduce_word(word: Iterable[GeneratorSymbol]) -> Word:
    out: list[GeneratorSymbol] = []
    for s in word:
        if out and out[-1].kind == s.kind and out[-1].index == s.index and out[-1].sign == -s.sign:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


# ─────────────────────────────────────────────────────────────────────────────
# NCPOLY
# ─────────────────────────────────────────────────────────────────────────────

class NCPoly:
    """Finite map Word -> nonzero coefficient over a fixed alphabet. Immutable."""

    __slots__ = ("alphabet", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Scalar] | None = None) -> None:
        self.alphabet = alphabet
        clean: dict[Word, Scalar] = {}
        for word, coeff in (terms or {}).items():
            word = reduce_word(word)
            total = clean.get(word)
            total = coeff if total is None else total + coeff
            if total:
                clean[word] = total
            else:
                clean.pop(word, None)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, alphabet: Alphabet, terms: dict[Word, Scalar]) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NCPoly":
        return cls._wrap(alphabet, {})

    @classmethod
    def constant(cls, alphabet: Alphabet, coeff: Scalar | int = 1) -> "NCPoly":
        coeff = Scalar(coeff) if isinstance(coeff, int) else coeff
        return cls._wrap(alphabet, {(): coeff} if coeff else {})

    @classmethod
    def letter(cls, alphabet: Alphabet, kind: str, index: int, sign: int = 1) -> "NCPoly":
        return cls._wrap(alphabet, {(alphabet.symbol(kind, index, sign),): ONE})

    @classmethod
    def from_word(cls, alphabet: Alphabet, word: Sequence[GeneratorSymbol], coeff: Scalar = ONE) -> "NCPoly":
        return cls(alphabet, {tuple(word): coeff})

    # ── inspection ───────────────────────────────────────────────────────────
    def terms(self) -> list[tuple[Word, Scalar]]:
        """Terms in canonical order (degree, then symbol order)."""
        return sorted(self._terms.items(), key=lambda t: self.alphabet.word_key(t[0]))

    def items(self):
        return self._terms.items()

    def coefficient(self, word: Word) -> Scalar:
        return self._terms.get(tuple(word), Scalar(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def symbols(self) -> set[GeneratorSymbol]:
        return {s for w in self._terms for s in w}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet.name, frozenset(self._terms.items())))
        return self._hash

    # ── algebra ──────────────────────────────────────────────────────────────
    def _same(self, other: "NCPoly") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError(
                f"alphabet mismatch: {self.alphabet.name} vs {other.alphabet.name}"
            )

    def _lift(self, other: object) -> "NCPoly | None":
        if isinstance(other, NCPoly):
            self._same(other)
            return other
        if isinstance(other, (int, Scalar)):
            return NCPoly.constant(self.alphabet, other)
        return None

    def __add__(self, other: object) -> "NCPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._wrap(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: object) -> "NCPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other: object) -> "NCPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "NCPoly":
        if isinstance(other, (int, Scalar)):
            return scale(other, self)
        if isinstance(other, NCPoly):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other: object) -> "NCPoly":
        if isinstance(other, (int, Scalar)):
            return scale(other, self)
        return NotImplemented

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        result = NCPoly.constant(self.alphabet, 1)
        for _ in range(n):
            result = mul(result, self)
        return result

    # ── output ───────────────────────────────────────────────────────────────
    def serialize(self) -> list[list[str]]:
        return [[format_word(w), c.to_text()] for w, c in self.terms()]

    def format(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, coeff in self.terms():
            wtext = format_word(word, sep="*")
            if coeff == 1:
                body, sign = (wtext or "1"), "+"
            elif coeff == -1:
                body, sign = (wtext or "1"), "-"
            else:
                ctext = format_scalar(coeff)
                sign = "+"
                if not needs_parens(coeff) and ctext.startswith("-"):
                    sign, ctext = "-", ctext[1:]
                elif needs_parens(coeff):
                    ctext = f"({ctext})"
                body = f"{ctext}*{wtext}" if wtext else ctext
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"NCPoly[{self.alphabet.name}]({self.format()})"


def format_word(word: Word, sep: str = " ") -> str:
    return sep.join(str(s) for s in word)


def add(p: NCPoly, q: NCPoly) -> NCPoly:
    p._same(q)
    out = dict(p._terms)
    for word, coeff in q._terms.items():
        total = out.get(word)
        total = coeff if total is None else total + coeff
        if total:
            out[word] = total
        else:
            out.pop(word, None)
    return NCPoly._wrap(p.alphabet, out)


def scale(c: Scalar | int, p: NCPoly) -> NCPoly:
    if not c:
        return NCPoly.zero(p.alphabet)
    return NCPoly._wrap(p.alphabet, {w: coeff * c for w, coeff in p._terms.items()})


def mul(p: NCPoly, q: NCPoly) -> NCPoly:
    p._same(q)
    out: dict[Word, Scalar] = {}
    for w1, c1 in p._terms.items():
        for w2, c2 in q._terms.items():
            word = _join(w1, w2)
            total = out.get(word)
            prod = c1 * c2
            total = prod if total is None else total + prod
            if total:
                out[word] = total
            else:
                out.pop(word, None)
    return NCPoly._wrap(p.alphabet, out)


def linear_combination(alphabet: Alphabet, terms: Iterable[tuple[Scalar | int, NCPoly]]) -> NCPoly:
    total = NCPoly.zero(alphabet)
    for coeff, poly in terms:
        total = add(total, scale(coeff, poly))
    return total


def reverse(p: NCPoly) -> NCPoly:
    return NCPoly._wrap(p.alphabet, {tuple(reversed(w)): c for w, c in p._terms.items()})


def substitute(
    p: NCPoly,
    images: Mapping[GeneratorSymbol, NCPoly],
    coefficient_twist: Callable[[Scalar], Scalar] | None = None,
    target: Alphabet | None = None,
) -> NCPoly:
    """Multiplicative (semilinear when coefficient_twist is given) extension of images."""
    alphabet = target or p.alphabet
    result = NCPoly.zero(alphabet)
    for word, coeff in p.terms():
        term = NCPoly.constant(alphabet, coefficient_twist(coeff) if coefficient_twist else coeff)
        for s in word:
            image = images.get(s)
            if image is None:
                raise MissingImageError(f"no image for symbol {s}")
            term = mul(term, image)
        result = add(result, term)
    return result


def weight(p: NCPoly, assignment: Callable[[GeneratorSymbol], Weight], n: int) -> Weight | str:
    """Common weight of every word, or INHOMOGENEOUS. The zero polynomial has weight 0."""
    found: Weight | None = None
    for word in p._terms:
        w = Weight.zero(n)
        for s in word:
            w = w + assignment(s)
        if found is None:
            found = w
        elif w != found:
            return INHOMOGENEOUS
    return found if found is not None else Weight.zero(n)


def enumerate_words(letters: Sequence[GeneratorSymbol], wt: Weight, alphabet: Alphabet) -> list[Word]:
    """
    All words in the given letters (one per index, weight ±α_index) with letter
    multiset prescribed by wt, in lexicographic symbol order.
    """
    by_index = {s.index: s for s in letters}
    multiset: list[GeneratorSymbol] = []
    for i, a in enumerate(wt.coords, start=1):
        if a == 0:
            continue
        if a < 0 or i not in by_index:
            return []
        multiset.extend([by_index[i]] * a)
    if not multiset:
        return [()]
    ordered = sorted(set(multiset), key=alphabet.symbol_key)
    rank = {s: k for k, s in enumerate(ordered)}
    keys = sorted(rank[s] for s in multiset)
    return [tuple(ordered[k] for k in perm) for perm in multiset_permutations(keys)]
