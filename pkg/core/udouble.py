# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Drinfeld Double Ũ
#
# Straightening to triangular form  F-word · K-monomial · E-word  and canonical
# per-weight reduction of the F- and E-words modulo the q-Serre ideals.
#
# Cartan part: exponent vector over (K_1..K_n, K'_1..K'_n); K and K' are
# independent invertible generators and K_iK'_i is central.
#
# Per-weight reduction: the weight component of the Serre ideal is spanned by
# {u · S_ij · v}; row reduction with the degree-lex largest word as pivot
# leaves the standard monomials as a basis of the quotient component.
#
# Every routine is written against a coefficient field (core.scalars
# RationalFunctionField or PrimeField) so the modular zero test reruns the
# same code on ModularScalar coefficients.
# ═══════════════════════════════════════════════════════════════════════════════

from __future__ import annotations

import logging
import os
import random
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Iterable, Protocol, Sequence

from sympy.utilities.iterables import multiset_permutations

from config.constants import (
    DEFAULT_DEGREE_BUDGET,
    DEFAULT_MODULAR_TRIALS,
    DEGREE_BUDGET_ENV,
    MAX_RESAMPLE_ATTEMPTS,
    MODULAR_FIELD_CACHE_LIMIT,
    MODULAR_PRIME,
)
from core.cartan import CartanDatum, Weight, dot, fingerprint
from core.ncalg import Alphabet, AlphabetMismatchError, GeneratorSymbol, NCPoly
from core.scalars import (
    EXACT,
    ONE,
    BadSampleError,
    PrimeField,
    Scalar,
    format_scalar,
    needs_parens,
    q_power,
    qbinom,
    qfact,
)

logger = logging.getLogger(__name__)

U_ALPHABET = Alphabet("U", ("F", "K", "Kp", "E"), frozenset({"K", "Kp"}))

PLUS = "+"
MINUS = "-"

# (fword, kvec, eword); words are tuples of 1-indexed labels
TriKey = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


class DegreeBudgetExceeded(RuntimeError):
    """Raised when a weight component exceeds the configured degree budget."""


class ModularSamplingError(RuntimeError):
    """Raised when no usable sample point is found within the resample bound."""


class Field(Protocol):
    key: tuple
    zero: Any
    one: Any

    def convert(self, x: Scalar) -> Any: ...
    def from_int(self, n: int) -> Any: ...
    def q_power(self, k: int) -> Any: ...


class BasisStore(Protocol):
    def load(self, datum: CartanDatum, weight: Weight, sign: str) -> "WeightBasis | None": ...
    def save(self, datum: CartanDatum, basis: "WeightBasis") -> None: ...


# ─────────────────────────────────────────────────────────────────────────────
# CONFIGURATION
# ─────────────────────────────────────────────────────────────────────────────

_budget_override: int | None = None
_store: BasisStore | None = None


def degree_budget() -> int:
    if _budget_override is not None:
        return _budget_override
    raw = os.getenv(DEGREE_BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", DEGREE_BUDGET_ENV, raw)
    return DEFAULT_DEGREE_BUDGET


def set_degree_budget(budget: int | None) -> None:
    global _budget_override
    _budget_override = budget


def set_basis_store(store: BasisStore | None) -> None:
    """Install (or remove) the on-disk persistence layer for exact bases."""
    global _store
    _store = store


# ─────────────────────────────────────────────────────────────────────────────
# LETTERS
# ─────────────────────────────────────────────────────────────────────────────

def letter(kind: str, index: int, sign: int = 1) -> NCPoly:
    return NCPoly.letter(U_ALPHABET, kind, index, sign)


def E(i: int) -> NCPoly:
    return letter("E", i)


def F(i: int) -> NCPoly:
    return letter("F", i)


def K(i: int, sign: int = 1) -> NCPoly:
    return letter("K", i, sign)


def Kp(i: int, sign: int = 1) -> NCPoly:
    return letter("Kp", i, sign)


# ─────────────────────────────────────────────────────────────────────────────
# STRAIGHTENING
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TriangularTerm:
    fpart: tuple[int, ...]
    kpart: tuple[int, ...]
    epart: tuple[int, ...]
    coeff: Any


class _Straightener:
    """Right multiplication of triangular dicts by single generators."""

    def __init__(self, datum: CartanDatum, fld: Field) -> None:
        self.datum = datum
        self.field = fld
        self.n = datum.n
        self._qp: dict[int, Any] = {}
        self._hdiv = {
            j: fld.convert(ONE / (q_power(datum.eps(j)) - q_power(-datum.eps(j))))
            for j in datum.labels
        }

    def qp(self, k: int) -> Any:
        value = self._qp.get(k)
        if value is None:
            value = self._qp[k] = self.field.q_power(k)
        return value

    def _c_sum(self, i: int, word: Iterable[int]) -> int:
        row = self.datum.cartan[i - 1]
        return sum(row[a - 1] for a in word)

    def times(self, state: dict[TriKey, Any], kind: str, index: int, sign: int = 1) -> dict[TriKey, Any]:
        out: dict[TriKey, Any] = {}

        def push(key: TriKey, value: Any) -> None:
            total = out.get(key)
            total = value if total is None else total + value
            if total:
                out[key] = total
            else:
                out.pop(key, None)

        eps = self.datum.eps(index)
        if kind == "E":
            for (f, k, e), c in state.items():
                push((f, k, e + (index,)), c)
        elif kind in ("K", "Kp"):
            slot = index - 1 if kind == "K" else self.n + index - 1
            direction = -1 if kind == "K" else 1
            for (f, k, e), c in state.items():
                kk = list(k)
                kk[slot] += sign
                shift = direction * sign * eps * self._c_sum(index, e)
                push((f, tuple(kk), e), c * self.qp(shift) if shift else c)
        elif kind == "F":
            j = index
            hdiv = self._hdiv[j]
            for (f, k, e), c in state.items():
                # K^k F_j = q^{Σ ε_a c_aj (−k_a + k'_a)} F_j K^k
                shift = sum(
                    self.datum.symmetrizer[a] * self.datum.cartan[a][j - 1] * (k[self.n + a] - k[a])
                    for a in range(self.n)
                )
                push((f + (j,), k, e), c * self.qp(shift) if shift else c)
                for t, letter_t in enumerate(e):
                    if letter_t != j:
                        continue
                    left, rest = e[:t], e[:t] + e[t + 1:]
                    csum = eps * self._c_sum(j, left)
                    kk = list(k)
                    kk[j - 1] += 1
                    push((f, tuple(kk), rest), c * hdiv * self.qp(-csum))
                    kk = list(k)
                    kk[self.n + j - 1] += 1
                    push((f, tuple(kk), rest), -(c * hdiv * self.qp(csum)))
        else:
            raise ValueError(f"unknown Ũ letter kind {kind!r}")
        return out


def _identity_state(datum: CartanDatum, coeff: Any) -> dict[TriKey, Any]:
    return {((), (0,) * (2 * datum.n), ()): coeff}


def straighten_product(
    datum: CartanDatum,
    factors: Sequence[tuple[str, int, int]],
    fld: Field = EXACT,
    start: dict[TriKey, Any] | None = None,
) -> dict[TriKey, Any]:
    """Triangular dict of start · (product of the given letters)."""
    engine = _engine(datum, fld)
    state = dict(start) if start is not None else _identity_state(datum, fld.one)
    for kind, index, sign in factors:
        if not state:
            break
        state = engine.times(state, kind, index, sign)
    return state


_engines: dict[tuple, _Straightener] = {}


def _engine(datum: CartanDatum, fld: Field) -> _Straightener:
    key = (fingerprint(datum), fld.key)
    engine = _engines.get(key)
    if engine is None:
        engine = _engines[key] = _Straightener(datum, fld)
    return engine


def _triangular(datum: CartanDatum, p: NCPoly, fld: Field) -> dict[TriKey, Any]:
    if p.alphabet != U_ALPHABET:
        raise AlphabetMismatchError(f"expected a Ũ polynomial, got alphabet {p.alphabet.name}")
    total: dict[TriKey, Any] = {}
    for word, coeff in p.terms():
        c = fld.convert(coeff)
        if not c:
            continue
        part = straighten_product(datum, [(s.kind, s.index, s.sign) for s in word], fld, _identity_state(datum, c))
        for key, value in part.items():
            acc = total.get(key)
            acc = value if acc is None else acc + value
            if acc:
                total[key] = acc
            else:
                total.pop(key, None)
    return total


def straighten(datum: CartanDatum, p: NCPoly) -> list[TriangularTerm]:
    tri = _triangular(datum, p, EXACT)
    return [TriangularTerm(f, k, e, c) for (f, k, e), c in sorted(tri.items(), key=lambda t: t[0])]


# ─────────────────────────────────────────────────────────────────────────────
# SERRE ELEMENTS & PER-WEIGHT BASES
# ─────────────────────────────────────────────────────────────────────────────

def serre_element(datum: CartanDatum, i: int, j: int) -> dict[tuple[int, ...], Scalar]:
    """[1−c_ij]_i^! times the q-Serre element, as index words: Σ (−1)^n [1−c, n]_i i^n j i^{1−c−n}."""
    if i == j:
        raise ValueError("Serre element needs i ≠ j")
    top = 1 - datum.c(i, j)
    k = datum.eps(i)
    return {
        (i,) * n + (j,) + (i,) * (top - n): qbinom(top, n, k) * (-1) ** n
        for n in range(top + 1)
    }


def serre_poly(datum: CartanDatum, i: int, j: int, sign: str = PLUS) -> NCPoly:
    """Σ (−1)^n X_i^{(n)} X_j X_i^{(1−c_ij−n)} in E-letters (sign +) or F-letters (sign −)."""
    kind = "E" if sign == PLUS else "F"
    top = 1 - datum.c(i, j)
    k = datum.eps(i)
    total = NCPoly.zero(U_ALPHABET)
    for n in range(top + 1):
        word = (GeneratorSymbol(kind, i),) * n + (GeneratorSymbol(kind, j),) + (GeneratorSymbol(kind, i),) * (top - n)
        coeff = Scalar((-1) ** n) / (qfact(n, k) * qfact(top - n, k))
        total = total + NCPoly.from_word(U_ALPHABET, word, coeff)
    return total


def words_of_weight(wt: Weight) -> list[tuple[int, ...]]:
    """All index words with the letter multiset of a nonnegative weight, degree-lex descending."""
    letters: list[int] = []
    for i, a in enumerate(wt.coords, start=1):
        letters.extend([i] * a)
    if not letters:
        return [()]
    return sorted((tuple(p) for p in multiset_permutations(letters)), reverse=True)


@dataclass
class WeightBasis:
    weight: Weight
    sign: str
    monomials: list[tuple[int, ...]]
    basis_flags: list[bool]
    reduction: dict[tuple[int, ...], dict[tuple[int, ...], Any]]
    field_key: tuple = ("exact",)
    _index: dict = dc_field(default_factory=dict, repr=False)

    @property
    def standard(self) -> list[tuple[int, ...]]:
        return [w for w, flag in zip(self.monomials, self.basis_flags) if flag]

    @property
    def dimension(self) -> int:
        return sum(self.basis_flags)

    @property
    def pivots(self) -> int:
        return len(self.monomials) - self.dimension

    def reduce_word(self, word: tuple[int, ...], one: Any = ONE) -> dict[tuple[int, ...], Any]:
        red = self.reduction.get(word)
        return {word: one} if red is None else red


def _absolute(wt: Weight, sign: str) -> Weight:
    if sign == PLUS:
        if not wt.is_nonnegative():
            raise ValueError(f"weight {wt} must be nonnegative for sign +")
        return wt
    if not wt.is_nonpositive():
        raise ValueError(f"weight {wt} must be nonpositive for sign −")
    return -wt


def _compute_basis(datum: CartanDatum, wt: Weight, sign: str, fld: Field) -> WeightBasis:
    started = time.perf_counter()
    target = _absolute(wt, sign)
    degree = target.height()
    if degree > degree_budget():
        raise DegreeBudgetExceeded("degree budget exceeded")
    monomials = words_of_weight(target)

    # spanning rows u · S_ij · v
    rows: list[dict[tuple[int, ...], Any]] = []
    for i in datum.labels:
        for j in datum.labels:
            if i == j:
                continue
            top = 1 - datum.c(i, j)
            residual = target - datum.alpha(i) * top - datum.alpha(j)
            if not residual.is_nonnegative():
                continue
            serre = {w: fld.convert(c) for w, c in serre_element(datum, i, j).items()}
            for w in words_of_weight(residual):
                for cut in range(len(w) + 1):
                    u, v = w[:cut], w[cut:]
                    rows.append({u + s + v: c for s, c in serre.items()})

    # echelon form, pivot = largest word
    pivots: dict[tuple[int, ...], dict[tuple[int, ...], Any]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row)
            prow = pivots.get(lead)
            if prow is None:
                break
            factor = row[lead]
            for w, c in prow.items():
                total = row.get(w, fld.zero) - factor * c
                if total:
                    row[w] = total
                else:
                    row.pop(w, None)
        if not row:
            continue
        lead = max(row)
        inv = fld.one / row[lead]
        pivots[lead] = {w: c * inv for w, c in row.items()}

    # back substitution, smallest pivots first
    reduced: dict[tuple[int, ...], dict[tuple[int, ...], Any]] = {}
    for lead in sorted(pivots):
        row = dict(pivots[lead])
        for w in [w for w in row if w != lead and w in reduced]:
            factor = row.pop(w)
            for s, c in reduced[w].items():
                if s == w:
                    continue
                total = row.get(s, fld.zero) - factor * c
                if total:
                    row[s] = total
                else:
                    row.pop(s, None)
        reduced[lead] = row

    reduction = {
        lead: {s: -c for s, c in row.items() if s != lead}
        for lead, row in reduced.items()
    }
    flags = [w not in reduction for w in monomials]
    basis = WeightBasis(wt, sign, monomials, flags, reduction, fld.key)
    logger.debug(
        "Serre basis %s weight=%s sign=%s dim=%d/%d in %.3fs",
        datum.name, wt, sign, basis.dimension, len(monomials), time.perf_counter() - started,
    )
    return basis


_cache: dict[tuple, WeightBasis] = {}
_cache_guard = threading.Lock()
_key_locks: dict[tuple, threading.Lock] = {}


_recent_fields: OrderedDict[tuple, None] = OrderedDict()


def clear_cache() -> None:
    with _cache_guard:
        _cache.clear()
        _key_locks.clear()
        _engines.clear()
        _recent_fields.clear()


def release_field(field_key: tuple) -> None:
    """Drop every engine and basis built over one coefficient field."""
    with _cache_guard:
        for table in (_cache, _key_locks, _engines):
            for key in [key for key in table if key[-1] == field_key]:
                del table[key]


def _touch_field(field_key: tuple) -> None:
    # keep the bases of the most recent prime-field samples only
    with _cache_guard:
        _recent_fields[field_key] = None
        _recent_fields.move_to_end(field_key)
        stale = []
        while len(_recent_fields) > MODULAR_FIELD_CACHE_LIMIT:
            stale.append(_recent_fields.popitem(last=False)[0])
    for key in stale:
        release_field(key)


def serre_basis(datum: CartanDatum, wt: Weight, sign: str, fld: Field = EXACT) -> WeightBasis:
    """Standard-monomial basis and reduction matrix for one weight component."""
    key = (fingerprint(datum), wt.coords, sign, fld.key)
    basis = _cache.get(key)
    if basis is not None:
        return basis
    with _cache_guard:
        lock = _key_locks.setdefault(key, threading.Lock())
    with lock:
        basis = _cache.get(key)
        if basis is not None:
            return basis
        if fld is EXACT and _store is not None:
            basis = _store.load(datum, wt, sign)
            if basis is not None:
                logger.debug("Basis cache hit %s weight=%s sign=%s", datum.name, wt, sign)
        if basis is None:
            basis = _compute_basis(datum, wt, sign, fld)
            if fld is EXACT and _store is not None:
                _store.save(datum, basis)
        _cache[key] = basis
    return basis


def _word_weight(datum: CartanDatum, word: tuple[int, ...], sign: str) -> Weight:
    coords = [0] * datum.n
    step = 1 if sign == PLUS else -1
    for a in word:
        coords[a - 1] += step
    return Weight(tuple(coords))


def reduce_index_word(datum: CartanDatum, word: tuple[int, ...], sign: str, fld: Field = EXACT) -> dict[tuple[int, ...], Any]:
    basis = serre_basis(datum, _word_weight(datum, word, sign), sign, fld)
    red = basis.reduction.get(word)
    return {word: fld.one} if red is None else red


# ─────────────────────────────────────────────────────────────────────────────
# CANONICAL ELEMENTS
# ─────────────────────────────────────────────────────────────────────────────

class UElement:
    """Canonical form: map (standard F-word, K-vector, standard E-word) -> coefficient."""

    __slots__ = ("datum", "field", "terms")

    def __init__(self, datum: CartanDatum, fld: Field, terms: dict[TriKey, Any]) -> None:
        self.datum = datum
        self.field = fld
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UElement):
            return NotImplemented
        return self.field.key == other.field.key and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[TriKey, Any]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][2]), t[0]))

    def weight_components(self) -> set[Weight]:
        out = set()
        for f, _, e in self.terms:
            coords = [0] * self.datum.n
            for a in e:
                coords[a - 1] += 1
            for a in f:
                coords[a - 1] -= 1
            out.add(Weight(tuple(coords)))
        return out

    def serialize(self) -> str:
        """Stable text form: one 'fword|kvec|eword=coeff' item per term."""
        if not self.terms:
            return "0"
        items = []
        for (f, k, e), c in self.sorted_terms():
            text = c.to_text() if isinstance(c, Scalar) else str(c.value)
            items.append(f"{','.join(map(str, f))}|{','.join(map(str, k))}|{','.join(map(str, e))}={text}")
        return ";".join(items)

    def format(self) -> str:
        """Expression text in Ũ letters that parses back to this element."""
        if not self.terms:
            return "0"
        n = self.datum.n
        parts = []
        for (f, k, e), c in self.sorted_terms():
            letters = [f"F{a}" for a in f]
            for a in range(n):
                if k[a]:
                    letters.append(f"K{a + 1}" + (f"^{k[a]}" if k[a] != 1 else ""))
            for a in range(n):
                if k[n + a]:
                    letters.append(f"Kp{a + 1}" + (f"^{k[n + a]}" if k[n + a] != 1 else ""))
            letters.extend(f"E{a}" for a in e)
            word = "*".join(letters)
            sign = "+"
            if isinstance(c, Scalar):
                if c == 1:
                    body = word or "1"
                elif c == -1:
                    sign, body = "-", word or "1"
                else:
                    ctext = format_scalar(c)
                    if needs_parens(c):
                        ctext = f"({ctext})"
                    elif ctext.startswith("-"):
                        sign, ctext = "-", ctext[1:]
                    body = f"{ctext}*{word}" if word else ctext
            else:
                body = f"[{c.value}]*{word}" if word else f"[{c.value}]"
            parts.append(body if not parts and sign == "+" else (f"-{body}" if not parts else f"{sign} {body}"))
        return " ".join(parts)

    def to_poly(self) -> NCPoly:
        """The canonical form read back as a Ũ polynomial (exact coefficients only)."""
        total = NCPoly.zero(U_ALPHABET)
        for key, c in self.sorted_terms():
            word = [GeneratorSymbol(kind, a, sign) for kind, a, sign in _term_letters(self.datum, key)]
            total = total + NCPoly.from_word(U_ALPHABET, word, c)
        return total

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"UElement({self.format()})"


def canonicalize(datum: CartanDatum, tri: dict[TriKey, Any], fld: Field = EXACT) -> UElement:
    out: dict[TriKey, Any] = {}
    for (f, k, e), c in tri.items():
        fred = reduce_index_word(datum, f, MINUS, fld)
        ered = reduce_index_word(datum, e, PLUS, fld)
        for fs, cf in fred.items():
            cfc = c * cf
            for es, ce in ered.items():
                key = (fs, k, es)
                value = cfc * ce
                total = out.get(key)
                total = value if total is None else total + value
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
    return UElement(datum, fld, out)


def reduce(datum: CartanDatum, p: NCPoly, fld: Field = EXACT) -> UElement:
    """Canonical UElement of a Ũ polynomial."""
    return canonicalize(datum, _triangular(datum, p, fld), fld)


def is_zero(datum: CartanDatum, p: NCPoly) -> bool:
    return reduce(datum, p).is_zero()


def _term_letters(datum: CartanDatum, key: TriKey) -> list[tuple[str, int, int]]:
    f, k, e = key
    n = datum.n
    letters = [("F", a, 1) for a in f]
    for a in range(n):
        sign = 1 if k[a] > 0 else -1
        letters.extend([("K", a + 1, sign)] * abs(k[a]))
    for a in range(n):
        sign = 1 if k[n + a] > 0 else -1
        letters.extend([("Kp", a + 1, sign)] * abs(k[n + a]))
    letters.extend(("E", a, 1) for a in e)
    return letters


def umul(x: UElement, y: UElement) -> UElement:
    datum, fld = x.datum, x.field
    total: dict[TriKey, Any] = {}
    for key, c in y.terms.items():
        part = straighten_product(datum, _term_letters(datum, key), fld, x.terms)
        for k2, v in part.items():
            acc = total.get(k2)
            acc = v * c if acc is None else acc + v * c
            if acc:
                total[k2] = acc
            else:
                total.pop(k2, None)
    return canonicalize(datum, total, fld)


def uadd(x: UElement, y: UElement) -> UElement:
    out = dict(x.terms)
    for key, c in y.terms.items():
        total = out.get(key)
        total = c if total is None else total + c
        if total:
            out[key] = total
        else:
            out.pop(key, None)
    return UElement(x.datum, x.field, out)


def uscale(c: Any, x: UElement) -> UElement:
    if not c:
        return UElement(x.datum, x.field, {})
    return UElement(x.datum, x.field, {k: v * c for k, v in x.terms.items()})


def is_zero_modular(
    datum: CartanDatum,
    p: NCPoly,
    trials: int = DEFAULT_MODULAR_TRIALS,
    seed: int = 0,
    prime: int = MODULAR_PRIME,
) -> bool:
    """
    Probabilistic zero test. True means the image vanished at every sample.
    False means it survived at some sample; a specialisation where a Serre
    basis loses rank or a coefficient hits a pole can make that spurious, so
    callers confirm with the exact reduction.
    """
    return modular_zero_test(lambda fld: reduce(datum, p, fld), trials, seed, prime)


def modular_zero_test(
    evaluate: Callable[[Field], UElement],
    trials: int = DEFAULT_MODULAR_TRIALS,
    seed: int = 0,
    prime: int = MODULAR_PRIME,
) -> bool:
    """Run evaluate over `trials` random prime-field images of q; deterministic in seed."""
    rng = random.Random(seed)
    for trial in range(trials):
        for attempt in range(MAX_RESAMPLE_ATTEMPTS):
            q_image = rng.randrange(2, prime - 1)
            try:
                fld = PrimeField(prime, q_image)
                _touch_field(fld.key)
                image = evaluate(fld)
                break
            except BadSampleError:
                logger.warning("Bad sample q=%d (trial %d, attempt %d), resampling", q_image, trial, attempt)
        else:
            raise ModularSamplingError(f"no usable sample point after {MAX_RESAMPLE_ATTEMPTS} attempts")
        if image:
            return False
    return True


# ─────────────────────────────────────────────────────────────────────────────
# RADICAL-FORM ORACLE  (independent zero test on U^±)
# ─────────────────────────────────────────────────────────────────────────────

def _one_sign_words(p: NCPoly) -> tuple[dict[tuple[int, ...], Scalar], str | None]:
    kinds = {s.kind for s in p.symbols()}
    if kinds - {"E", "F"} or len(kinds) > 1:
        raise ValueError("radical oracle needs a polynomial in E-letters only or F-letters only")
    sign = None if not kinds else (PLUS if kinds == {"E"} else MINUS)
    return {tuple(s.index for s in w): c for w, c in p.items()}, sign


def form_radical_oracle(datum: CartanDatum, p: NCPoly | dict[tuple[int, ...], Scalar], wt: Weight) -> bool:
    """True iff p pairs to zero with every word of its weight under the standard form."""
    if isinstance(p, NCPoly):
        words, _ = _one_sign_words(p)
    else:
        words = dict(p)
    target = wt if wt.is_nonnegative() else -wt
    if not (wt.is_nonnegative() or wt.is_nonpositive()):
        raise ValueError("radical oracle needs a one-sign weight")
    for w in words:
        if _word_weight(datum, w, PLUS) != target:
            raise ValueError("inhomogeneous input to radical oracle")
    if not words:
        return True

    # the (θ_j, θ_j) factors are nonzero and do not affect vanishing
    alpha_dot = {(a, b): dot(datum, datum.alpha(a), datum.alpha(b)) for a in datum.labels for b in datum.labels}

    def r_j(comb: dict[tuple[int, ...], Scalar], j: int) -> dict[tuple[int, ...], Scalar]:
        out: dict[tuple[int, ...], Scalar] = {}
        for w, c in comb.items():
            tail = 0
            for t in range(len(w) - 1, -1, -1):
                if w[t] == j:
                    key = w[:t] + w[t + 1:]
                    value = c * q_power(tail) if tail else c
                    total = out.get(key)
                    total = value if total is None else total + value
                    if total:
                        out[key] = total
                    else:
                        out.pop(key, None)
                tail += alpha_dot[(j, w[t])]
        return out

    memo: dict[tuple[int, ...], dict[tuple[int, ...], Scalar]] = {(): words}

    def stripped(suffix: tuple[int, ...]) -> dict[tuple[int, ...], Scalar]:
        # element after applying r for each letter of suffix, last letter first
        cached = memo.get(suffix)
        if cached is None:
            prev = stripped(suffix[1:])
            cached = memo[suffix] = r_j(prev, suffix[0])
        return cached

    for other in words_of_weight(target):
        remainder = stripped(other)
        value = remainder.get(())
        if value:
            return False
    return True


def _bare_pairing(
    datum: CartanDatum,
    x: tuple[int, ...],
    y: tuple[int, ...],
    memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Scalar],
) -> Scalar:
    # the form without its (θ_j, θ_j) factors
    if len(x) != len(y):
        return Scalar(0)
    if not y:
        return ONE
    cached = memo.get((x, y))
    if cached is not None:
        return cached
    j = y[-1]
    total = Scalar(0)
    tail = 0
    for t in range(len(x) - 1, -1, -1):
        if x[t] == j:
            total = total + q_power(tail) * _bare_pairing(datum, x[:t] + x[t + 1:], y[:-1], memo)
        tail += dot(datum, datum.alpha(j), datum.alpha(x[t]))
    memo[(x, y)] = total
    return total


def form_pairing(datum: CartanDatum, x: tuple[int, ...], y: tuple[int, ...]) -> Scalar:
    """(x, y) for index words x, y."""
    scale = ONE
    for j in y:
        scale = scale / (ONE - q_power(-2 * datum.eps(j)))
    return _bare_pairing(datum, x, y, {}) * scale


def _rank(rows: list[list[Scalar]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ONE / rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col].is_zero():
                continue
            factor = rows[r][col] * inv
            rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def form_radical_dimension(datum: CartanDatum, wt: Weight) -> int:
    """Dimension of the radical of the form on all words of a one-sign weight (exact Gram rank)."""
    if not (wt.is_nonnegative() or wt.is_nonpositive()):
        raise ValueError("radical dimension needs a one-sign weight")
    words = words_of_weight(wt if wt.is_nonnegative() else -wt)
    memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Scalar] = {}
    gram = [[_bare_pairing(datum, x, y, memo) for y in words] for x in words]
    return len(words) - _rank(gram)


def _basis_zero(datum: CartanDatum, element: dict[tuple[int, ...], Scalar], sign: str) -> bool:
    total: dict[tuple[int, ...], Scalar] = {}
    for word, c in element.items():
        for s, r in reduce_index_word(datum, word, sign).items():
            value = total.get(s)
            value = c * r if value is None else value + c * r
            if value:
                total[s] = value
            else:
                total.pop(s, None)
    return not total


def oracle_disagreements(datum: CartanDatum, tri: dict[TriKey, Scalar]) -> list[str]:
    """
    Zero-test every homogeneous one-sign component of an exact triangular
    dict twice, by Serre-basis reduction and by the radical oracle, and list
    the components where the two verdicts differ. The E-part is grouped by
    its (F-word, K-vector) prefix and the F-part by its (K-vector, E-word)
    suffix.
    """
    groups: dict[tuple, dict[tuple[int, ...], Scalar]] = {}
    for (f, k, e), c in tri.items():
        for sign, context, word in ((PLUS, (f, k), e), (MINUS, (k, e), f)):
            if not word:
                continue
            coords = _word_weight(datum, word, PLUS).coords
            group = groups.setdefault((sign, coords, context), {})
            total = group.get(word)
            group[word] = c if total is None else total + c

    bad = []
    for (sign, coords, context), element in sorted(groups.items(), key=lambda t: t[0]):
        element = {w: c for w, c in element.items() if c}
        if not element:
            continue
        by_basis = _basis_zero(datum, element, sign)
        by_form = form_radical_oracle(datum, element, Weight(coords))
        if by_basis != by_form:
            bad.append(
                f"oracle disagreement at sign {sign} weight {Weight(coords)}: "
                f"basis zero={by_basis}, form zero={by_form}"
            )
    return bad
