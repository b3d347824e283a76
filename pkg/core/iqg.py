# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Universal ıQuantum Group Ũ^ı
#
# ı-expressions are noncommutative polynomials in B_i, k_i^{±1}. They are never
# normalized beyond cancelling k_i k_i^{-1}; equality is decided through
#
#     embed:  B_i  ->  F_i + E_{τi} K'_i        k_i  ->  K_i K'_{τi}
#
# into the Drinfeld double, where udouble reduces to canonical form.
#
# Builders return LHS − RHS of each identity, so every check is "embed(x) = 0".
# ═══════════════════════════════════════════════════════════════════════════════

from __future__ import annotations

import logging
from typing import Any

from config.constants import DEFAULT_MODULAR_TRIALS
from core.cartan import CartanDatum
from core.ncalg import Alphabet, GeneratorSymbol, NCPoly, linear_combination, reverse, substitute
from core.scalars import EXACT, ONE, Scalar, pochhammer, q_power, qfact, qint
from core.udouble import Field, TriKey, UElement, canonicalize, modular_zero_test, straighten_product

logger = logging.getLogger(__name__)

I_ALPHABET = Alphabet("I", ("B", "k"), frozenset({"k"}))

ODD = 1
EVEN = 0
LITERAL = "literal"
N_CORRECTED = "n_corrected"
YGEN_VARIANTS = (LITERAL, N_CORRECTED)


class IExpressionError(ValueError):
    """Raised when a builder is called outside its hypotheses."""


# ─────────────────────────────────────────────────────────────────────────────
# LETTERS & SCALARS
# ─────────────────────────────────────────────────────────────────────────────

def B(i: int) -> NCPoly:
    return NCPoly.letter(I_ALPHABET, "B", i)


def k(i: int, sign: int = 1) -> NCPoly:
    return NCPoly.letter(I_ALPHABET, "k", i, sign)


def const(c: Scalar | int) -> NCPoly:
    return NCPoly.constant(I_ALPHABET, c)


def zero() -> NCPoly:
    return NCPoly.zero(I_ALPHABET)


def qi(datum: CartanDatum, i: int, x: int) -> Scalar:
    """q_i^x."""
    return q_power(datum.eps(i) * x)


def qi_diff(datum: CartanDatum, i: int) -> Scalar:
    """q_i − q_i^{-1}."""
    return qi(datum, i, 1) - qi(datum, i, -1)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


# ─────────────────────────────────────────────────────────────────────────────
# EMBEDDING INTO Ũ
# ─────────────────────────────────────────────────────────────────────────────

def _branches(datum: CartanDatum, s: GeneratorSymbol) -> list[list[tuple[str, int, int]]]:
    if s.kind == "B":
        return [[("F", s.index, 1)], [("E", datum.tau_of(s.index), 1), ("Kp", s.index, 1)]]
    return [[("K", s.index, s.sign), ("Kp", datum.tau_of(s.index), s.sign)]]


def _accumulate(total: dict[TriKey, Any], part: dict[TriKey, Any], scale: Any = None) -> None:
    for key, value in part.items():
        if scale is not None:
            value = value * scale
        acc = total.get(key)
        acc = value if acc is None else acc + value
        if acc:
            total[key] = acc
        else:
            total.pop(key, None)


def embed_triangular(datum: CartanDatum, x: NCPoly, fld: Field = EXACT) -> dict[TriKey, Any]:
    """Straightened image of an ı-expression before per-weight reduction."""
    if x.alphabet != I_ALPHABET:
        raise IExpressionError(f"embed expects an ı-expression, got alphabet {x.alphabet.name}")
    unit = {((), (0,) * (2 * datum.n), ()): fld.one}
    prefixes: dict[tuple[GeneratorSymbol, ...], dict[TriKey, Any]] = {(): unit}

    def state_of(word: tuple[GeneratorSymbol, ...]) -> dict[TriKey, Any]:
        state = prefixes.get(word)
        if state is None:
            prev = state_of(word[:-1])
            state = {}
            for branch in _branches(datum, word[-1]):
                _accumulate(state, straighten_product(datum, branch, fld, prev))
            prefixes[word] = state
        return state

    total: dict[TriKey, Any] = {}
    for word, coeff in x.terms():
        c = fld.convert(coeff)
        if c:
            _accumulate(total, state_of(word), c)
    return total


def embed(datum: CartanDatum, x: NCPoly, fld: Field = EXACT) -> UElement:
    """Canonical image of an ı-expression in the Drinfeld double."""
    return canonicalize(datum, embed_triangular(datum, x, fld), fld)


def embed_is_zero(datum: CartanDatum, x: NCPoly) -> bool:
    return embed(datum, x).is_zero()


# ─────────────────────────────────────────────────────────────────────────────
# DIVIDED POWERS
# ─────────────────────────────────────────────────────────────────────────────

def divided_power(datum: CartanDatum, i: int, m: int) -> NCPoly:
    """B_i^{(m)} = B_i^m / [m]_{q_i}^!; zero for m < 0."""
    if m < 0:
        return zero()
    return B(i) ** m * (ONE / qfact(m, datum.eps(i)))


def idivided_power(datum: CartanDatum, i: int, m: int, parity: int) -> NCPoly:
    """ıdivided power B_{i,p̄}^{(m)} for a τ-fixed node; zero for m < 0."""
    if datum.tau_of(i) != i:
        raise IExpressionError(f"ıdivided powers need τ{i} = {i}")
    if m < 0:
        return zero()
    eps = datum.eps(i)
    half, odd = divmod(m, 2)
    b2 = B(i) * B(i)
    result = B(i) if odd else const(1)
    for j in range(1, half + 1):
        if parity % 2 == ODD:
            bracket = 2 * j - 1
        else:
            bracket = 2 * j if odd else 2 * j - 2
        shift = qi(datum, i, 1) * qint(bracket, eps) * qint(bracket, eps)
        result = result * (b2 - k(i) * shift)
    return result * (ONE / qfact(m, eps))


# ─────────────────────────────────────────────────────────────────────────────
# INVOLUTIONS
# ─────────────────────────────────────────────────────────────────────────────

def _images(datum: CartanDatum, k_scale: bool) -> dict[GeneratorSymbol, NCPoly]:
    images: dict[GeneratorSymbol, NCPoly] = {}
    for i in datum.labels:
        t = datum.tau_of(i)
        images[GeneratorSymbol("B", i)] = B(i)
        c = datum.c(i, t) if k_scale else 0
        images[GeneratorSymbol("k", i)] = k(t) * qi(datum, i, c)
        images[GeneratorSymbol("k", i, -1)] = k(t, -1) * qi(datum, i, -c)
    return images


def sigma(datum: CartanDatum, x: NCPoly) -> NCPoly:
    """Anti-involution: reverses words, B_i -> B_i, k_i -> k_{τi}."""
    return reverse(substitute(x, _images(datum, k_scale=False)))


def psi(datum: CartanDatum, x: NCPoly) -> NCPoly:
    """Bar involution: q -> q^{-1}, B_i -> B_i, k_i -> q_i^{c_{i,τi}} k_{τi}."""
    return substitute(x, _images(datum, k_scale=True), coefficient_twist=Scalar.bar)


# ─────────────────────────────────────────────────────────────────────────────
# PRESENTATION
# ─────────────────────────────────────────────────────────────────────────────

def serre_sum(datum: CartanDatum, i: int, j: int) -> NCPoly:
    """Σ_n (−1)^n B_i^{(n)} B_j B_i^{(1−c_ij−n)}."""
    top = 1 - datum.c(i, j)
    return linear_combination(
        I_ALPHABET,
        ((_sign(n), divided_power(datum, i, n) * B(j) * divided_power(datum, i, top - n)) for n in range(top + 1)),
    )


def bkl_lhs(datum: CartanDatum, i: int) -> NCPoly:
    c = datum.c_tau(i)
    t = datum.tau_of(i)
    return linear_combination(
        I_ALPHABET,
        (
            (_sign(r + c), divided_power(datum, i, r) * B(t) * divided_power(datum, i, 1 - c - r))
            for r in range(2 - c)
        ),
    )


def relation5(datum: CartanDatum, i: int) -> NCPoly:
    """BKL relation, LHS − RHS, with the Pochhammer form of the right side."""
    t = datum.tau_of(i)
    if t == i:
        raise IExpressionError("the BKL relation needs τi ≠ i")
    c = datum.c(i, t)
    q2 = qi(datum, i, 2)
    q2_inv = qi(datum, i, -2)
    bpow = divided_power(datum, i, -c)
    rhs = (
        bpow * k(i) * (qi(datum, i, c) * pochhammer(q2_inv, q2_inv, -c))
        - bpow * k(t) * pochhammer(q2, q2, -c)
    ) * (ONE / qi_diff(datum, i))
    return bkl_lhs(datum, i) - rhs


def _orbit_rhs(datum: CartanDatum, i: int, power: int) -> NCPoly:
    """q_i^{(−c²+3c)/2} B_i^{(p)} k_i − (−1)^c q_i^{(c²−c)/2} B_i^{(p)} k_{τi}."""
    c = datum.c_tau(i)
    t = datum.tau_of(i)
    bpow = divided_power(datum, i, power)
    return bpow * k(i) * qi(datum, i, (-c * c + 3 * c) // 2) - bpow * k(t) * (_sign(c) * qi(datum, i, (c * c - c) // 2))


def rewr(datum: CartanDatum, i: int) -> NCPoly:
    """BKL relation with the Pochhammer symbols expanded, LHS − RHS."""
    if datum.tau_of(i) == i:
        raise IExpressionError("the BKL relation needs τi ≠ i")
    c = datum.c_tau(i)
    coeff = qfact(-c, datum.eps(i)) * qi_diff(datum, i) ** (-c - 1)
    return bkl_lhs(datum, i) - _orbit_rhs(datum, i, -c) * coeff


def relation_set(datum: CartanDatum) -> list[tuple[str, NCPoly]]:
    """Every presentation relation applicable to the datum, as LHS − RHS."""
    out: list[tuple[str, NCPoly]] = []
    labels = list(datum.labels)
    for i in labels:
        for l in labels:
            if i < l:
                out.append((f"relation1:kk({i},{l})", k(i) * k(l) - k(l) * k(i)))
    for l in labels:
        for i in labels:
            coeff = qi(datum, l, datum.c(datum.tau_of(l), i) - datum.c(l, i))
            out.append((f"relation1:kB({l},{i})", k(l) * B(i) - B(i) * k(l) * coeff))
    for i in labels:
        for j in labels:
            if i < j and datum.c(i, j) == 0 and datum.tau_of(i) != j:
                out.append((f"relation2({i},{j})", B(i) * B(j) - B(j) * B(i)))
    for i in labels:
        for j in labels:
            if i != j and datum.tau_of(i) != i and j != datum.tau_of(i):
                out.append((f"relation3({i},{j})", serre_sum(datum, i, j)))
    for i in labels:
        if datum.tau_of(i) != i:
            out.append((f"relation5({i})", relation5(datum, i)))
    for i in labels:
        if datum.tau_of(i) != i:
            continue
        for j in labels:
            if j == i:
                continue
            for parity in (EVEN, ODD):
                out.append((f"relation6({i},{j},p={parity})", relation6(datum, i, j, parity)))
    return out


def relation6(datum: CartanDatum, i: int, j: int, parity: int) -> NCPoly:
    c = datum.c(i, j)
    top = 1 - c
    other = (parity + c) % 2
    return linear_combination(
        I_ALPHABET,
        (
            (_sign(r), idivided_power(datum, i, r, parity) * B(j) * idivided_power(datum, i, top - r, other))
            for r in range(top + 1)
        ),
    )


def centrality_identities(datum: CartanDatum) -> list[tuple[str, NCPoly]]:
    out: list[tuple[str, NCPoly]] = []
    for i in datum.labels:
        t = datum.tau_of(i)
        if t < i:
            continue
        if t == i:
            for j in datum.labels:
                coeff = qi(datum, i, datum.c(t, j) - datum.c(i, j))
                out.append((f"central:k{i}B{j}", k(i) * B(j) - B(j) * k(i) * coeff))
        else:
            for j in datum.labels:
                kk = k(i) * k(t)
                out.append((f"central:k{i}k{t}B{j}", kk * B(j) - B(j) * kk))
    return out


# ─────────────────────────────────────────────────────────────────────────────
# SERRE–LUSZTIG FAMILIES
# ─────────────────────────────────────────────────────────────────────────────

def _require_orbit(datum: CartanDatum, i: int) -> tuple[int, int]:
    t = datum.tau_of(i)
    if t == i:
        raise IExpressionError(f"node {i} is τ-fixed; the ỹ family needs τi ≠ i")
    return t, datum.c(i, t)


def _lusztig_sum(datum: CartanDatum, i: int, t: int, m: int, exponent: int, c: int) -> NCPoly:
    """Σ_{r+s=m} (−1)^{r+c} q_i^{r·exponent} B_i^{(r)} B_{τi} B_i^{(s)}."""
    return linear_combination(
        I_ALPHABET,
        (
            (qi(datum, i, r * exponent) * _sign(r + c), divided_power(datum, i, r) * B(t) * divided_power(datum, i, m - r))
            for r in range(m + 1)
        ),
    )


def ytilde(datum: CartanDatum, i: int, m: int, e: int) -> NCPoly:
    """ỹ_{i,τi;1,m,e}, literal formula including the k̃-products."""
    t, c = _require_orbit(datum, i)
    if m < 1:
        raise IExpressionError("m = 0 is ill-defined")
    if e not in (1, -1):
        raise IExpressionError("e must be ±1")
    eps = datum.eps(i)
    head = _lusztig_sum(datum, i, t, m, e * (1 - c - m), c)

    p1 = ONE
    p2 = ONE
    for j in range(c + m - 1):
        base = qi(datum, i, e * (2 * j - c - 2 * m + 2))
        p1 = p1 * (qi(datum, i, c - 2) - base)
        p2 = p2 * (qi(datum, i, 2 - c) - base)
    prefactor = qfact(1 - c, eps) / qint(m, eps) * qi_diff(datum, i) ** (-c - 1)
    bpow = divided_power(datum, i, m - 1)
    tail = (
        bpow * k(i) * (p1 * qi(datum, i, (-c * c + 3 * c) // 2))
        - bpow * k(t) * (_sign(c) * p2 * qi(datum, i, (c * c - c) // 2))
    )
    return head - tail * prefactor


def ytilde_prime(datum: CartanDatum, i: int, m: int, e: int) -> NCPoly:
    return sigma(datum, ytilde(datum, i, m, e))


def recursion_identity(datum: CartanDatum, i: int, m: int, e: int, which: int = 1) -> NCPoly:
    """Recursion between consecutive ỹ (which = 1) or ỹ' (which = 2), LHS − RHS."""
    _, c = _require_orbit(datum, i)
    coeff = -qi(datum, i, -e * (2 * m + c))
    bracket = qint(m + 1, datum.eps(i))
    if which == 1:
        y, y_next = ytilde(datum, i, m, e), ytilde(datum, i, m + 1, e)
        return B(i) * y * coeff + y * B(i) - y_next * bracket
    y, y_next = ytilde_prime(datum, i, m, e), ytilde_prime(datum, i, m + 1, e)
    return y * B(i) * coeff + B(i) * y - y_next * bracket


def hosii(datum: CartanDatum, i: int, m: int, which: int = 1) -> NCPoly:
    """Closed form of the higher order Serre relation for m > 1 − c_{i,τi}, LHS − RHS."""
    t, c = _require_orbit(datum, i)
    if m <= 1 - c:
        raise IExpressionError(f"closed form needs m > {1 - c}")
    eps = datum.eps(i)
    scale = qfact(m - 1, eps) * qi_diff(datum, i) ** (m - 2)
    bpow = divided_power(datum, i, m - 1)
    if which == 1:
        lhs = _lusztig_sum(datum, i, t, m, 1 - c - m, c)
        rhs = bpow * k(t) * (scale * _sign(1 - c) * qi(datum, i, (1 - m) * (m - 2 + 2 * c) // 2))
    else:
        lhs = _lusztig_sum(datum, i, t, m, -(1 - c - m), c)
        rhs = bpow * k(i) * (scale * _sign(m + c + 1) * qi(datum, i, (m - 1) * (m - 2 + 2 * c) // 2 + c))
    return lhs - rhs


def bb_identity(datum: CartanDatum, i: int, N: int, M: int, which: int = 1) -> NCPoly:
    """Rank-one commutation B_{τi}^{(N)} B_i^{(M)} (which = 1) or its τ-mirror, LHS − RHS."""
    t, c = _require_orbit(datum, i)
    if c != 0:
        raise IExpressionError("rank-one commutation needs c_{i,τi} = 0")
    a, b = (i, t) if which == 1 else (t, i)
    lhs = divided_power(datum, b, N) * divided_power(datum, a, M)
    rhs = zero()
    for step in range(min(N, M) + 1):
        middle = const(1)
        for s in range(1, step + 1):
            x = 2 * step - N - M - s + 1
            factor = (k(a) * qi(datum, i, x) - k(b) * qi(datum, i, -x)) * (ONE / (qi(datum, i, s) - qi(datum, i, -s)))
            middle = middle * factor
        rhs = rhs + divided_power(datum, a, M - step) * middle * divided_power(datum, b, N - step)
    return lhs - rhs


def ygen(datum: CartanDatum, i: int, j: int, n: int, m: int, e: int, variant: str = LITERAL) -> NCPoly:
    """ỹ_{i,j;n,m,e} for pairwise distinct i, τi, j."""
    if len({i, datum.tau_of(i), j}) != 3:
        raise IExpressionError("ygen needs i, τi and j pairwise distinct")
    if n < 1 or m < 0:
        raise IExpressionError("ygen needs n ≥ 1 and m ≥ 0")
    if variant not in YGEN_VARIANTS:
        raise IExpressionError(f"unknown ygen variant {variant!r}")
    cij = datum.c(i, j)
    exponent = (-cij if variant == LITERAL else -n * cij) - m + 1
    middle = divided_power(datum, j, n)
    return linear_combination(
        I_ALPHABET,
        (
            (qi(datum, i, e * r * exponent) * _sign(r), divided_power(datum, i, r) * middle * divided_power(datum, i, m - r))
            for r in range(m + 1)
        ),
    )


def ygen_prime(datum: CartanDatum, i: int, j: int, n: int, m: int, e: int, variant: str = LITERAL) -> NCPoly:
    return sigma(datum, ygen(datum, i, j, n, m, e, variant))


def ygen_recursion(datum: CartanDatum, i: int, j: int, n: int, m: int, e: int, variant: str = LITERAL) -> NCPoly:
    """−q_i^{−e(2m+n c_ij)} B_i y_m + y_m B_i − [m+1]_i y_{m+1}."""
    coeff = -qi(datum, i, -e * (2 * m + n * datum.c(i, j)))
    y = ygen(datum, i, j, n, m, e, variant)
    y_next = ygen(datum, i, j, n, m + 1, e, variant)
    return B(i) * y * coeff + y * B(i) - y_next * qint(m + 1, datum.eps(i))


def embed_is_zero_modular(datum: CartanDatum, x: NCPoly, trials: int = DEFAULT_MODULAR_TRIALS, seed: int = 0) -> bool:
    """Probabilistic zero test of embed(x) over random prime-field images of q."""
    return modular_zero_test(lambda fld: embed(datum, x, fld), trials, seed)
