# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Conjectural Braid Operators (c_{i,τi} = 0)
#
# T'_{i,e} and T''_{i,e} as generator-image tables on Ũ^ı. The deformation
# parameter v in the formulas is read as q_i. A table extends to an algebra
# map through ncalg.substitute; "is it a homomorphism" is decided by sending
# every presentation relation through the table and then through embed.
# ═══════════════════════════════════════════════════════════════════════════════

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from core.cartan import CartanDatum, Weight, restricted_generator
from core.iqg import (
    B,
    I_ALPHABET,
    centrality_identities,
    const,
    divided_power,
    embed,
    k,
    psi,
    qi,
    relation_set,
    sigma,
)
from core.ncalg import GeneratorSymbol, NCPoly, substitute

logger = logging.getLogger(__name__)

TPRIME = "T'"
TDOUBLEPRIME = "T''"


class BraidHypothesisError(ValueError):
    """Raised when the conjectured formulas do not apply to the node."""


@dataclass
class GeneratorMap:
    label: str
    kind: str
    i: int
    e: int
    table: dict[GeneratorSymbol, NCPoly] = field(default_factory=dict)


@dataclass(frozen=True)
class BraidCheck:
    label: str
    passed: bool
    witness: str = ""


# ─────────────────────────────────────────────────────────────────────────────
# TABLES
# ─────────────────────────────────────────────────────────────────────────────

def _k_power(i: int, a: int) -> NCPoly:
    return k(i, 1 if a > 0 else -1) ** abs(a)


def _hypothesis(datum: CartanDatum, i: int) -> int:
    t = datum.tau_of(i)
    if t == i or datum.c(i, t) != 0:
        raise BraidHypothesisError("outside conjecture's hypothesis")
    return t


def _k_images(datum: CartanDatum, i: int, t: int) -> dict[GeneratorSymbol, NCPoly]:
    table = {}
    for j in datum.labels:
        a, b = -datum.c(i, j), -datum.c(t, j)
        table[GeneratorSymbol("k", j)] = _k_power(i, a) * _k_power(t, b) * k(j)
        table[GeneratorSymbol("k", j, -1)] = k(j, -1) * _k_power(t, -b) * _k_power(i, -a)
    return table


def _triple_sum(datum: CartanDatum, i: int, t: int, j: int, kind: str, e: int) -> NCPoly:
    cij, ctj = datum.c(i, j), datum.c(t, j)
    flip = 1 if (kind == TPRIME and e == -1) or (kind == TDOUBLEPRIME and e == 1) else -1
    k_node = i if e == -1 else t
    total = NCPoly.zero(I_ALPHABET)
    for u in range(-max(cij, ctj) + 1):
        ku = k(k_node) ** u
        for r in range(-cij - u + 1):
            for s in range(-ctj - u + 1):
                exponent = r - s + (-cij - r - s - u) * u
                coeff = qi(datum, i, flip * exponent) * (-1 if (r + s) % 2 else 1)
                if kind == TPRIME:
                    word = (
                        ku
                        * divided_power(datum, i, -cij - r - u)
                        * divided_power(datum, t, s)
                        * B(j)
                        * divided_power(datum, t, -ctj - u - s)
                        * divided_power(datum, i, r)
                    )
                else:
                    word = (
                        divided_power(datum, i, r)
                        * divided_power(datum, t, -ctj - u - s)
                        * B(j)
                        * divided_power(datum, t, s)
                        * divided_power(datum, i, -cij - r - u)
                        * ku
                    )
                total = total + word * coeff
    return total


def _build(datum: CartanDatum, i: int, e: int, kind: str) -> GeneratorMap:
    if e not in (1, -1):
        raise BraidHypothesisError("e must be ±1")
    t = _hypothesis(datum, i)
    table = _k_images(datum, i, t)
    if kind == TPRIME:
        if e == -1:
            table[GeneratorSymbol("B", i)] = -(B(t) * k(t, -1))
            table[GeneratorSymbol("B", t)] = -(k(i, -1) * B(i))
        else:
            table[GeneratorSymbol("B", i)] = -(B(t) * k(i, -1))
            table[GeneratorSymbol("B", t)] = -(k(t, -1) * B(i))
    else:
        if e == 1:
            table[GeneratorSymbol("B", i)] = -(k(i, -1) * B(t))
            table[GeneratorSymbol("B", t)] = -(B(i) * k(t, -1))
        else:
            table[GeneratorSymbol("B", i)] = -(k(t, -1) * B(t))
            table[GeneratorSymbol("B", t)] = -(B(i) * k(i, -1))
    for j in datum.labels:
        if j not in (i, t):
            table[GeneratorSymbol("B", j)] = _triple_sum(datum, i, t, j, kind, e)
    label = f"{kind}_{{{i},{e:+d}}}"
    logger.debug("Built %s on %s", label, datum.name)
    return GeneratorMap(label, kind, i, e, table)


def tprime(datum: CartanDatum, i: int, e: int) -> GeneratorMap:
    return _build(datum, i, e, TPRIME)


def tdoubleprime(datum: CartanDatum, i: int, e: int) -> GeneratorMap:
    return _build(datum, i, e, TDOUBLEPRIME)


def operator(datum: CartanDatum, kind: str, i: int, e: int) -> GeneratorMap:
    return _build(datum, i, e, kind)


def apply(gmap: GeneratorMap, x: NCPoly) -> NCPoly:
    return substitute(x, gmap.table)


def generators(datum: CartanDatum) -> list[tuple[str, NCPoly]]:
    out = []
    for j in datum.labels:
        out.append((f"B{j}", B(j)))
        out.append((f"k{j}", k(j)))
        out.append((f"k{j}^-1", k(j, -1)))
    return out


# ─────────────────────────────────────────────────────────────────────────────
# CHECKS
# ─────────────────────────────────────────────────────────────────────────────

def _zero_check(datum: CartanDatum, label: str, x: NCPoly) -> BraidCheck:
    image = embed(datum, x)
    return BraidCheck(label, image.is_zero(), "" if image.is_zero() else image.serialize())


def check_hom(datum: CartanDatum, gmap: GeneratorMap) -> list[BraidCheck]:
    """Images of every presentation relation (and k k^{-1} = 1) must vanish."""
    checks = []
    for label, rel in relation_set(datum) + centrality_identities(datum):
        checks.append(_zero_check(datum, f"{gmap.label}:{label}", apply(gmap, rel)))
    for j in datum.labels:
        unit = apply(gmap, k(j)) * apply(gmap, k(j, -1)) - const(1)
        checks.append(_zero_check(datum, f"{gmap.label}:k{j}·k{j}^-1", unit))
    return checks


def check_compatibility(datum: CartanDatum, i: int) -> list[BraidCheck]:
    """σT'_eσ = T''_{−e}, ψT'_eψ = T'_{−e}, ψT''_eψ = T''_{−e} on generators."""
    checks = []
    for e in (1, -1):
        tp, tpp = tprime(datum, i, e), tdoubleprime(datum, i, -e)
        tp_neg, tpp_e, tpp_neg = tprime(datum, i, -e), tdoubleprime(datum, i, e), tdoubleprime(datum, i, -e)
        for name, g in generators(datum):
            lhs = sigma(datum, apply(tp, sigma(datum, g)))
            checks.append(_zero_check(datum, f"sigma:{tp.label}:{name}", lhs - apply(tpp, g)))
            lhs = psi(datum, apply(tp, psi(datum, g)))
            checks.append(_zero_check(datum, f"psi:{tp.label}:{name}", lhs - apply(tp_neg, g)))
            lhs = psi(datum, apply(tpp_e, psi(datum, g)))
            checks.append(_zero_check(datum, f"psi:{tpp_e.label}:{name}", lhs - apply(tpp_neg, g)))
    return checks


def _congruent(datum: CartanDatum, diff: Weight) -> bool:
    """diff ∈ span{α_k + α_{τk}}."""
    for a in datum.labels:
        t = datum.tau_of(a)
        if t == a and diff[a] % 2:
            return False
        if t != a and diff[a] != diff[t]:
            return False
    return True


def check_weights(datum: CartanDatum, gmap: GeneratorMap) -> list[BraidCheck]:
    """Componentwise weights of T(B_j) against the restricted reflection."""
    bold_s: Callable[[Weight], Weight] = restricted_generator(datum, gmap.i)
    checks = []
    for j in datum.labels:
        comps = embed(datum, gmap.table[GeneratorSymbol("B", j)]).weight_components()
        expected = {bold_s(-datum.alpha(j)), bold_s(datum.alpha(datum.tau_of(j)))}
        anchor = bold_s(-datum.alpha(j))
        missing = expected - comps
        stray = [w for w in comps if not _congruent(datum, w - anchor)]
        ok = not missing and not stray
        witness = "" if ok else f"missing={sorted(str(w) for w in missing)} stray={sorted(str(w) for w in stray)}"
        checks.append(BraidCheck(f"weight:{gmap.label}:B{j}", ok, witness))
    return checks


def check_inverse(datum: CartanDatum, i: int, e: int) -> list[BraidCheck]:
    """T'_{i,e} ∘ T''_{i,−e} fixes every generator (informational)."""
    outer, inner = tprime(datum, i, e), tdoubleprime(datum, i, -e)
    return [
        _zero_check(datum, f"inverse:{outer.label}∘{inner.label}:{name}", apply(outer, apply(inner, g)) - g)
        for name, g in generators(datum)
    ]
