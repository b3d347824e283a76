# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Cartan Data with Diagram Involution
#
# A CartanDatum bundles a generalized Cartan matrix C, a symmetrizer
# D = diag(ε_i) with DC symmetric, and an involution τ of the index set
# preserving C. Labels are 1-indexed throughout the engine.
#
# Weights are integer vectors in the simple-root basis. Reflections are
# applied through integer numpy matrices built once per (datum, i).
# ═══════════════════════════════════════════════════════════════════════════════

from __future__ import annotations

import functools
import hashlib
import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

logger = logging.getLogger(__name__)


class CartanError(ValueError):
    """Raised on out-of-range indices or use of an invalid datum."""


# ─────────────────────────────────────────────────────────────────────────────
# WEIGHTS
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, slots=True)
class Weight:
    """Element of the root lattice, coordinates in the basis α_1..α_n."""

    coords: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def simple(cls, n: int, i: int, mult: int = 1) -> "Weight":
        coords = [0] * n
        coords[i - 1] = mult
        return cls(tuple(coords))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __getitem__(self, i: int) -> int:
        """1-indexed coordinate."""
        return self.coords[i - 1]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def is_nonpositive(self) -> bool:
        return all(a <= 0 for a in self.coords)

    def height(self) -> int:
        return sum(self.coords)

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.coords, start=1):
            if a == 0:
                continue
            if a == 1:
                parts.append(f"a{i}")
            elif a == -1:
                parts.append(f"-a{i}")
            else:
                parts.append(f"{a}*a{i}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


# ─────────────────────────────────────────────────────────────────────────────
# CARTAN DATUM
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CartanDatum:
    name: str
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    tau: tuple[int, ...]
    _reflections: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> "CartanDatum":
        """Build from a preset/file dictionary (name, cartan, symmetrizer, tau)."""
        try:
            cartan = tuple(tuple(int(x) for x in row) for row in data["cartan"])
            n = len(cartan)
            symmetrizer = tuple(int(x) for x in data.get("symmetrizer", [1] * n))
            tau = tuple(int(x) for x in data.get("tau", range(1, n + 1)))
        except (KeyError, TypeError, ValueError) as exc:
            raise CartanError(f"malformed Cartan datum: {exc}") from exc
        return cls(str(data.get("name", "custom")), cartan, symmetrizer, tau)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cartan": [list(row) for row in self.cartan],
            "symmetrizer": list(self.symmetrizer),
            "tau": list(self.tau),
        }

    @property
    def n(self) -> int:
        return len(self.cartan)

    @property
    def labels(self) -> range:
        return range(1, self.n + 1)

    def _check(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise CartanError(f"index {i} out of range 1..{self.n}")

    def c(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return self.cartan[i - 1][j - 1]

    def eps(self, i: int) -> int:
        self._check(i)
        return self.symmetrizer[i - 1]

    def tau_of(self, i: int) -> int:
        self._check(i)
        return self.tau[i - 1]

    def c_tau(self, i: int) -> int:
        """c_{i, τi}."""
        return self.c(i, self.tau_of(i))

    def alpha(self, i: int) -> Weight:
        self._check(i)
        return Weight.simple(self.n, i)

    def zero_weight(self) -> Weight:
        return Weight.zero(self.n)


def validate(datum: CartanDatum) -> list[str]:
    """Return every violated datum invariant; empty list means valid."""
    violations: list[str] = []
    n = datum.n
    if n == 0:
        return ["empty index set"]
    if any(len(row) != n for row in datum.cartan):
        return ["Cartan matrix is not square"]
    if len(datum.symmetrizer) != n:
        violations.append("symmetrizer length differs from rank")
    elif any(e <= 0 for e in datum.symmetrizer):
        violations.append("symmetrizer entries must be positive")
    if sorted(datum.tau) != list(range(1, n + 1)):
        violations.append("tau is not a permutation of 1..n")
        tau_ok = False
    else:
        tau_ok = True

    C = datum.cartan
    for i in range(n):
        if C[i][i] != 2:
            violations.append(f"c_ii = 2 fails at i={i + 1}")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if C[i][j] > 0:
                violations.append(f"c_ij <= 0 fails at ({i + 1},{j + 1})")
            if (C[i][j] == 0) != (C[j][i] == 0) and i < j:
                violations.append(f"c_ij = 0 ⇔ c_ji = 0 fails at ({i + 1},{j + 1})")
    if len(datum.symmetrizer) == n:
        eps = datum.symmetrizer
        for i in range(n):
            for j in range(i + 1, n):
                if eps[i] * C[i][j] != eps[j] * C[j][i]:
                    violations.append(f"DC not symmetric at ({i + 1},{j + 1})")

    if tau_ok:
        tau = [t - 1 for t in datum.tau]
        if any(tau[tau[i]] != i for i in range(n)):
            violations.append("tau^2 ≠ identity")
        bad = [(i, j) for i in range(n) for j in range(n) if C[tau[i]][tau[j]] != C[i][j]]
        if bad:
            i, j = bad[0]
            violations.append(f"c_{{τi,τj}} ≠ c_{{ij}} at ({i + 1},{j + 1})")
        if len(datum.symmetrizer) == n and any(datum.symmetrizer[tau[i]] != datum.symmetrizer[i] for i in range(n)):
            violations.append("ε_{τi} ≠ ε_i")
    return violations


def require_valid(datum: CartanDatum) -> CartanDatum:
    problems = validate(datum)
    if problems:
        raise CartanError(f"invalid Cartan datum {datum.name!r}: " + "; ".join(problems))
    return datum


# ─────────────────────────────────────────────────────────────────────────────
# LATTICE COMBINATORICS
# ─────────────────────────────────────────────────────────────────────────────

def dot(datum: CartanDatum, mu: Weight, nu: Weight) -> int:
    """(μ, ν) = Σ μ_a ν_b ε_a c_ab."""
    total = 0
    for a in range(datum.n):
        if not mu.coords[a]:
            continue
        row = datum.cartan[a]
        eps = datum.symmetrizer[a]
        for b in range(datum.n):
            if nu.coords[b]:
                total += mu.coords[a] * nu.coords[b] * eps * row[b]
    return total


def _reflection_matrix(datum: CartanDatum, i: int) -> np.ndarray:
    cached = datum._reflections.get(i)
    if cached is None:
        # column j holds s_i(α_j) = α_j - c_ij α_i
        cached = np.eye(datum.n, dtype=np.int64)
        cached[i - 1, :] -= np.asarray(datum.cartan[i - 1], dtype=np.int64)
        datum._reflections[i] = cached
    return cached


def _apply(matrix: np.ndarray, w: Weight) -> Weight:
    return Weight(tuple(int(x) for x in matrix @ np.asarray(w.coords, dtype=np.int64)))


def simple_reflection(datum: CartanDatum, i: int, w: Weight) -> Weight:
    """s_i(w), with s_i(α_j) = α_j − c_ij α_i."""
    datum._check(i)
    return _apply(_reflection_matrix(datum, i), w)


def tau_action(datum: CartanDatum, w: Weight) -> Weight:
    """τ(Σ a_j α_j) = Σ a_j α_{τj}."""
    coords = [0] * datum.n
    for j, a in enumerate(w.coords, start=1):
        coords[datum.tau[j - 1] - 1] += a
    return Weight(tuple(coords))


def ibar_tau(datum: CartanDatum) -> list[int]:
    """Smallest-label τ-orbit representatives with c_{i,τi} ∈ {−1, 0, 2}."""
    reps = []
    for i in datum.labels:
        t = datum.tau_of(i)
        if t < i:
            continue
        if datum.c(i, t) in (-1, 0, 2):
            reps.append(i)
    return reps


def restricted_matrix(datum: CartanDatum, i: int) -> np.ndarray:
    if i not in ibar_tau(datum):
        raise CartanError(f"index {i} is not in the restricted index set {ibar_tau(datum)}")
    t = datum.tau_of(i)
    s_i = _reflection_matrix(datum, i)
    if t == i:
        return s_i
    s_t = _reflection_matrix(datum, t)
    if datum.c(i, t) == 0:
        return s_i @ s_t
    return s_i @ s_t @ s_i


def restricted_generator(datum: CartanDatum, i: int) -> Callable[[Weight], Weight]:
    """The restricted Weyl group generator 𝐬_i as a map on weights."""
    matrix = restricted_matrix(datum, i)
    return functools.partial(_apply, matrix)


def positive_roots(datum: CartanDatum, max_height: int = 30) -> list[Weight]:
    """Real positive roots up to max_height, closing {α_i} under reflections."""
    seen = {datum.alpha(i) for i in datum.labels}
    frontier = list(seen)
    while frontier:
        nxt = []
        for root in frontier:
            for i in datum.labels:
                image = simple_reflection(datum, i, root)
                if image.is_nonnegative() and not image.is_zero() and image.height() <= max_height and image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return sorted(seen, key=lambda w: (w.height(), w.coords))


def kostant_partition_count(roots: Sequence[Weight], weight: Weight) -> int:
    """Number of multisets of the given roots summing to weight."""
    roots = list(roots)

    @functools.lru_cache(maxsize=None)
    def count(k: int, target: tuple[int, ...]) -> int:
        if not any(target):
            return 1
        if k == len(roots) or any(a < 0 for a in target):
            return 0
        root = roots[k].coords
        total = 0
        rest = target
        while all(a >= 0 for a in rest):
            total += count(k + 1, rest)
            rest = tuple(a - b for a, b in zip(rest, root))
        return total

    return count(0, weight.coords)


def is_finite_type(datum: CartanDatum) -> bool:
    """DC positive definite."""
    sym = np.diag(np.asarray(datum.symmetrizer, dtype=float)) @ np.asarray(datum.cartan, dtype=float)
    return bool(np.all(np.linalg.eigvalsh(sym) > 1e-9))


@functools.lru_cache(maxsize=None)
def fingerprint(datum: CartanDatum) -> str:
    payload = json.dumps(
        {"cartan": [list(r) for r in datum.cartan], "symmetrizer": list(datum.symmetrizer), "tau": list(datum.tau)},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def from_preset(name: str) -> CartanDatum:
    from config.presets import PRESETS

    if name not in PRESETS:
        raise CartanError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return require_valid(CartanDatum.from_dict(PRESETS[name]))
