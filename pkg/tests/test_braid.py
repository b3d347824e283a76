# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Braid Operator Tests
# ═══════════════════════════════════════════════════════════════════════════════

import pytest

from core import udouble
from core.braid import (
    TDOUBLEPRIME,
    TPRIME,
    BraidCheck,
    BraidHypothesisError,
    _congruent,
    apply,
    check_inverse,
    check_weights,
    generators,
    operator,
    tdoubleprime,
    tprime,
)
from core.cartan import Weight, from_preset
from core.iqg import B, k
from core.ncalg import GeneratorSymbol


@pytest.fixture
def a1xa1():
    return from_preset("a1xa1-swap")


@pytest.fixture(autouse=True)
def fresh_cache():
    udouble.clear_cache()
    yield
    udouble.clear_cache()


# ─────────────────────────────────────────────────────────────────────────────
# TABLES
# ─────────────────────────────────────────────────────────────────────────────

class TestTables:
    def test_hypothesis_rejects_fixed_node(self):
        with pytest.raises(BraidHypothesisError, match="outside conjecture's hypothesis"):
            tprime(from_preset("a3-tau13"), 2, 1)

    def test_hypothesis_rejects_nonorthogonal_orbit(self):
        with pytest.raises(BraidHypothesisError):
            tdoubleprime(from_preset("a2-swap"), 1, -1)

    def test_rejects_bad_e(self, a1xa1):
        with pytest.raises(BraidHypothesisError):
            tprime(a1xa1, 1, 0)

    def test_label(self, a1xa1):
        assert tprime(a1xa1, 1, 1).label == "T'_{1,+1}"
        assert tdoubleprime(a1xa1, 1, -1).label == "T''_{1,-1}"

    def test_orbit_images(self, a1xa1):
        t = tprime(a1xa1, 1, 1)
        assert apply(t, B(1)) == -(B(2) * k(1, -1))
        assert apply(t, B(2)) == -(k(2, -1) * B(1))

    def test_k_images_are_inverted(self, a1xa1):
        t = operator(a1xa1, TDOUBLEPRIME, 1, 1)
        assert apply(t, k(1)) == k(1, -1)
        assert apply(t, k(2)) == k(2, -1)
        assert apply(t, k(1, -1)) == k(1)

    def test_table_covers_every_generator(self):
        d = from_preset("a3-tau13")
        t = operator(d, TPRIME, 1, 1)
        for j in d.labels:
            assert GeneratorSymbol("B", j) in t.table
            assert GeneratorSymbol("k", j) in t.table
            assert GeneratorSymbol("k", j, -1) in t.table

    def test_generators(self, a1xa1):
        names = [name for name, _ in generators(a1xa1)]
        assert names == ["B1", "k1", "k1^-1", "B2", "k2", "k2^-1"]


# ─────────────────────────────────────────────────────────────────────────────
# CHECKS
# ─────────────────────────────────────────────────────────────────────────────

class TestChecks:
    def test_congruence(self, a1xa1):
        assert _congruent(a1xa1, Weight((1, 1)))
        assert not _congruent(a1xa1, Weight((1, 0)))
        d = from_preset("a3-tau13")
        assert _congruent(d, Weight((1, 2, 1)))
        assert not _congruent(d, Weight((0, 1, 0)))

    @pytest.mark.parametrize("kind", [TPRIME, TDOUBLEPRIME])
    @pytest.mark.parametrize("e", [1, -1])
    def test_rank_one_weights(self, a1xa1, kind, e):
        checks = check_weights(a1xa1, operator(a1xa1, kind, 1, e))
        assert len(checks) == 2
        assert all(c.passed for c in checks), [c.witness for c in checks]

    @pytest.mark.parametrize("e", [1, -1])
    def test_rank_one_inverse(self, a1xa1, e):
        checks = check_inverse(a1xa1, 1, e)
        assert len(checks) == 6
        assert all(isinstance(c, BraidCheck) and c.passed for c in checks)
        assert checks[0].label.startswith("inverse:T'_{1,")
