import math

import numpy as np
import pytest

from qradius import bounds, linalg, sectorial
from qradius.bounds import BoundOutcome, Estimator, catalog, compare_bounds, evaluate, tightness
from qradius.errors import ArityMismatch, DivisionDomain, PredicateUnmet
from qradius.orlicz import builtin


@pytest.fixture(scope="module")
def est():
    return Estimator(seed=7)


@pytest.fixture(scope="module")
def sect_instance():
    mat, verdict = sectorial.random_q_sectorial(2, 0.7, 0.6, seed=5)
    return mat, verdict.alpha_conservative


class TestCatalog:
    def test_contains_c1(self):
        assert any(s.id == "C1" for s in catalog())

    def test_ids_unique(self):
        ids = [s.id for s in catalog()]
        assert len(ids) == len(set(ids))

    def test_count_at_least_24(self):
        assert len(catalog()) >= 24

    def test_sector_family_count(self):
        assert sum(1 for s in catalog() if s.id.startswith("S")) == 10

    def test_fixed_order(self):
        assert [s.id for s in catalog()][:6] == ["L1a", "L1b", "L2", "L3", "L4", "L5"]


class TestWorkedExamples:
    def test_c1_on_jordan(self, jordan, est):
        out = evaluate("C1", [jordan], 0.5, est=est)
        lower, upper = out.links
        assert lower.lhs == pytest.approx(0.0625, abs=1e-12)       # |q|^2/4 * ||T*T+TT*||
        assert lower.rhs == pytest.approx(0.87051270189, abs=1e-6)  # w_q^2
        assert upper.rhs == pytest.approx(1.48737243570, abs=1e-9)
        assert out.holds

    def test_l1a_identity(self, est):
        out = evaluate("L1a", [np.eye(2)], 0.7, est=est)
        assert [(l.lhs, l.rhs) for l in out.links] == [
            (pytest.approx(0.35), pytest.approx(0.7)), (pytest.approx(0.7), pytest.approx(1.0))]
        assert out.holds

    def test_q2_on_jordan(self, jordan, est):
        out = evaluate("Q2", [jordan], 0.5, est=est)
        assert out.links[-1].rhs == pytest.approx(1.2455127018922192, abs=1e-9)
        assert out.holds

    def test_digest_tracks_inputs(self, jordan, est):
        a = evaluate("C1", [jordan], 0.5, est=est).inputs_digest
        b = evaluate("C1", [jordan], 0.6, est=est).inputs_digest
        assert a != b


class TestTightness:
    def test_equality_is_one(self):
        out = BoundOutcome("x", 2.0, 2.0, 0.0, True, False, "d", ())
        assert tightness(out) == 1.0

    def test_zero_lhs(self):
        out = BoundOutcome("x", 0.0, 3.0, 3.0, True, False, "d", ())
        assert tightness(out) == 0.0

    def test_jordan_c1_ratio(self, jordan, est):
        out = evaluate("C1", [jordan], 0.5, est=est)
        lower = out.links[0]
        assert lower.lhs / lower.rhs == pytest.approx(0.0625 / 0.8705127, rel=1e-4)
        # the outcome itself reports the tightest adjacent pair (the upper link here)
        assert tightness(out) == pytest.approx(0.8705127 / 1.4873724, rel=1e-4)

    def test_division_domain(self):
        with pytest.raises(DivisionDomain):
            tightness(BoundOutcome("x", -1.0, 0.0, 1.0, True, False, "d", ()))


class TestPredicates:
    def test_normal_required(self, jordan, est):
        with pytest.raises(PredicateUnmet):
            evaluate("L1b", [jordan], 0.5, est=est)

    def test_square_zero_required(self, a1, est):
        with pytest.raises(PredicateUnmet):
            evaluate("L5", [a1], 0.5, est=est)

    def test_alpha_required(self, a1, est):
        with pytest.raises(PredicateUnmet):
            evaluate("S2", [a1], 0.5, est=est)

    def test_q_range_required(self, jordan, est):
        with pytest.raises(PredicateUnmet):
            evaluate("L3", [jordan], 1.0, est=est)

    def test_arity_mismatch(self, jordan, est):
        with pytest.raises(ArityMismatch):
            evaluate("T3", [jordan], 0.5, est=est)

    def test_contraction_check(self, est):
        t = linalg.random_matrix(2, 1)
        big = 3.0 * np.eye(2)
        with pytest.raises(PredicateUnmet):
            evaluate("C3d", [t, big, t], 0.5, f=builtin("power", 2), est=est)

    def test_equality_premise_rarely_met(self, jordan, est):
        with pytest.raises(PredicateUnmet):
            evaluate("C2", [jordan], 0.5, f=builtin("power", 2), est=est)

    def test_equality_premise_zero_matrix(self, est):
        out = evaluate("C2", [np.zeros((2, 2))], 0.5, f=builtin("power", 2), est=est)
        assert out.holds


class TestReductions:
    def test_t2_with_identity_gauge_reproduces_q1(self, jordan, est):
        o1 = evaluate("Q1", [jordan], 0.5, est=est)
        o2 = evaluate("T2", [jordan], 0.5, f=builtin("power", 1), est=est)
        assert o2.lhs == pytest.approx(o1.lhs, abs=1e-12)
        assert o2.rhs == pytest.approx(o1.rhs, abs=1e-12)

    def test_c1_at_q_one_is_classical_sandwich(self, est):
        t = linalg.random_matrix(3, 9)
        out = evaluate("C1", [t], 1.0, est=est)
        n2 = linalg.spectral_norm(t.conj().T @ t + t @ t.conj().T)
        assert out.links[0].lhs == pytest.approx(n2 / 4, rel=1e-12)
        assert out.links[1].rhs == pytest.approx(n2 / 2, rel=1e-12)

    def test_k1_with_selfdual_gauge_matches_k2(self, sect_instance, est):
        a, alpha = sect_instance
        x, b, y = (linalg.random_matrix(2, s) for s in (31, 32, 33))
        o1 = evaluate("K1", [a, x, b, y], 0.7, f=builtin("power_over_p", 2), alpha=alpha, est=est)
        o2 = evaluate("K2", [a, x, b, y], 0.7, alpha=alpha, est=est)
        for l1, l2 in zip(o1.links, o2.links):
            assert l1.rhs == pytest.approx(l2.rhs, rel=1e-9)


class TestChains:
    @pytest.mark.parametrize("fname", ["power:2", "exp_minus_one", "power_over_p:2"])
    @pytest.mark.parametrize("seed", range(3))
    def test_t1_middle_between_outer(self, fname, seed, est):
        t = linalg.random_matrix(2 + seed, seed + 40)
        out = evaluate("T1", [t], 0.45, f=builtin(fname), est=est)
        assert out.holds
        l1, l2 = out.links
        assert l1.rhs == l2.lhs  # shared middle term

    @pytest.mark.parametrize("seed", range(2))
    def test_t3_chain(self, seed, est):
        mats = [linalg.random_matrix(3, seed * 3 + k) for k in range(3)]
        out = evaluate("T3", mats, 0.6, f=builtin("exp_minus_one"), est=est)
        assert out.holds

    def test_s3_chain_holds_with_overflow(self, sect_instance, est):
        # tiny q blows up the gauge arguments; inf rhs must still count as held
        a, alpha = sect_instance
        out = evaluate("S3", [a], 0.1, f=builtin("exp_minus_one"), alpha=alpha, est=est)
        assert out.holds
        assert not math.isnan(out.slack)

    def test_r1_specializes_t1_for_squares(self, est):
        t = linalg.random_matrix(3, 77)
        o_r = evaluate("R1", [t], 0.5, f=builtin("power", 2), est=est)
        o_t = evaluate("T1", [t], 0.5, f=builtin("power", 2), est=est)
        assert o_r.links[0].rhs == pytest.approx(o_t.links[0].rhs, rel=1e-12)


class TestRefinements:
    @pytest.mark.parametrize("seed", range(5))
    def test_q1_rhs_below_l4_rhs(self, seed, est):
        t = linalg.random_matrix(2 + seed % 4, seed + 60)
        for q in (0.1, 0.5, 0.9):
            r_q1 = evaluate("Q1", [t], q, est=est).links[-1].rhs
            r_l4 = evaluate("L4", [t], q, est=est).links[-1].rhs
            assert r_q1 <= r_l4 + 1e-9

    @pytest.mark.parametrize("seed", range(4))
    def test_q2_rhs_below_l5_rhs(self, seed, est):
        t = linalg.random_square_zero(2 + seed % 3, seed)
        for q in (0.2, 0.6, 0.9):
            r_q2 = evaluate("Q2", [t], q, est=est).links[-1].rhs
            r_l5 = evaluate("L5", [t], q, est=est).links[-1].rhs
            assert r_q2 <= r_l5 + 1e-9

    def test_k5_coefficient_below_fong_holbrook(self):
        for alpha in np.linspace(0, math.pi / 2, 500, endpoint=False):
            assert 2 * math.sqrt(1 + math.sin(alpha) ** 2) <= 2 * math.sqrt(2) + 1e-12


class TestCompareBounds:
    def test_c1_upper_beats_l3_upper(self, est):
        cases = [{"matrices": [linalg.random_matrix(3, s)], "q": 0.5} for s in range(6)]
        report = compare_bounds("C1", "L3", cases, side="upper", est=est)
        assert report["wins_a"] == 6 and report["wins_b"] == 0

    def test_c1_lower_beats_l2_lower(self, est):
        # compared on the squared scale: |q|^2/4 ||T*T+TT*|| vs (q/(2(2-q^2)))^2 ||T||^2
        cases = [{"matrices": [linalg.random_matrix(2 + s % 3, s + 10)], "q": q}
                 for s in range(4) for q in (0.3, 0.7)]
        report = compare_bounds("C1", "L2", cases, side="lower", est=est)
        assert report["wins_a"] == len(cases)

    def test_incomparable_rejected(self, est):
        with pytest.raises(ValueError):
            compare_bounds("C1", "C2", [], side="upper", est=est)


class TestSoundnessSmoke:
    @pytest.mark.parametrize("q", [0.1, 0.5, 0.9, 1.0])
    def test_arity_one_bounds_hold(self, q, est):
        for seed in range(4):
            t = linalg.random_matrix(2 + seed, seed + 200)
            for bid in ("L1a", "L2", "L3", "L4", "C1", "Q1", "C3c", "T1", "R1"):
                try:
                    out = evaluate(bid, [t], q, f=builtin("power", 2), est=est)
                except PredicateUnmet:
                    assert bid in ("L2", "L3", "L4") and q == 1.0
                    continue
                assert out.holds, f"{bid} violated at q={q} seed={seed}: slack={out.slack}"

    def test_sectorial_bounds_hold(self, sect_instance, est):
        a, alpha = sect_instance
        for bid in ("S1", "S2", "S3", "S4", "S5", "S6", "S7a", "S7b"):
            out = evaluate(bid, [a], 0.7, f=builtin("power_over_p", 2), alpha=alpha, est=est)
            assert out.holds, f"{bid}: slack={out.slack}"

    def test_commutator_bounds_hold(self, sect_instance, est):
        a, alpha = sect_instance
        b = linalg.random_matrix(2, 44)
        for bid in ("K3", "K4"):
            mats = [a, b] if bid == "K3" else [a, a + 0.1 * np.eye(2)]
            try:
                out = evaluate(bid, mats, 0.7, alpha=alpha, est=est)
                assert out.holds
            except PredicateUnmet:
                pytest.skip("pair not sectorial at this alpha")


class TestEstimatorCache:
    def test_radius_cached_by_content(self, jordan):
        e = Estimator(seed=1)
        v1 = e.wq(jordan, bounds.as_qparam(0.5))
        v2 = e.wq(jordan.copy(), bounds.as_qparam(0.5))
        assert v1 == v2
        assert len(e._wq) == 1

    def test_lower_bound_of_truth(self, jordan):
        e = Estimator(seed=3)
        assert e.wq(jordan, bounds.as_qparam(0.5)) <= math.sqrt(3) / 4 + 0.5 + 1e-12
