import math
from dataclasses import replace

import numpy as np
import pytest

from rerbalance.equilibrium import BilsonParams, EconomyState, Formulation, implied_rer, log_imbalance, neutral_growth_rate
from rerbalance.errors import DomainError
from rerbalance.scenario import (
    DebtFinancing,
    DebtSource,
    Floating,
    Pegged,
    RegimeKind,
    apply_debt_financing,
    baseline_capital,
    classify_regime,
    neutral_rate_comparison,
    simulate,
    step,
)

B = BilsonParams(psi1=0.5)


def econ(label="dom", **kw):
    base = dict(g_y=0.03, k=20.0, dk=2.0, alpha=0.3, i=0.05, Y=100.0, P=1.0, M=40.0, n=1.0)
    base.update(kw)
    return EconomyState(label, **base)


def at_neutral(e):
    return replace(e, g_y=neutral_growth_rate(e))


class TestClassify:
    def test_deficit(self):
        r = classify_regime(econ(), 0.08)
        assert r.kind is RegimeKind.CAPITAL_DEFICIT
        assert r.margin == pytest.approx(0.05, abs=1e-15)
        assert r.neutral_rate == pytest.approx(0.03)

    def test_neutral(self):
        e = econ()
        assert classify_regime(e, neutral_growth_rate(e)).kind is RegimeKind.CAPITAL_NEUTRAL
        assert classify_regime(e, 0.03 + 5e-7).kind is RegimeKind.CAPITAL_NEUTRAL

    def test_surplus(self):
        assert classify_regime(econ(), 0.0).kind is RegimeKind.CAPITAL_SURPLUS


class TestPolicyValidation:
    def test_vent_share_range(self):
        with pytest.raises(DomainError):
            Floating(1.5)

    def test_reserves_nonnegative(self):
        with pytest.raises(DomainError):
            Pegged(-1.0)

    def test_drain_positive(self):
        with pytest.raises(DomainError):
            Pegged(10.0, drain=0.0)


class TestStep:
    def test_zero_imbalance_is_a_fixed_point(self):
        d, r = at_neutral(econ()), at_neutral(econ("ref"))
        for policy in (Floating(0.3), Pegged(5.0)):
            res = step(d, r, 1.0, policy, B)
            assert res.imbalance == 0.0
            assert res.rer == 1.0 and res.price_level == d.P
            assert res.event is None
            if isinstance(policy, Pegged):
                assert res.reserves == 5.0

    def test_full_vent_moves_rate_only(self):
        d, r = econ(g_y=0.08), at_neutral(econ("ref"))
        m = log_imbalance(d, r, 1.3, B)
        res = step(d, r, 1.3, Floating(1.0), B)
        assert res.price_level == d.P
        assert math.log(res.rer) - math.log(1.3) == pytest.approx(m, abs=1e-15)
        assert res.spot_factor == math.exp(m)

    def test_zero_vent_moves_prices_only(self):
        d, r = econ(g_y=0.08), at_neutral(econ("ref"))
        m = log_imbalance(d, r, 1.0, B)
        res = step(d, r, 1.0, Floating(0.0), B)
        assert res.spot_factor == 1.0
        assert res.price_level == pytest.approx(d.P * math.exp(-m))

    def test_vent_clears_price_level_imbalance(self):
        d, r = econ(g_y=0.08), at_neutral(econ("ref"))
        res = step(d, r, 1.0, Floating(0.4), B)
        assert abs(log_imbalance(res.state, r, res.rer, B)) < 1e-12

    def test_linear_drain_crisis_timing(self):
        d, r = econ(g_y=0.08), at_neutral(econ("ref"))
        m = log_imbalance(d, r, 1.0, B)
        policy = Pegged(100.0, drain=10.0 / m)
        reserves, rer = 100.0, 1.0
        crisis = None
        for t in range(20):
            res = step(d, r, rer, policy, B, reserves=reserves, period=t)
            if res.event:
                crisis = res
                break
            assert res.reserves == pytest.approx(reserves - 10.0, abs=1e-9)
            assert res.rer == rer
            reserves = res.reserves
        assert crisis is not None and crisis.event.period == 10
        assert crisis.event.kind == "CrisisDevaluation"
        assert crisis.rer == implied_rer(d, r, B).implied_rer
        assert isinstance(crisis.policy, Floating)
        assert crisis.reserves == 0.0


def symmetric_reference(initial, horizon):
    sched = baseline_capital(initial.k, initial.dk, horizon)
    refs = []
    for t in range(horizon):
        s = replace(initial, label="ref", k=float(sched.k[t]), dk=float(sched.dk[t]))
        refs.append(replace(s, g_y=initial.alpha * s.dk / s.k))
    return refs


class TestSimulate:
    def test_neutral_symmetric_rer_is_one(self):
        init = at_neutral(econ())
        for f in Formulation:
            path = simulate(init, symmetric_reference(init, 100), Floating(0.5), "neutral", 100, b=B, f=f)
            assert np.all(path.rer == 1.0)
            assert all(r.regime.kind is RegimeKind.CAPITAL_NEUTRAL for r in path.records)

    def test_neutral_against_constant_reference(self):
        init = at_neutral(econ())
        path = simulate(init, at_neutral(econ("ref", k=50.0, dk=5.0)), Pegged(1.0), "neutral", 60, b=B)
        assert np.allclose(path.rer, 1.0, rtol=1e-12)
        assert not path.events

    @pytest.mark.parametrize("seed", range(100))
    def test_pegged_deficit_single_crisis(self, seed):
        rng = np.random.default_rng(seed)
        init = at_neutral(econ(k=rng.uniform(5, 50), dk=rng.uniform(0.2, 5), alpha=rng.uniform(0.1, 0.6),
                               i=rng.uniform(0, 0.1)))
        ref = at_neutral(econ("ref", k=rng.uniform(5, 50), dk=rng.uniform(0.2, 5), i=rng.uniform(0, 0.1)))
        target = neutral_growth_rate(init) + rng.uniform(0.01, 0.1)
        policy = Pegged(rng.uniform(0.5, 5), drain=rng.uniform(0.05, 0.5))
        b = BilsonParams(psi1=rng.uniform(-1, 1), psi0=rng.uniform(-0.2, 0.2))
        path = simulate(init, ref, policy, target, 300, b=b)
        crises = [e for e in path.events if e.kind == "CrisisDevaluation"]
        assert len(crises) == 1
        tc = crises[0].period
        res = path.reserves
        assert np.all(res >= 0)
        before = np.concatenate([[policy.reserves], res[:tc]])
        assert np.all(path.imbalance[:tc] > 0)
        assert np.all(np.diff(before) < 0)
        assert np.all(path.rer[:tc] == path.rer[0])
        rec = path.records[tc]
        assert abs(log_imbalance(rec.state, ref, rec.rer, b)) < 1e-12
        assert all(r.policy == "Floating" for r in path.records[tc:])

    @pytest.mark.parametrize("theta", [0.2, 0.5, 0.8])
    def test_floating_deficit_signs(self, theta):
        init = at_neutral(econ())
        path = simulate(init, at_neutral(econ("ref")), Floating(theta), 0.09, 80, b=B)
        m = path.imbalance
        assert np.all(m[1:] > 0)
        pre = np.concatenate([[path.rer[0] / math.exp(m[0])], path.rer])
        assert np.all(np.diff(pre) >= 0)
        prices = np.concatenate([[init.P], path.price_level])
        assert np.all(np.diff(prices) <= 0)

    def test_theta_one_conserves_price(self):
        init = at_neutral(econ(P=1.37))
        path = simulate(init, at_neutral(econ("ref")), Floating(1.0), 0.09, 100, b=B)
        assert np.all(path.price_level == 1.37)

    def test_theta_zero_conserves_nominal(self):
        init = at_neutral(econ())
        path = simulate(init, at_neutral(econ("ref")), Floating(0.0), 0.09, 100, b=B)
        assert np.all(path.spot == path.spot[0])
        assert path.spot[0] == 1.0

    def test_monetary_formulation_runs(self):
        init = at_neutral(econ())
        path = simulate(init, at_neutral(econ("ref")), Pegged(0.5), 0.08, 100, b=B, f=Formulation.MONETARY)
        assert len([e for e in path.events if e.kind == "CrisisDevaluation"]) == 1

    def test_deterministic(self):
        init = at_neutral(econ())
        kw = dict(b=B, noise_sd=0.05, seed=2**64 - 1)
        a = simulate(init, at_neutral(econ("ref")), Pegged(2.0), 0.08, 50, **kw)
        b = simulate(init, at_neutral(econ("ref")), Pegged(2.0), 0.08, 50, **kw)
        assert list(a.rows()) == list(b.rows())
        c = simulate(init, at_neutral(econ("ref")), Pegged(2.0), 0.08, 50, b=B, noise_sd=0.05, seed=1)
        assert list(a.rows()) != list(c.rows())

    def test_target_sequence(self):
        init = at_neutral(econ())
        path = simulate(init, at_neutral(econ("ref")), Floating(), [0.05] * 5, 5, b=B)
        assert np.all(path.g_target == 0.05)
        with pytest.raises(ValueError):
            simulate(init, init, Floating(), [0.05] * 3, 5)

    def test_period_labels(self):
        path = simulate(at_neutral(econ()), at_neutral(econ("r")), Floating(), 0.05, 6, start=(1990, 3))
        assert [row[0] for row in path.rows()] == ["1990-Q3", "1990-Q4", "1991-Q1", "1991-Q2", "1991-Q3", "1991-Q4"]


class TestDebtFinancing:
    def setup_method(self):
        self.init = at_neutral(econ())
        self.ref = at_neutral(econ("ref"))

    def run(self, debt=None, period=5, **kw):
        return simulate(self.init, self.ref, Pegged(3.0), 0.07, 40, debt, debt_period=period, b=B, **kw)

    def test_domestic_leaves_paths_identical(self):
        base = self.run()
        dom = self.run(DebtFinancing(DebtSource.DOMESTIC, 50.0, 1.0))
        assert list(base.rows()) == list(dom.rows())
        assert dom.ledger and "domestic" in dom.ledger[0]

    def test_international_zero_service(self):
        base = baseline_capital(20.0, 2.0, 30)
        out = apply_debt_financing(base, DebtFinancing("international", 7.0), 10)
        assert np.array_equal(out.k[:10], base.k[:10])
        assert np.allclose(out.k[10:], base.k[10:] + 7.0, rtol=1e-14)
        assert np.array_equal(out.dk, base.dk)

    def test_service_lowers_neutral_rate(self):
        free = self.run(DebtFinancing("international", 10.0, 0.0))
        paid = self.run(DebtFinancing("international", 10.0, 0.5))
        assert np.array_equal(free.g_neutral[:6], paid.g_neutral[:6])
        assert np.all(paid.g_neutral[6:] < free.g_neutral[6:])

    def test_service_schedule(self):
        base = baseline_capital(20.0, 2.0, 10)
        out = apply_debt_financing(base, DebtFinancing("international", 5.0, [0.5, 1.0]), 3)
        assert out.dk.tolist() == [2, 2, 2, 2, 1.5, 1.0, 2, 2, 2, 2]

    def test_stress_floor(self):
        base = baseline_capital(20.0, 2.0, 10)
        with pytest.warns(RuntimeWarning, match="floored"):
            out = apply_debt_financing(base, DebtFinancing("international", 5.0, 3.0), 2, min_dk=0.01)
        assert np.all(out.dk[3:] == 0.01)
        assert [e.period for e in out.events] == list(range(3, 10))
        assert all(e.kind == "FinancingStress" and e.value == pytest.approx(1.0) for e in out.events)

    def test_bad_period(self):
        with pytest.raises(ValueError):
            apply_debt_financing(baseline_capital(1, 1, 5), DebtFinancing("domestic", 1.0), 5)

    def test_negative_service_rejected(self):
        with pytest.raises(DomainError):
            DebtFinancing("international", 1.0, -0.1)


class TestNeutralRates:
    def test_identical(self):
        rep = neutral_rate_comparison([econ("a"), econ("b"), econ("c")])
        assert all(row[4] == 0 for row in rep.rows)

    def test_spread(self):
        rep = neutral_rate_comparison([econ("a", dk=2.0), econ("b", dk=2.0 * 5 / 3)])
        assert rep.rates["a"] == pytest.approx(0.03)
        assert rep.rates["b"] == pytest.approx(0.05)
        assert rep.rows[0][4] == pytest.approx(0.02, abs=1e-15)
        assert rep.flagged == [rep.rows[0]]

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_pair_count(self, n):
        rep = neutral_rate_comparison([econ(str(j), dk=1 + j) for j in range(n)])
        assert len(rep.rows) == math.comb(n, 2)

    def test_needs_two(self):
        with pytest.raises(ValueError):
            neutral_rate_comparison([econ()])
