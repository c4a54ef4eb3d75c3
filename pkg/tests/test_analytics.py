import math

import numpy as np
import pytest
from scipy import integrate

from bcce import analytics, asymptotics
from bcce.model import ClosedFormUnavailable, CollusionMode
from bcce.rates import bcc_rate
from conftest import make_cfg

# frozen 40-digit oracle values (mpmath), beta=1, sigma^2 = 0.1
MU_PAPER = 8.8042996144355259
OUTAGE_NC_EXAMPLE = 0.0950807986267  # gamma=2.284, N=34, lambda=0.1
OUTAGE_COLL_EXAMPLE = 0.0996491422591
THEOREM2_EXAMPLE = 0.00993665430623  # mu lambda / sqrt(N) = 0.01
P_NC_EXAMPLE = 0.269151201559  # gamma_M=0.2319, N=34
NU_AT_00273 = 17.3098494308
DELTA_UB_EXAMPLE = 0.296861468642  # N=34, lambda=0.1
MEAN_RATE_NC = 1.20052797666572  # independent mpmath quadrature of the Lemma-4 form
MEAN_RATE_COLL = 1.18266530229164


def cfg34(**kw):
    base = dict(n=34, beta=1.0, snr_db=10.0, xi=0.0273, lambda_e=0.1)
    base.update(kw)
    return make_cfg(**base)


class TestMu:
    def test_paper_value(self):
        assert analytics.mu_constant(cfg34()) == pytest.approx(MU_PAPER, rel=1e-12)

    def test_rederived_per_call(self):
        assert analytics.mu_constant(make_cfg(snr_db=0.0)) == pytest.approx(
            math.pi**1.5 / 2.0, rel=1e-12
        )


class TestOutageNonColluding:
    def test_zero_density(self):
        assert analytics.outage_noncolluding(2.0, 1.0, cfg34(lambda_e=0.0)) == 0.0

    def test_malicious_branch(self):
        assert analytics.outage_noncolluding(1.0, 2.0, cfg34()) == 1.0

    def test_frozen_example(self):
        val = analytics.outage_noncolluding(2.284, 0.232, cfg34())
        assert val == pytest.approx(OUTAGE_NC_EXAMPLE, rel=1e-10)

    def test_general_eta(self):
        # direct form with Gamma(2/eta) for a non-square-law exponent
        cfg = cfg34(eta=3.0)
        gamma = 2.0
        from bcce.specfun import gamma_fn

        scale = cfg.n_antennas * cfg.network_load * cfg.noise_power * gamma
        expected = 1.0 - math.exp(
            -2.0 * math.pi * 0.1 * gamma_fn(2.0 / 3.0) / (3.0 * scale ** (2.0 / 3.0))
        )
        assert analytics.outage_noncolluding(gamma, 0.1, cfg) == pytest.approx(expected, rel=1e-12)

    def test_large_system_branch_condition(self):
        # huge xi puts the alliance ahead: sure outage
        assert analytics.outage_noncolluding_ls(cfg34(xi=1e6)) == 1.0

    def test_antenna_bound_consistency(self):
        # guarantee direction: O(N_min) < eps; sharpness: 20% fewer antennas break it
        cfg = cfg34()
        gamma, _ = asymptotics.gamma_ls(1.0, 10.0, cfg.regularization)
        eps = 0.1
        n_min = analytics.min_antennas(eps, 0.1, 1.0, cfg.noise_power, gamma)
        assert analytics.outage_noncolluding(gamma, 0.0, cfg34(n=n_min)) < eps
        low = max(1, int(n_min * 0.8))
        assert analytics.outage_noncolluding(gamma, 0.0, cfg34(n=low)) > eps


class TestOutageNearest:
    def test_vanishing_density(self):
        assert analytics.outage_nearest(2.0, 0.1, cfg34(lambda_e=0.0)) == 0.0
        assert analytics.outage_nearest(2.0, 0.1, cfg34(lambda_e=1e-9)) < 1e-8

    def test_dominated_by_noncolluding(self):
        # the nearest eavesdropper is one member of the whole field
        for lam in np.geomspace(0.01, 1.0, 10):
            for n in (4, 16, 64, 256):
                cfg = cfg34(n=n, lambda_e=float(lam))
                gamma = 2.284
                assert analytics.outage_nearest(gamma, 0.1, cfg) <= analytics.outage_noncolluding(
                    gamma, 0.1, cfg
                ) * (1 + 1e-12)

    def test_eta_gate(self):
        with pytest.raises(ClosedFormUnavailable):
            analytics.outage_nearest(2.0, 0.1, cfg34(eta=3.5))

    def test_saturates_to_one(self):
        # overflow-free evaluation at extreme densities
        assert analytics.outage_nearest(1e-6, 1e-8, cfg34(lambda_e=100.0)) == pytest.approx(
            1.0, rel=1e-3
        )


class TestOutageNearestLs:
    def test_verbatim_example(self):
        # construct mu * lambda / sqrt(N) = 0.01
        n = 100
        cfg = cfg34(n=n, lambda_e=0.01 * math.sqrt(n) / MU_PAPER)
        both = analytics.outage_nearest_ls(cfg)
        assert both.verbatim == pytest.approx(THEOREM2_EXAMPLE, rel=1e-9)

    def test_zero_density(self):
        both = analytics.outage_nearest_ls(cfg34(lambda_e=0.0))
        assert both.verbatim == 0.0
        assert both.at_gamma == 0.0

    def test_small_argument_ratio_tends_to_one(self):
        # Lemma 2 at the deterministic point behaves as mu lam / sqrt(N gamma)
        ratios = []
        for n in (10**2, 10**4, 10**6, 10**8):
            cfg = cfg34(n=n)
            gamma, _ = asymptotics.gamma_ls(1.0, 10.0, cfg.regularization)
            leading = analytics.mu_constant(cfg) * 0.1 / math.sqrt(n * gamma)
            ratios.append(analytics.outage_nearest_ls(cfg).at_gamma / leading)
        assert abs(ratios[-1] - 1.0) < 1e-3
        assert all(abs(r2 - 1.0) <= abs(r1 - 1.0) for r1, r2 in zip(ratios, ratios[1:]))

    def test_sure_outage_branch(self):
        both = analytics.outage_nearest_ls(cfg34(xi=1e6))
        assert both == (1.0, 1.0)


class TestOutageColluding:
    def test_zero_density(self):
        assert analytics.outage_colluding(2.0, 0.1, cfg34(lambda_e=0.0)) == 0.0

    def test_frozen_example(self):
        val = analytics.outage_colluding(2.284, 0.232, cfg34())
        assert val == pytest.approx(OUTAGE_COLL_EXAMPLE, rel=1e-10)

    def test_eta_gate(self):
        with pytest.raises(ClosedFormUnavailable):
            analytics.outage_colluding(2.0, 0.1, cfg34(eta=3.0))

    def test_ls_branch(self):
        assert analytics.outage_colluding_ls(cfg34(xi=1e6)) == 1.0


class TestMinAntennas:
    def test_paper_value(self):
        gamma, _ = asymptotics.gamma_ls(1.0, 10.0, 0.0273)
        assert analytics.min_antennas(0.1, 0.1, 1.0, 0.1, gamma) == 34

    def test_loose_epsilon_needs_one_antenna(self):
        gamma, _ = asymptotics.gamma_ls(1.0, 10.0, 0.0273)
        assert analytics.min_antennas(0.999, 0.1, 1.0, 0.1, gamma) == 1

    def test_density_doubling_quadruples(self):
        gamma, _ = asymptotics.gamma_ls(1.0, 10.0, 0.0273)
        mu = MU_PAPER
        for lam in (0.05, 0.1, 0.2):
            bound = (mu * lam / (0.1 * math.sqrt(gamma))) ** 2
            n2 = analytics.min_antennas(0.1, 2.0 * lam, 1.0, 0.1, gamma)
            assert n2 == math.floor(4.0 * bound) + 1

    def test_epsilon_validation(self):
        with pytest.raises(ValueError):
            analytics.min_antennas(0.0, 0.1, 1.0, 0.1, 2.0)
        with pytest.raises(ValueError):
            analytics.min_antennas(1.0, 0.1, 1.0, 0.1, 2.0)


class TestProbEveBeatsMalicious:
    def test_zero_density(self):
        assert analytics.prob_eve_beats_malicious(0.2, cfg34(lambda_e=0.0)) == 0.0

    def test_zero_malicious_sinr(self):
        assert analytics.prob_eve_beats_malicious(0.0, cfg34()) == 1.0

    def test_frozen_example(self):
        val = analytics.prob_eve_beats_malicious(0.2319, cfg34(), CollusionMode.NON_COLLUDING)
        assert val == pytest.approx(P_NC_EXAMPLE, rel=1e-10)

    def test_dominates_outage(self):
        # gamma_M <= gamma, and both closed forms decrease in the threshold
        for lam in (0.05, 0.1, 0.5):
            for n in (10, 34, 100):
                cfg = cfg34(n=n, lambda_e=lam)
                gamma, gamma_m = asymptotics.gamma_ls(1.0, 10.0, cfg.regularization)
                for mode, outage in (
                    (CollusionMode.NON_COLLUDING, analytics.outage_noncolluding_ls),
                    (CollusionMode.COLLUDING, analytics.outage_colluding_ls),
                ):
                    cfg_mode = make_cfg(
                        n=n, lambda_e=lam, snr_db=10.0, xi=cfg.regularization, mode=mode.value
                    )
                    assert analytics.prob_eve_beats_malicious(gamma_m, cfg_mode, mode) >= outage(
                        cfg_mode
                    )

    def test_nearest_unsupported(self):
        with pytest.raises(ClosedFormUnavailable):
            analytics.prob_eve_beats_malicious(0.2, cfg34(), CollusionMode.NEAREST_ONLY)


class TestDensityGammaE:
    # in the substituted variable u = 1/sqrt(y) the density transforms as
    # f(y) dy = f(u^-2) * 2 u^-3 du, and the exponential factors cut the
    # integrand off well before u = 1e4, so a finite window is exhaustive
    @staticmethod
    def _substituted(cfg, mode):
        return lambda u: 2.0 * u**-3.0 * analytics.density_gamma_E(u**-2.0, cfg, mode)

    @pytest.mark.parametrize("mode", [CollusionMode.NON_COLLUDING, CollusionMode.COLLUDING])
    def test_normalization(self, mode):
        cfg = cfg34()
        total, err = integrate.quad(self._substituted(cfg, mode), 0.0, 1e4, limit=200)
        assert abs(total - 1.0) < 1e-6
        assert err < 1e-6

    def test_colluding_cdf_identity(self):
        # integral of the density reproduces the closed-form law within 1e-8;
        # the complement is the Lemma-3 outage expression at threshold y
        from bcce.specfun import q_fn

        cfg = cfg34(mode="colluding")
        mu_lam = analytics.mu_constant(cfg) * cfg.eavesdropper_density
        integrand = self._substituted(cfg, CollusionMode.COLLUDING)
        for y in (0.05, 0.5, 2.284, 20.0):
            cdf_quad, err = integrate.quad(
                integrand, 1.0 / math.sqrt(y), 1e4, limit=200, epsabs=1e-12
            )
            expected = 2.0 * q_fn(mu_lam * math.sqrt(math.pi / (2.0 * cfg.n_antennas * y)))
            assert abs(cdf_quad - expected) < 1e-8
            assert abs((1.0 - cdf_quad) - (1.0 - expected)) < 1e-8
            assert analytics.eve_sinr_cdf(y, cfg) == pytest.approx(expected, rel=1e-12)

    def test_noncolluding_cdf_identity(self):
        cfg = cfg34(mode="noncolluding")
        mu_lam = analytics.mu_constant(cfg) * cfg.eavesdropper_density
        integrand = self._substituted(cfg, CollusionMode.NON_COLLUDING)
        for y in (0.05, 0.5, 2.284, 20.0):
            cdf_quad, _ = integrate.quad(
                integrand, 1.0 / math.sqrt(y), 1e4, limit=200, epsabs=1e-12
            )
            expected = math.exp(-mu_lam / math.sqrt(cfg.n_antennas * y))
            assert abs(cdf_quad - expected) < 1e-8

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            analytics.density_gamma_E(0.0, cfg34())
        with pytest.raises(ValueError):
            analytics.density_gamma_E(np.array([1.0, -2.0]), cfg34())

    def test_eta_gate(self):
        with pytest.raises(ClosedFormUnavailable):
            analytics.density_gamma_E(1.0, cfg34(eta=3.0))


class TestMeanSecrecyRate:
    def test_reduces_to_bcc_without_eavesdroppers(self):
        cfg = cfg34(lambda_e=0.0)
        assert analytics.mean_secrecy_rate(2.284, 0.2319, cfg) == bcc_rate(2.284, 0.2319)

    def test_zero_when_alliance_wins(self):
        assert analytics.mean_secrecy_rate(0.2, 0.3, cfg34()) == 0.0

    @pytest.mark.parametrize(
        "mode,expected",
        [
            (CollusionMode.NON_COLLUDING, MEAN_RATE_NC),
            (CollusionMode.COLLUDING, MEAN_RATE_COLL),
        ],
    )
    def test_frozen_quadrature_oracle(self, mode, expected):
        value = analytics.mean_secrecy_rate(2.284, 0.2319, cfg34(), mode)
        assert value == pytest.approx(expected, rel=1e-9)

    def test_nearest_unsupported(self):
        with pytest.raises(ClosedFormUnavailable):
            analytics.mean_secrecy_rate(2.0, 0.2, cfg34(), CollusionMode.NEAREST_ONLY)

    def test_small_lower_limit_uses_substitution(self):
        # gamma_M below the substitution threshold still integrates cleanly
        value = analytics.mean_secrecy_rate(2.0, 1e-6, cfg34())
        assert 0.0 < value < math.log2(3.0)


class TestMeanSecrecyRateLs:
    def test_no_eavesdroppers(self):
        cfg = cfg34(lambda_e=0.0)
        assert analytics.mean_secrecy_rate_ls(cfg) == asymptotics.r_bcc_ls(1.0, 10.0, 0.0273)

    def test_extreme_density_drives_rate_to_zero(self):
        assert analytics.mean_secrecy_rate_ls(cfg34(lambda_e=1e3)) == 0.0

    def test_monotone_in_antennas(self):
        values = [analytics.mean_secrecy_rate_ls(cfg34(n=n)) for n in (10, 20, 40)]
        assert values[0] < values[1] < values[2]

    def test_sandwich(self):
        for lam in (0.01, 0.1, 1.0):
            for mode in ("noncolluding", "colluding"):
                cfg = cfg34(lambda_e=lam, mode=mode)
                r_mean = analytics.mean_secrecy_rate_ls(cfg)
                assert 0.0 <= r_mean <= asymptotics.r_bcc_ls(1.0, 10.0, 0.0273) + 1e-12


class TestRateLossBound:
    def test_zero_density(self):
        loss = analytics.rate_loss_bound(cfg34(lambda_e=0.0))
        assert loss.delta_e == 0.0
        assert loss.delta_ub == 0.0

    def test_frozen_values(self):
        loss = analytics.rate_loss_bound(cfg34())
        assert loss.nu == pytest.approx(NU_AT_00273, rel=1e-10)
        assert loss.delta_ub == pytest.approx(DELTA_UB_EXAMPLE, rel=1e-10)

    def test_bound_holds_on_grid(self):
        for lam in (0.05, 0.1, 0.2):
            for n in (10, 20, 40):
                for mode in ("noncolluding", "colluding"):
                    loss = analytics.rate_loss_bound(cfg34(n=n, lambda_e=lam, mode=mode))
                    assert loss.delta_e <= loss.delta_ub + 1e-12


class TestNearestDistancePdf:
    def test_normalization(self):
        total, _ = integrate.quad(lambda x: analytics.nearest_distance_pdf(x, 0.1), 0, np.inf)
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_mode_location(self):
        lam = 0.37
        peak = 1.0 / math.sqrt(2.0 * math.pi * lam)
        xs = np.linspace(1e-3, 5.0 * peak, 20_001)
        vals = analytics.nearest_distance_pdf(xs, lam)
        assert xs[int(np.argmax(vals))] == pytest.approx(peak, rel=1e-3)


class TestLaplaceColluding:
    def test_at_zero(self):
        assert analytics.laplace_colluding(0.0, cfg34()) == 1.0

    def test_eta4_reduction(self):
        cfg = cfg34()
        scale = cfg.n_antennas * cfg.network_load * cfg.noise_power
        for s in (0.1, 1.0, 10.0):
            reduced = math.exp(
                -(math.pi**2 * cfg.eavesdropper_density / 2.0) * math.sqrt(s / scale)
            )
            assert analytics.laplace_colluding(s, cfg) == pytest.approx(reduced, rel=1e-12)

    def test_empirical_transform(self):
        from bcce.sampling import SeedPlan, StreamLabel, sample_field_stats

        cfg = make_cfg(lambda_e=0.1, mode="colluding", seed=14)
        stats = sample_field_stats(
            cfg, SeedPlan(14, 0, StreamLabel.FIELD), 4000, gamma_ref=2.283
        )
        gamma_e = stats.sum_unit / cfg.n_users
        for s in (0.5, 2.0):
            draws = np.exp(-s * gamma_e)
            emp, se = draws.mean(), draws.std(ddof=1) / math.sqrt(draws.size)
            assert abs(emp - analytics.laplace_colluding(s, cfg)) < 3.0 * se

    def test_general_eta(self):
        cfg = cfg34(eta=3.0)
        assert 0.0 < analytics.laplace_colluding(1.0, cfg) < 1.0


class TestScalingLaws:
    @pytest.mark.parametrize(
        "outage",
        [analytics.outage_noncolluding_ls, analytics.outage_colluding_ls],
    )
    def test_inverse_sqrt_decay(self, outage):
        ns = np.array([16, 64, 256, 1024])
        values = np.array([outage(cfg34(n=int(n))) for n in ns])
        slope = np.polyfit(np.log(ns), np.log(values), 1)[0]
        assert -0.55 <= slope <= -0.45

    @pytest.mark.parametrize(
        "outage",
        [analytics.outage_noncolluding_ls, analytics.outage_colluding_ls],
    )
    def test_density_antenna_exchange_identity(self, outage):
        # the eta=4 closed forms depend on (lambda_e, N) only through their ratio
        base = outage(cfg34(n=25, lambda_e=0.1))
        assert outage(cfg34(n=100, lambda_e=0.2)) == base

    def test_mode_ordering(self):
        for lam in (0.01, 0.1, 1.0):
            for n in (9, 36, 144):
                nc = analytics.outage_noncolluding_ls(cfg34(n=n, lambda_e=lam))
                coll = analytics.outage_colluding_ls(cfg34(n=n, lambda_e=lam))
                assert nc <= coll + 1e-15


class TestLargeSystemPoint:
    def test_bundles_consistently(self, cfg_paper):
        point = analytics.large_system_point(cfg_paper)
        gamma, gamma_m = asymptotics.gamma_ls(1.0, 10.0, cfg_paper.regularization)
        assert point.gamma_ls == gamma
        assert point.gamma_m_ls == gamma_m
        assert point.r_bcc_ls == bcc_rate(gamma, gamma_m)
        assert point.outage_ls == analytics.outage_noncolluding_ls(cfg_paper)
        assert 0.0 <= point.r_mean_ls <= point.r_bcc_ls

    def test_nearest_mode_unavailable(self):
        with pytest.raises(ClosedFormUnavailable):
            analytics.large_system_point(cfg34(mode="nearest"))
