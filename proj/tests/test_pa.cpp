#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "simo/harness.hpp"
#include "simo/pa.hpp"

using Catch::Approx;
using simo::SeededStream;
using simo::SystemConfig;

namespace {

// Independent oracle: coarse-to-fine grid search of gamma(alpha) on [0,1].
double grid_search_alpha(double rho, int l, double fine_step = 1e-7) {
    const double kappa = rho / (l - 1);
    const double c1 = (rho - kappa) / (1.0 + kappa);
    const auto gamma = [&](double a) { return (a - a * a) / (a * c1 + 1.0); };
    double best = 0.0, best_val = gamma(0.0);
    for (double a = 0.0; a <= 1.0; a += 1e-3) {
        if (gamma(a) > best_val) {
            best_val = gamma(a);
            best = a;
        }
    }
    const double lo = std::max(0.0, best - 2e-3);
    const double hi = std::min(1.0, best + 2e-3);
    for (double a = lo; a <= hi; a += fine_step) {
        if (gamma(a) > best_val) {
            best_val = gamma(a);
            best = a;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("optimal pilot fraction at the pinned points", "[pa]") {
    CHECK(simo::pa_power_split(5.0, 2).alpha_star == Approx(0.5).margin(1e-15));
    const auto s1 = simo::pa_power_split(3.0, 4);
    CHECK(s1.kappa == Approx(1.0));
    CHECK(s1.c1 == Approx(1.0));
    CHECK(s1.alpha_star == Approx(0.41421356237309503).margin(1e-9));
    const auto s2 = simo::pa_power_split(10.0, 11);
    CHECK(s2.alpha_star == Approx(0.298935084424826).margin(1e-9));
    CHECK(s2.alpha_star == Approx(grid_search_alpha(10.0, 11)).margin(1e-5));
    CHECK_THROWS_AS(simo::pa_power_split(3.0, 1), std::domain_error);
    CHECK_THROWS_AS(simo::pa_power_split(0.0, 4), std::domain_error);
}

TEST_CASE("closed form agrees with the grid-search oracle", "[pa]") {
    SeededStream s(61, 0);
    for (int i = 0; i < 100; ++i) {
        const double rho = std::pow(10.0, 6.0 * s.next_unit() - 3.0);
        const int l = 2 + static_cast<int>(s.next_index(9999));
        const auto split = simo::pa_power_split(rho, l);
        CHECK(std::abs(split.alpha_star - grid_search_alpha(rho, l)) <= 1e-6);
        CHECK(split.alpha_star >= 0.0);
        CHECK(split.alpha_star <= 1.0);
        CHECK(split.c2 >= 1.0);
        CHECK(split.kappa <= split.rho);
    }
}

TEST_CASE("the three algebraic forms of alpha* agree", "[pa]") {
    SeededStream s(63, 0);
    for (int i = 0; i < 200; ++i) {
        const double rho = std::pow(10.0, 6.0 * s.next_unit() - 3.0);
        const int l = 3 + static_cast<int>(s.next_index(997));
        const auto sp = simo::pa_power_split(rho, l);
        if (sp.c1 <= 0.0) continue;
        const double form1 = (std::sqrt(1.0 + sp.c1) - 1.0) / sp.c1;
        const double form2 = 1.0 / (sp.c2 + 1.0);
        const double form3 = 1.0 / (std::sqrt((1.0 + sp.rho) / (1.0 + sp.kappa)) + 1.0);
        CHECK(form1 == Approx(form2).margin(1e-12));
        CHECK(form2 == Approx(form3).margin(1e-12));
        CHECK(sp.alpha_star == Approx(form1).margin(1e-12));
    }
}

TEST_CASE("effective SNR at the pinned points", "[pa]") {
    simo::PaPowerSplit s;
    s.rho = 10.0;
    s.kappa = 1.0;
    CHECK(simo::pa_effective_snr(100, s) == Approx(44.6810923500388).margin(0.01));
    // kappa -> 0 starves the data symbols
    s.kappa = 1e-12;
    CHECK(simo::pa_effective_snr(100, s) < 1e-9);
    // L = 2 reduces to N rho^2 / (4 (1+rho))
    simo::PaPowerSplit s2;
    s2.rho = 2.0;
    s2.kappa = 2.0;
    CHECK(simo::pa_effective_snr(10, s2) == Approx(10.0 * 4.0 / (4.0 * 3.0)).margin(1e-12));
    // cross-check against S0 * gamma(alpha*)
    const auto sp = simo::pa_power_split(10.0, 11);
    const double s0 = 100.0 * sp.kappa * sp.rho / (1.0 + sp.kappa);
    const double gamma = (sp.alpha_star - sp.alpha_star * sp.alpha_star) /
                         (sp.alpha_star * sp.c1 + 1.0);
    CHECK(simo::pa_effective_snr(100, sp) == Approx(s0 * gamma).margin(1e-9));
}

TEST_CASE("MMSE estimation behaves across the pilot-power range", "[pa]") {
    // zero pilot gives a zero estimate
    const std::vector<std::complex<double>> y{{1.0, 2.0}, {3.0, -1.0}};
    for (const auto& h : simo::pa_estimate(y, 0.0)) CHECK(h == std::complex<double>(0.0, 0.0));

    // high pilot power recovers the channel in the noiseless hook
    SeededStream s(71, 0);
    const double xp = 1000.0;  // |xp|^2 = 1e6
    std::vector<std::complex<double>> h(16), yp(16);
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] = s.next_cn01();
        yp[i] = h[i] * xp;
    }
    const auto est = simo::pa_estimate(yp, xp);
    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(std::abs(est[i] - h[i]) / std::abs(h[i]) < 1e-5);
    }
}

TEST_CASE("MMSE error variance is 1/(1 + alpha rho)", "[pa]") {
    SeededStream s(73, 0);
    const double xp = 2.0;  // pilot energy 4 -> error variance 1/5
    const int trials = 100'000;
    double mean_sq = 0.0, ss = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto h = s.next_cn01();
        const auto noise = s.next_cn01();
        const std::complex<double> yp = h * xp + noise;
        const auto est = simo::pa_estimate(std::vector<std::complex<double>>{yp}, xp);
        const double err = std::norm(h - est[0]);
        mean_sq += err;
        ss += err * err;
    }
    mean_sq /= trials;
    const double sd = std::sqrt(ss / trials - mean_sq * mean_sq);
    CHECK(std::abs(mean_sq - 0.2) <= 3.0 * sd / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("MRC decisions are exact with perfect CSI and no noise", "[pa]") {
    SeededStream s(79, 0);
    const int n = 8;
    std::vector<std::complex<double>> h(n);
    for (auto& z : h) z = s.next_cn01();
    const double amp = 0.7;
    const std::vector<std::complex<double>> x{amp, -amp, amp};
    const auto y = simo::apply_subchannel_noiseless(h, x);
    const auto decided = simo::pa_detect(y, 0, h, amp);
    REQUIRE(decided.size() == 3);
    CHECK(decided[0] == Approx(amp));
    CHECK(decided[1] == Approx(-amp));
    CHECK(decided[2] == Approx(amp));
    const std::vector<std::complex<double>> zero_est(n, 0.0);
    CHECK_THROWS_AS(simo::pa_detect(y, 0, zero_est, amp), std::domain_error);
}

TEST_CASE("frame energy accounting is exact", "[pa]") {
    SeededStream s(67, 0);
    for (auto [rho, l] : std::vector<std::pair<double, int>>{{4.0, 2}, {7.5, 9}, {0.02, 100}}) {
        const auto sp = simo::pa_power_split(rho, l);
        std::vector<int> signs(l - 1);
        for (auto& sign : signs) sign = s.next_index(2) == 0 ? 1 : -1;
        const auto frame = simo::pa_frame(sp, l, signs);
        REQUIRE(static_cast<int>(frame.size()) == l);
        // pilot + data budgets exhaust rho, per frame, not just on average
        CHECK(simo::squared_norm(frame) == Approx(rho).epsilon(1e-12));
        CHECK(std::norm(frame[0]) == Approx(sp.alpha_star * rho).epsilon(1e-12));
        for (int i = 1; i < l; ++i) {
            CHECK(std::norm(frame[i]) ==
                  Approx((1.0 - sp.alpha_star) * rho / (l - 1)).epsilon(1e-12));
        }
    }
    const auto sp = simo::pa_power_split(1.0, 3);
    const std::vector<int> wrong(3, 1);
    CHECK_THROWS_AS(simo::pa_frame(sp, 3, wrong), std::invalid_argument);
}

TEST_CASE("pa rate at the pinned points and monotone in N", "[pa]") {
    {
        // rho = kappa = 2, N = 9 puts the effective SNR at exactly 3
        // (N rho^2 / (4(1+rho))), so the L=2 rate is 0.5 * M * log2(4) = M
        const auto sp2 = simo::pa_power_split(2.0, 2);
        CHECK(simo::pa_effective_snr(9, sp2) == Approx(3.0).margin(1e-12));
        for (int m : {1, 4, 9}) {
            CHECK(simo::pa_rate(9, m, 2, sp2) == Approx(static_cast<double>(m)).margin(1e-12));
        }
    }
    const auto sp = simo::pa_power_split(10.0, 11);
    CHECK(simo::pa_rate(100, 1, 11, sp) ==
          Approx((10.0 / 11.0) * std::log2(1.0 + 44.6810923500388)).margin(1e-3));
    double prev = 0.0;
    for (int n : {8, 16, 64, 256, 1024}) {
        const double r = simo::pa_rate(n, 4, 11, sp);
        CHECK(r >= prev);
        prev = r;
    }
    CHECK_THROWS_AS(simo::pa_rate(100, 1, 1, sp), std::domain_error);
}

TEST_CASE("pa rate scaling carries the predicted exponent", "[pa][slow]") {
    // M = min(B, ceil(N^((1+tau)/2))) at (eps, tau) = (0.6, 0.3). The exact
    // rate carries a log(1 + N^0.1) factor on top of the Theta(N^0.6) law, so
    // the finite-N slope sits above 0.6; allow for it explicitly.
    std::vector<std::pair<double, double>> pts;
    for (int k = 6; k <= 14; ++k) {
        const int n = 1 << k;
        const auto cfg = SystemConfig::from_exponents(n, 0.6, 0.3, 2.0, 0);
        const int m = std::min(cfg.B, simo::ceil_power(n, 0.5 * (1.0 + 0.3)));
        const auto sp = simo::pa_power_split(cfg.P * cfg.L / m, cfg.L);
        pts.emplace_back(n, simo::pa_rate(n, m, cfg.L, sp));
    }
    const double slope = simo::loglog_slope(pts);
    CHECK(slope >= 0.55);
    CHECK(slope <= 0.75);
}

TEST_CASE("perfect-CSI hook with huge SNR drives the BER to zero", "[pa]") {
    simo::SweepConfig sweep;
    sweep.eps = 0.3;
    sweep.tau = 0.3;
    sweep.P = 1e6;
    const SystemConfig cfg = simo::sweep_point_config(sweep, 64);
    const auto setup =
        simo::configure_scheme(simo::Scheme::pa, cfg, simo::SelectionMode::all_subcarriers);
    SeededStream stream(3, 400);
    CHECK(simo::estimate_ber_pa(cfg, setup, 2000, stream, /*perfect_csi=*/true) == 0.0);
}

TEST_CASE("pa error probability decays at a feasible operating point", "[pa][slow]") {
    // (eps, tau) = (0.6, 0.3) satisfies eps < (1+tau)/2; the error probability
    // must fall well below its small-N level by N = 4096
    const SystemConfig small = SystemConfig::from_exponents(16, 0.6, 0.3, 2.0, 0);
    const SystemConfig large = SystemConfig::from_exponents(4096, 0.6, 0.3, 2.0, 0);
    const auto setup_small =
        simo::configure_scheme(simo::Scheme::pa, small, simo::SelectionMode::all_subcarriers);
    const auto setup_large =
        simo::configure_scheme(simo::Scheme::pa, large, simo::SelectionMode::all_subcarriers);
    SeededStream s1(4, 500), s2(4, 501);
    const double ber_small = simo::estimate_ber_pa(small, setup_small, 5000, s1);
    const double ber_large = simo::estimate_ber_pa(large, setup_large, 5000, s2);
    CHECK(ber_large < ber_small);
    CHECK(ber_large < 0.02);
}
