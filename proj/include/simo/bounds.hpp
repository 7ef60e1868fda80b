#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "simo/channel.hpp"
#include "simo/numerics.hpp"
#include "simo/random.hpp"
#include "simo/scheme.hpp"

namespace simo {

// Shape-information bounds per coherence block, in nats. Phi1 comes from the
// output-energy argument, Phi2 is the coherent AWGN cap; the useful bound is
// their minimum.
inline double phi1(double a, long long n_antennas, long long block_len) {
    if (a < 0.0) throw std::domain_error("phi1: negative energy");
    if (block_len < 2) throw std::domain_error("phi1: degenerate block, L must be >= 2");
    return a * a / (1.0 + a) * static_cast<double>(n_antennas) *
           (1.0 - 1.0 / static_cast<double>(block_len));
}

inline double phi2(double a, long long n_antennas, long long block_len) {
    if (a < 0.0) throw std::domain_error("phi2: negative energy");
    if (block_len < 2) throw std::domain_error("phi2: degenerate block, L must be >= 2");
    return static_cast<double>(block_len) * std::log1p(a * static_cast<double>(n_antennas));
}

inline double phi(double a, long long n_antennas, long long block_len) {
    return std::min(phi1(a, n_antennas, block_len), phi2(a, n_antennas, block_len));
}

// Crossing point of Phi1 and Phi2. Phi1 - Phi2 is negative near 0+ and
// positive for large a; the upper end of the bracket doubles until the sign
// flips, then bisection runs to a relative width of rel_tol.
inline double solve_a0(long long n_antennas, long long block_len, double rel_tol = 1e-12) {
    if (n_antennas < 1) throw std::domain_error("solve_a0: N must be >= 1");
    if (block_len < 2) throw std::domain_error("solve_a0: degenerate block, L must be >= 2");
    const auto gap = [&](double a) {
        return phi1(a, n_antennas, block_len) - phi2(a, n_antennas, block_len);
    };
    double lo = 1e-9;
    double hi = 1.0;
    int expansions = 0;
    while (gap(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 200) throw std::runtime_error("solve_a0: bracket expansion failed");
    }
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace detail {

inline double sup_phi_at(double rho, long long n, long long l, double a0) {
    if (a0 >= rho) {
        return rho * a0 / (1.0 + a0) * static_cast<double>(n) *
               (1.0 - 1.0 / static_cast<double>(l));
    }
    return static_cast<double>(l) * std::log1p(rho * static_cast<double>(n));
}

}  // namespace detail

// sup over energy distributions of E[Phi(a)] under E[a] <= rho, in nats.
// Below a0 the optimum is two-point mass at {0, a0}; above it, constant rho.
inline double sup_phi(double rho, long long n_antennas, long long block_len) {
    if (!(rho > 0.0)) throw std::domain_error("sup_phi: rho must be positive");
    return detail::sup_phi_at(rho, n_antennas, block_len,
                              solve_a0(n_antennas, block_len));
}

struct BoundReport {
    double a0 = 0.0;
    double sup_phi = 0.0;   // nats, at the maximizing subchannel count
    double cs_upper = 0.0;  // bits per symbol-period
    long long m_star = 1;
    double bcrit_lo = 0.0;
    double bcrit_hi = 0.0;
};

// sup over M in {1..B} of (M/L) * sup_phi(PL/M), converted to bits. The
// objective rises while PL/M > a0 and is flat past that point, so m_star is
// reported as the smallest count within round-off of the supremum. Exhaustive
// below 4096 candidates; golden-section on the continuous relaxation above,
// cross-checked against the flat tail.
inline std::pair<double, long long> shape_capacity_search(long long n_antennas,
                                                          long long block_len, double power,
                                                          long long subcarriers) {
    if (subcarriers < 1) throw std::domain_error("shape_capacity_search: B must be >= 1");
    if (!(power > 0.0)) throw std::domain_error("shape_capacity_search: P must be positive");
    const double a0 = solve_a0(n_antennas, block_len);
    const double ln2 = std::log(2.0);
    const auto objective = [&](double m) {
        const double rho = power * static_cast<double>(block_len) / m;
        return m / static_cast<double>(block_len) *
               detail::sup_phi_at(rho, n_antennas, block_len, a0) / ln2;
    };
    double best = objective(static_cast<double>(subcarriers));
    if (subcarriers <= 4096) {
        for (long long m = 1; m < subcarriers; ++m) {
            best = std::max(best, objective(static_cast<double>(m)));
        }
    } else {
        constexpr double inv_golden = 0.6180339887498949;
        double lo = 1.0, hi = static_cast<double>(subcarriers);
        double x1 = hi - inv_golden * (hi - lo);
        double x2 = lo + inv_golden * (hi - lo);
        double f1 = objective(x1), f2 = objective(x2);
        while (hi - lo > 0.5) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_golden * (hi - lo);
                f2 = objective(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_golden * (hi - lo);
                f1 = objective(x1);
            }
        }
        for (double m : {std::floor(lo), std::ceil(lo), std::floor(hi), std::ceil(hi)}) {
            if (m >= 1.0 && m <= static_cast<double>(subcarriers)) {
                best = std::max(best, objective(m));
            }
        }
    }
    // smallest M attaining the supremum within round-off; the objective is
    // non-decreasing so a binary search suffices
    const double cutoff = best * (1.0 - 1e-12);
    long long lo_m = 1, hi_m = subcarriers;
    while (lo_m < hi_m) {
        const long long mid = lo_m + (hi_m - lo_m) / 2;
        if (objective(static_cast<double>(mid)) >= cutoff) {
            hi_m = mid;
        } else {
            lo_m = mid + 1;
        }
    }
    return {best, lo_m};
}

// Critical-bandwidth interval of the overspreading threshold; natural logs.
inline std::pair<double, double> critical_bandwidth(double power, long long n_antennas,
                                                    long long block_len) {
    if (!(power > 0.0)) throw std::domain_error("critical_bandwidth: P must be positive");
    if (n_antennas < 1) throw std::domain_error("critical_bandwidth: N must be >= 1");
    if (block_len < 2) throw std::domain_error("critical_bandwidth: L must be >= 2");
    const double ln_pi = std::log(std::numbers::pi);
    const double l_term = static_cast<double>(block_len) / std::log(static_cast<double>(block_len));
    const double lo = 2.0 * power * std::sqrt(ln_pi / (1.0 + n_antennas) * l_term);
    const double hi = 2.0 * power * std::sqrt((1.0 + n_antennas) * ln_pi * l_term);
    return {lo, hi};
}

struct ExponentPrediction {
    Scheme scheme = Scheme::noncoherent;
    double exponent = 0.0;
};

// Capacity/rate scaling exponents in N for B = N^eps, L = N^tau.
inline ExponentPrediction predicted_exponent(Scheme scheme, double eps, double tau) {
    if (eps < 0.0 || tau < 0.0) throw std::domain_error("predicted_exponent: negative exponent");
    double e = 0.0;
    switch (scheme) {
        case Scheme::coherent:
            e = std::min(eps, 1.0);
            break;
        case Scheme::noncoherent:
        case Scheme::pa:
            e = std::min({eps, 0.5 * (1.0 + tau), 1.0});
            break;
        case Scheme::em:
        case Scheme::oed:
            e = std::min(eps - tau, 0.5);
            break;
        case Scheme::fem:
            e = std::min(eps, 0.5);
            break;
        default:
            throw std::domain_error("predicted_exponent: unknown scheme");
    }
    return {scheme, e};
}

// Monte Carlo estimate of the equal-power coherent baseline
// B * E[log2(1 + (P/B) |h|^2)] in bits per symbol-period. Trials reduce via
// pairwise summation in a fixed tree order.
inline double coherent_capacity_mc(const SystemConfig& cfg, long long trials,
                                   SeededStream& stream, double* std_err = nullptr) {
    if (trials < 1) throw std::domain_error("coherent_capacity_mc: trials must be >= 1");
    std::vector<double> samples(static_cast<std::size_t>(trials));
    const double snr_scale = cfg.P / cfg.B;
    for (auto& s : samples) {
        double gain = 0.0;
        for (int i = 0; i < cfg.N; ++i) gain += stream.next_exponential();
        s = std::log2(1.0 + snr_scale * gain);
    }
    const double mean = pairwise_mean(samples);
    if (std_err != nullptr) {
        double ss = 0.0;
        for (double s : samples) ss += (s - mean) * (s - mean);
        *std_err = cfg.B * std::sqrt(ss / static_cast<double>(trials)) /
                   std::sqrt(static_cast<double>(trials));
    }
    return cfg.B * mean;
}

// Full report for one (N, L, P, B) point, as printed by the bounds command.
inline BoundReport evaluate_bounds(long long n_antennas, long long block_len, double power,
                                   long long subcarriers) {
    BoundReport r;
    r.a0 = solve_a0(n_antennas, block_len);
    auto [cs, m_star] = shape_capacity_search(n_antennas, block_len, power, subcarriers);
    r.cs_upper = cs;
    r.m_star = m_star;
    r.sup_phi = detail::sup_phi_at(power * static_cast<double>(block_len) / m_star,
                                   n_antennas, block_len, r.a0);
    auto [lo, hi] = critical_bandwidth(power, n_antennas, block_len);
    r.bcrit_lo = lo;
    r.bcrit_hi = hi;
    return r;
}

inline BoundReport evaluate_bounds(const SystemConfig& cfg) {
    return evaluate_bounds(cfg.N, cfg.L, cfg.P, cfg.B);
}

}  // namespace simo
