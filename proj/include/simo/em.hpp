#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "simo/channel.hpp"
#include "simo/matrix.hpp"
#include "simo/scheme.hpp"

namespace simo {

// Uniformly spaced non-negative energy levels {0, spacing, ..., (K-1)*spacing}.
// The top level equals the per-subchannel per-use budget P/M, which reduces to
// the binary set {0, 2/M} at P = 2.
struct EnergyConstellation {
    std::vector<double> levels;
    double spacing = 0.0;
    int K = 0;
    int M = 0;
};

inline EnergyConstellation make_energy_constellation(double power, int m, int k) {
    if (!(power > 0.0)) throw std::domain_error("energy constellation: P must be positive");
    if (m < 1) throw std::domain_error("energy constellation: M must be >= 1");
    if (k < 2) throw std::domain_error("energy constellation: need at least 2 levels");
    EnergyConstellation c;
    c.spacing = power / (static_cast<double>(m) * (k - 1));
    c.K = k;
    c.M = m;
    c.levels.resize(k);
    for (int i = 0; i < k; ++i) c.levels[i] = i * c.spacing;
    return c;
}

struct EmParams {
    int M = 0;
    int K = 2;
    double d = 0.0;           // half-spacing of the energy levels, P/(2 M (K-1))
    std::optional<double> t;  // distance exponent, only defined when (eps, 1/2+tau) is non-empty
};

// Theoretical mode picks M = min(B, ceil(N^min(eps, 1/2+tau))) and the midpoint
// distance exponent; all-subcarriers mode transmits on every subcarrier.
inline EmParams em_select_params(const SystemConfig& cfg, SelectionMode mode, int k = 2) {
    EmParams p;
    p.K = k;
    const double hi = 0.5 + cfg.tau;
    if (cfg.eps < hi) p.t = 0.5 * (cfg.eps + hi);
    if (mode == SelectionMode::all_subcarriers) {
        p.M = cfg.B;
    } else {
        if (!(cfg.eps < hi)) {
            throw std::domain_error("em_select_params: infeasible, eps >= 1/2 + tau");
        }
        p.M = std::min(cfg.B, ceil_power(cfg.N, std::min(cfg.eps, hi)));
    }
    p.d = cfg.P / (2.0 * p.M * (k - 1));
    return p;
}

// x = sqrt(a) * 1_L, the L-fold repetition of one energy symbol.
inline std::vector<std::complex<double>> em_modulate(double energy, int block_len) {
    if (energy < 0.0) throw std::domain_error("em_modulate: negative energy");
    return std::vector<std::complex<double>>(block_len, std::sqrt(energy));
}

// v = sum_n |mean_l y_{n,l}|^2; expectation N(a + 1/L) when the block carries
// energy a.
inline double em_block_statistic(const ComplexMatrix& y) {
    const int n = y.rows();
    const int l = y.cols();
    std::vector<std::complex<double>> row_sum(n);
    for (int c = 0; c < l; ++c) {
        auto column = y.col(c);
        for (int r = 0; r < n; ++r) row_sum[r] += column[r];
    }
    double v = 0.0;
    for (const auto& s : row_sum) v += std::norm(s / static_cast<double>(l));
    return v;
}

inline std::size_t nearest_level(double u, const EnergyConstellation& constellation) {
    if (constellation.levels.empty()) throw std::domain_error("empty constellation");
    std::size_t best = 0;
    double best_dist = std::abs(u - constellation.levels[0]);
    for (std::size_t i = 1; i < constellation.levels.size(); ++i) {
        const double d = std::abs(u - constellation.levels[i]);
        if (d < best_dist) {  // ties keep the smaller level
            best_dist = d;
            best = i;
        }
    }
    return best;
}

// Normalizes the block statistic to the unbiased energy estimate
// u = v/N - 1/L and decides the nearest level.
inline std::size_t em_detect(const ComplexMatrix& y, const EnergyConstellation& constellation) {
    const double u =
        em_block_statistic(y) / y.rows() - 1.0 / static_cast<double>(y.cols());
    return nearest_level(u, constellation);
}

}  // namespace simo
