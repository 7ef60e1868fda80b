#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "simo/em.hpp"

namespace simo {

struct FemParams {
    int M = 0;
    int K = 2;
    std::optional<double> t;  // requires t < 1/2
};

inline FemParams fem_select_params(const SystemConfig& cfg, SelectionMode mode, int k = 2) {
    FemParams p;
    p.K = k;
    if (cfg.eps < 0.5) p.t = 0.5 * (cfg.eps + 0.5);
    if (mode == SelectionMode::all_subcarriers) {
        p.M = cfg.B;
        return p;
    }
    if (!(cfg.eps < 0.5)) {
        throw std::domain_error("fem_select_params: infeasible, eps >= 1/2");
    }
    p.M = std::min(cfg.B, ceil_power(cfg.N, std::min(cfg.eps, 0.5)));
    return p;
}

// x_l = sqrt(a_l), one independent energy symbol per channel use.
inline std::vector<std::complex<double>> fem_modulate(std::span<const double> energies) {
    std::vector<std::complex<double>> x(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (energies[i] < 0.0) throw std::domain_error("fem_modulate: negative energy");
        x[i] = std::sqrt(energies[i]);
    }
    return x;
}

// v_l = sum_n |y_{n,l}|^2; expectation N(a_l + 1).
inline double fem_column_statistic(const ComplexMatrix& y, int col) {
    return squared_norm(y.col(col));
}

// Symbol-by-symbol decisions on u_l = v_l/N - 1; deliberately ignores that the
// channel is shared across the block.
inline std::vector<std::size_t> fem_detect(const ComplexMatrix& y,
                                           const EnergyConstellation& constellation) {
    std::vector<std::size_t> decided(y.cols());
    for (int c = 0; c < y.cols(); ++c) {
        const double u = fem_column_statistic(y, c) / y.rows() - 1.0;
        decided[c] = nearest_level(u, constellation);
    }
    return decided;
}

}  // namespace simo
