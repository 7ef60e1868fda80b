#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "simo/matrix.hpp"

namespace simo {

// Everything the pilot-assisted scheme derives from the block energy budget
// rho = PL/M before any data flows.
struct PaPowerSplit {
    double rho = 0.0;          // per-subchannel block energy
    double kappa = 0.0;        // rho / (L-1)
    double c1 = 0.0;           // (rho - kappa) / (1 + kappa)
    double c2 = 1.0;           // sqrt(1 + c1)
    double alpha_star = 0.5;   // optimal pilot energy fraction
    double est_err_var = 1.0;  // MMSE error variance 1/(1 + alpha*rho)
};

// Closed-form optimal pilot fraction. The 1/(1+sqrt(1+C1)) form is used so the
// C1 -> 0 limit (L = 2) lands on 1/2 without a special case.
inline PaPowerSplit pa_power_split(double rho, int block_len) {
    if (block_len < 2) {
        throw std::domain_error("pa_power_split: block too short for pilot plus data");
    }
    if (!(rho > 0.0)) throw std::domain_error("pa_power_split: rho must be positive");
    PaPowerSplit s;
    s.rho = rho;
    s.kappa = rho / (block_len - 1);
    s.c1 = (rho - s.kappa) / (1.0 + s.kappa);
    s.c2 = std::sqrt(1.0 + s.c1);
    s.alpha_star = 1.0 / (s.c2 + 1.0);
    s.est_err_var = 1.0 / (1.0 + s.alpha_star * rho);
    return s;
}

inline double pa_pilot_amplitude(const PaPowerSplit& s) {
    return std::sqrt(s.alpha_star * s.rho);
}

inline double pa_data_amplitude(const PaPowerSplit& s, int block_len) {
    return std::sqrt((1.0 - s.alpha_star) * s.rho / (block_len - 1));
}

// Length-L transmit frame: constant-amplitude pilot first, then scaled BPSK.
// Pilot and data budgets exhaust the block energy rho exactly.
inline std::vector<std::complex<double>> pa_frame(const PaPowerSplit& s, int block_len,
                                                  std::span<const int> data_signs) {
    if (block_len < 2 || data_signs.size() != static_cast<std::size_t>(block_len - 1)) {
        throw std::invalid_argument("pa_frame: need L >= 2 and L-1 data signs");
    }
    std::vector<std::complex<double>> x(block_len);
    x[0] = pa_pilot_amplitude(s);
    const double amp = pa_data_amplitude(s, block_len);
    for (int l = 0; l + 1 < block_len; ++l) x[l + 1] = data_signs[l] * amp;
    return x;
}

// Decider-perceived SNR at the optimal split: N*kappa*rho / (sqrt(1+rho)+sqrt(1+kappa))^2.
inline double pa_effective_snr(int n_antennas, const PaPowerSplit& s) {
    const double root_sum = std::sqrt(1.0 + s.rho) + std::sqrt(1.0 + s.kappa);
    return n_antennas * s.kappa * s.rho / (root_sum * root_sum);
}

// Per-antenna MMSE estimate from the pilot observation.
inline std::vector<std::complex<double>> pa_estimate(
    std::span<const std::complex<double>> y_pilot, std::complex<double> x_pilot) {
    const std::complex<double> gain = std::conj(x_pilot) / (std::norm(x_pilot) + 1.0);
    std::vector<std::complex<double>> h_hat(y_pilot.size());
    for (std::size_t i = 0; i < y_pilot.size(); ++i) h_hat[i] = gain * y_pilot[i];
    return h_hat;
}

// MRC r_l = h_hat^H y_l followed by a nearest-neighbor BPSK decision; returns
// the decided symbol values (+/- amplitude) for columns [first_data_col, L).
inline std::vector<double> pa_detect(const ComplexMatrix& y, int first_data_col,
                                     std::span<const std::complex<double>> h_hat,
                                     double amplitude) {
    if (squared_norm(h_hat) == 0.0) {
        throw std::domain_error("pa_detect: degenerate combining, zero channel estimate");
    }
    std::vector<double> decided;
    decided.reserve(y.cols() - first_data_col);
    for (int c = first_data_col; c < y.cols(); ++c) {
        auto column = y.col(c);
        std::complex<double> r = 0.0;
        for (std::size_t i = 0; i < h_hat.size(); ++i) r += std::conj(h_hat[i]) * column[i];
        decided.push_back(r.real() >= 0.0 ? amplitude : -amplitude);
    }
    return decided;
}

// Achievable rate in bits per symbol-period, using the large-N step |h|^2 ~ N.
inline double pa_rate(int n_antennas, int m, int block_len, const PaPowerSplit& s) {
    if (block_len < 2) throw std::domain_error("pa_rate: block too short");
    return (block_len - 1.0) / block_len * m *
           std::log2(1.0 + pa_effective_snr(n_antennas, s));
}

}  // namespace simo
