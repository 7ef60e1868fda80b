#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "simo/matrix.hpp"
#include "simo/random.hpp"

namespace simo {

// ceil(n^e), snapping results that sit within 1e-9 of an integer so that
// exact powers (4^0.5, N^1.0, ...) never round up spuriously.
inline int ceil_power(int n, double exponent) {
    if (n < 1) throw std::domain_error("ceil_power: n must be positive");
    if (exponent < 0.0) throw std::domain_error("ceil_power: negative exponent");
    double v = std::pow(static_cast<double>(n), exponent);
    const double nearest = std::round(v);
    if (std::abs(v - nearest) < 1e-9 * std::max(1.0, nearest)) v = nearest;
    return static_cast<int>(std::ceil(v));
}

// Dimensions of one operating point. B and L are always derived from
// (N, eps, tau) by the ceiling convention, never stored independently.
struct SystemConfig {
    int N = 1;            // receive antennas
    double eps = 0.0;     // bandwidth exponent
    double tau = 0.0;     // block-length exponent
    double P = 2.0;       // normalized average power
    std::uint64_t seed = 0;
    int B = 1;            // subcarriers, ceil(N^eps)
    int L = 1;            // channel uses per coherence block, ceil(N^tau)

    static SystemConfig from_exponents(int n, double eps, double tau, double power,
                                       std::uint64_t seed) {
        if (n < 1) throw std::domain_error("SystemConfig: N must be >= 1");
        if (eps < 0.0 || tau < 0.0) throw std::domain_error("SystemConfig: negative exponent");
        if (!(power > 0.0)) throw std::domain_error("SystemConfig: P must be positive");
        SystemConfig cfg;
        cfg.N = n;
        cfg.eps = eps;
        cfg.tau = tau;
        cfg.P = power;
        cfg.seed = seed;
        cfg.B = ceil_power(n, eps);
        cfg.L = ceil_power(n, tau);
        return cfg;
    }

    static SystemConfig explicit_dims(int n, int b, int l, double power,
                                      std::uint64_t seed) {
        if (n < 1 || b < 1 || l < 1) throw std::domain_error("SystemConfig: bad dimensions");
        if (!(power > 0.0)) throw std::domain_error("SystemConfig: P must be positive");
        SystemConfig cfg;
        cfg.N = n;
        cfg.P = power;
        cfg.seed = seed;
        cfg.B = b;
        cfg.L = l;
        cfg.eps = n > 1 ? std::log(static_cast<double>(b)) / std::log(static_cast<double>(n)) : 0.0;
        cfg.tau = n > 1 ? std::log(static_cast<double>(l)) / std::log(static_cast<double>(n)) : 0.0;
        return cfg;
    }
};

// One coherence slot: i.i.d. CN(0,1) coefficient per antenna per subcarrier.
struct ChannelBlock {
    ComplexMatrix coeffs;  // N x B
};

inline ChannelBlock sample_channel(const SystemConfig& cfg, SeededStream& stream) {
    ChannelBlock block;
    block.coeffs.resize(cfg.N, cfg.B);
    for (int b = 0; b < cfg.B; ++b) {
        auto column = block.coeffs.col(b);
        for (auto& z : column) z = stream.next_cn01();
    }
    return block;
}

// Y = h x^H + Z for one subcarrier; noise drawn from the given stream.
inline void apply_subchannel(std::span<const std::complex<double>> h,
                             std::span<const std::complex<double>> x,
                             SeededStream& stream, ComplexMatrix& out) {
    const int n = static_cast<int>(h.size());
    const int l = static_cast<int>(x.size());
    if (out.rows() != n || out.cols() != l) out.resize(n, l);
    for (int c = 0; c < l; ++c) {
        const std::complex<double> xc = std::conj(x[c]);
        auto column = out.col(c);
        for (int r = 0; r < n; ++r) column[r] = h[r] * xc + stream.next_cn01();
    }
}

inline ComplexMatrix apply_subchannel(std::span<const std::complex<double>> h,
                                      std::span<const std::complex<double>> x,
                                      SeededStream& stream) {
    ComplexMatrix out;
    apply_subchannel(h, x, stream, out);
    return out;
}

// Test hook: same map with the noise forced to zero.
inline ComplexMatrix apply_subchannel_noiseless(std::span<const std::complex<double>> h,
                                                std::span<const std::complex<double>> x) {
    ComplexMatrix out(static_cast<int>(h.size()), static_cast<int>(x.size()));
    for (int c = 0; c < out.cols(); ++c) {
        const std::complex<double> xc = std::conj(x[c]);
        auto column = out.col(c);
        for (int r = 0; r < out.rows(); ++r) column[r] = h[r] * xc;
    }
    return out;
}

}  // namespace simo
