#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "simo/channel.hpp"
#include "simo/em.hpp"
#include "simo/fem.hpp"
#include "simo/numerics.hpp"
#include "simo/pa.hpp"
#include "simo/scheme.hpp"

namespace simo {

struct SweepConfig {
    double eps = 0.0;
    double tau = 0.0;
    std::vector<int> n_grid;
    int symbols_per_point = 10000;
    double P = 2.0;
    std::uint64_t seed = 0;
    std::vector<Scheme> schemes{Scheme::em, Scheme::fem, Scheme::pa};
    SelectionMode mode = SelectionMode::all_subcarriers;
};

struct SweepRecord {
    Scheme scheme = Scheme::em;
    int N = 0;
    int B = 0;
    int L = 0;
    int M = 0;
    int K = 2;
    double ber = 0.0;
    double nominal_rate = 0.0;
    double bsc_eq_rate = 0.0;
    std::uint64_t seed = 0;
};

inline std::vector<int> make_geometric_grid(int n_min, int n_max, int points) {
    if (n_min < 1 || n_max < n_min || points < 2) {
        throw std::domain_error("geometric grid: need n_max >= n_min >= 1 and >= 2 points");
    }
    std::vector<int> grid;
    const double ratio = std::log(static_cast<double>(n_max) / n_min) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const int n = static_cast<int>(std::llround(n_min * std::exp(ratio * i)));
        if (grid.empty() || n > grid.back()) grid.push_back(n);
    }
    return grid;
}

// Operating point for one grid value. Simulated blocks are never shorter than
// two uses: tau = 0 means constant-length blocks, and length 2 is the smallest
// that carries a pilot plus data (and keeps the bound evaluator defined).
inline SystemConfig sweep_point_config(const SweepConfig& sweep, int n) {
    SystemConfig cfg = SystemConfig::from_exponents(n, sweep.eps, sweep.tau, sweep.P, sweep.seed);
    cfg.L = std::max(cfg.L, 2);
    return cfg;
}

// Per-scheme resolved parameters for one operating point.
struct SchemeSetup {
    Scheme scheme = Scheme::em;
    int M = 1;
    int K = 2;
    EnergyConstellation constellation;  // em / fem
    PaPowerSplit split;                 // pa
};

inline SchemeSetup configure_scheme(Scheme scheme, const SystemConfig& cfg,
                                    SelectionMode mode) {
    SchemeSetup s;
    s.scheme = scheme;
    switch (scheme) {
        case Scheme::em: {
            const EmParams p = em_select_params(cfg, mode);
            s.M = p.M;
            s.K = p.K;
            s.constellation = make_energy_constellation(cfg.P, s.M, s.K);
            break;
        }
        case Scheme::fem: {
            const FemParams p = fem_select_params(cfg, mode);
            s.M = p.M;
            s.K = p.K;
            s.constellation = make_energy_constellation(cfg.P, s.M, s.K);
            break;
        }
        case Scheme::pa: {
            s.M = mode == SelectionMode::theoretical
                      ? std::min(cfg.B, ceil_power(cfg.N, 0.5 * (1.0 + cfg.tau)))
                      : cfg.B;
            s.K = 2;
            s.split = pa_power_split(cfg.P * cfg.L / s.M, cfg.L);
            break;
        }
        default:
            throw std::domain_error("configure_scheme: not a simulated scheme");
    }
    return s;
}

namespace detail {

inline void fill_cn01(std::vector<std::complex<double>>& v, int n, SeededStream& stream) {
    v.resize(n);
    for (auto& z : v) z = stream.next_cn01();
}

}  // namespace detail

// Fraction of erroneous decided bits over n_symbols transmitted bits. The
// channel is redrawn every coherence block and additive noise every use. The
// sweeps use binary constellations, so symbol and bit errors coincide.
inline double estimate_ber_em(const SystemConfig& cfg, const SchemeSetup& setup,
                              long long n_symbols, SeededStream& stream) {
    std::vector<std::complex<double>> h;
    std::vector<std::complex<double>> x;
    ComplexMatrix y;
    long long errors = 0;
    for (long long s = 0; s < n_symbols; ++s) {
        const std::uint32_t sent = stream.next_index(setup.K);
        const double a = setup.constellation.levels[sent];
        x.assign(cfg.L, std::sqrt(a));
        detail::fill_cn01(h, cfg.N, stream);
        apply_subchannel(h, x, stream, y);
        if (em_detect(y, setup.constellation) != sent) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(n_symbols);
}

inline double estimate_ber_fem(const SystemConfig& cfg, const SchemeSetup& setup,
                               long long n_symbols, SeededStream& stream) {
    std::vector<std::complex<double>> h;
    std::vector<std::complex<double>> x(cfg.L);
    std::vector<std::uint32_t> sent(cfg.L);
    ComplexMatrix y;
    long long errors = 0;
    long long counted = 0;
    while (counted < n_symbols) {
        detail::fill_cn01(h, cfg.N, stream);
        for (int l = 0; l < cfg.L; ++l) {
            sent[l] = stream.next_index(setup.K);
            x[l] = std::sqrt(setup.constellation.levels[sent[l]]);
        }
        apply_subchannel(h, x, stream, y);
        const auto decided = fem_detect(y, setup.constellation);
        const long long take = std::min<long long>(cfg.L, n_symbols - counted);
        for (long long l = 0; l < take; ++l) {
            if (decided[static_cast<std::size_t>(l)] != sent[static_cast<std::size_t>(l)]) {
                ++errors;
            }
        }
        counted += take;
    }
    return static_cast<double>(errors) / static_cast<double>(n_symbols);
}

// perfect_csi is a test hook that hands the decider the true channel.
inline double estimate_ber_pa(const SystemConfig& cfg, const SchemeSetup& setup,
                              long long n_symbols, SeededStream& stream,
                              bool perfect_csi = false) {
    const double pilot_amp = pa_pilot_amplitude(setup.split);
    const double symbol_amp = pa_data_amplitude(setup.split, cfg.L);
    std::vector<std::complex<double>> h;
    std::vector<int> sent(cfg.L - 1);
    ComplexMatrix y;
    long long errors = 0;
    long long counted = 0;
    while (counted < n_symbols) {
        detail::fill_cn01(h, cfg.N, stream);
        for (auto& sign : sent) sign = stream.next_index(2) == 0 ? 1 : -1;
        const auto x = pa_frame(setup.split, cfg.L, sent);
        apply_subchannel(h, x, stream, y);
        const auto h_hat = perfect_csi ? h : pa_estimate(y.col(0), pilot_amp);
        const long long take = std::min<long long>(cfg.L - 1, n_symbols - counted);
        if (squared_norm(h_hat) == 0.0) {
            errors += take;  // degenerate combining counts as erasure -> error
        } else {
            const auto decided = pa_detect(y, 1, h_hat, symbol_amp);
            for (long long l = 0; l < take; ++l) {
                const int decided_sign = decided[static_cast<std::size_t>(l)] >= 0.0 ? 1 : -1;
                if (decided_sign != sent[static_cast<std::size_t>(l)]) ++errors;
            }
        }
        counted += take;
    }
    return static_cast<double>(errors) / static_cast<double>(n_symbols);
}

inline double estimate_ber(Scheme scheme, const SystemConfig& cfg, const SchemeSetup& setup,
                           long long n_symbols, SeededStream& stream) {
    if (n_symbols < 1) throw std::domain_error("estimate_ber: need at least one symbol");
    switch (scheme) {
        case Scheme::em: return estimate_ber_em(cfg, setup, n_symbols, stream);
        case Scheme::fem: return estimate_ber_fem(cfg, setup, n_symbols, stream);
        case Scheme::pa: return estimate_ber_pa(cfg, setup, n_symbols, stream);
        default: throw std::domain_error("estimate_ber: not a simulated scheme");
    }
}

// Transmitted bits per symbol-period across the band.
inline double nominal_rate(Scheme scheme, int m, int l, int k) {
    if (k < 2) throw std::domain_error("nominal_rate: degenerate constellation");
    const double bits = std::log2(static_cast<double>(k));
    switch (scheme) {
        case Scheme::em: return m * bits / l;
        case Scheme::fem: return m * bits;
        case Scheme::pa: return m * bits * (l - 1.0) / l;
        default: throw std::domain_error("nominal_rate: not a simulated scheme");
    }
}

inline double bsc_eq_rate(double nominal, double ber) {
    return nominal * (1.0 - binary_entropy(ber));
}

namespace detail {

inline std::uint64_t record_stream_id(Scheme scheme, int n) {
    return (static_cast<std::uint64_t>(scheme) << 48) | static_cast<std::uint32_t>(n);
}

inline SweepRecord compute_record(const SweepConfig& sweep, Scheme scheme, int n) {
    const SystemConfig cfg = sweep_point_config(sweep, n);
    const SchemeSetup setup = configure_scheme(scheme, cfg, sweep.mode);
    SeededStream stream(sweep.seed, record_stream_id(scheme, n));
    SweepRecord r;
    r.scheme = scheme;
    r.N = n;
    r.B = cfg.B;
    r.L = cfg.L;
    r.M = setup.M;
    r.K = setup.K;
    r.ber = estimate_ber(scheme, cfg, setup, sweep.symbols_per_point, stream);
    r.nominal_rate = nominal_rate(scheme, setup.M, cfg.L, setup.K);
    r.bsc_eq_rate = bsc_eq_rate(r.nominal_rate, r.ber);
    r.seed = sweep.seed;
    return r;
}

}  // namespace detail

// One record per (scheme, N), in that sort order. Every record owns its own
// counter-based stream, so the result is identical for any worker count.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& sweep, int workers = 0) {
    if (sweep.n_grid.empty()) throw std::domain_error("run_sweep: empty N grid");
    if (!std::is_sorted(sweep.n_grid.begin(), sweep.n_grid.end()) ||
        std::adjacent_find(sweep.n_grid.begin(), sweep.n_grid.end()) != sweep.n_grid.end()) {
        throw std::domain_error("run_sweep: n_grid must be strictly increasing");
    }
    if (sweep.symbols_per_point < 1000) {
        throw std::domain_error("run_sweep: symbols_per_point must be >= 1000");
    }
    std::vector<Scheme> schemes = sweep.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
    if (schemes.empty()) throw std::domain_error("run_sweep: no schemes selected");

    std::vector<std::pair<Scheme, int>> items;
    for (Scheme s : schemes) {
        for (int n : sweep.n_grid) items.emplace_back(s, n);
    }
    std::vector<SweepRecord> records(items.size());

    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min<int>(workers, static_cast<int>(items.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            try {
                records[i] = detail::compute_record(sweep, items[i].first, items[i].second);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

// Reliable-rate scaling exponent per scheme, regressed over the upper half of
// the N grid (the asymptotic regime). Points with a vanished BSC-equivalent
// rate carry no slope information and are skipped.
inline std::map<Scheme, double> empirical_exponents(const std::vector<SweepRecord>& records) {
    std::map<Scheme, std::vector<std::pair<double, double>>> by_scheme;
    for (const auto& r : records) by_scheme[r.scheme].emplace_back(r.N, r.bsc_eq_rate);
    std::map<Scheme, double> slopes;
    for (auto& [scheme, pts] : by_scheme) {
        if (pts.size() < 3) {
            throw std::domain_error("empirical_exponents: need at least 3 grid points per scheme");
        }
        std::sort(pts.begin(), pts.end());
        std::vector<std::pair<double, double>> upper(pts.begin() + pts.size() / 2, pts.end());
        std::erase_if(upper, [](const auto& p) { return !(p.second > 0.0); });
        if (upper.size() < 2) {
            throw std::domain_error("empirical_exponents: too few usable points in upper half");
        }
        slopes[scheme] = loglog_slope(upper);
    }
    return slopes;
}

}  // namespace simo
