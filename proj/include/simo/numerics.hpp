#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>

namespace simo {

// Binary entropy in bits, H(0) = H(1) = 0.
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("binary_entropy: p outside [0,1]");
    }
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Bisection on a sign change; halves the bracket until its width is <= tol
// and returns the midpoint.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("bisect_root: empty interval");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    }
    for (int it = 0; it < 2000 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Least-squares slope of log y against log x.
inline double loglog_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw std::domain_error("loglog_slope: need at least 2 points");
    double mean_lx = 0.0, mean_ly = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0)) {
            throw std::domain_error("loglog_slope: coordinates must be positive");
        }
        mean_lx += std::log(x);
        mean_ly += std::log(y);
    }
    mean_lx /= static_cast<double>(points.size());
    mean_ly /= static_cast<double>(points.size());
    double cov = 0.0, var = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mean_lx;
        cov += dx * (std::log(y) - mean_ly);
        var += dx * dx;
    }
    if (var == 0.0) throw std::domain_error("loglog_slope: degenerate abscissa");
    return cov / var;
}

// Deterministic fixed-tree summation; also tames rounding on long series.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_mean(std::span<const double> xs) {
    if (xs.empty()) throw std::domain_error("pairwise_mean: empty input");
    return pairwise_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace simo
