#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "simo/harness.hpp"

namespace simo {

inline constexpr std::string_view kRecordsCsvHeader =
    "scheme,N,B,L,M,K,ber,nominal_rate,bsc_eq_rate,seed";

namespace detail {

// Shortest decimal form that round-trips.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("bad floating-point field: " + std::string(s));
    }
    return v;
}

template <class Int>
Int parse_int(std::string_view s) {
    Int v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("bad integer field: " + std::string(s));
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace detail

inline std::string records_to_csv(const std::vector<SweepRecord>& records) {
    std::string out{kRecordsCsvHeader};
    out += '\n';
    for (const auto& r : records) {
        out += to_string(r.scheme);
        out += ',';
        out += std::to_string(r.N) + ',' + std::to_string(r.B) + ',' + std::to_string(r.L) +
               ',' + std::to_string(r.M) + ',' + std::to_string(r.K) + ',';
        out += detail::format_double(r.ber) + ',' + detail::format_double(r.nominal_rate) +
               ',' + detail::format_double(r.bsc_eq_rate) + ',' + std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

inline std::vector<SweepRecord> records_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != kRecordsCsvHeader) {
        throw std::runtime_error("results CSV: missing or malformed header");
    }
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        const std::string_view trimmed = detail::trim(line);
        if (trimmed.empty()) continue;
        const auto fields = detail::split(trimmed, ',');
        if (fields.size() != 10) throw std::runtime_error("results CSV: bad row: " + line);
        SweepRecord r;
        r.scheme = scheme_from_string(fields[0]);
        r.N = detail::parse_int<int>(fields[1]);
        r.B = detail::parse_int<int>(fields[2]);
        r.L = detail::parse_int<int>(fields[3]);
        r.M = detail::parse_int<int>(fields[4]);
        r.K = detail::parse_int<int>(fields[5]);
        r.ber = detail::parse_double(fields[6]);
        r.nominal_rate = detail::parse_double(fields[7]);
        r.bsc_eq_rate = detail::parse_double(fields[8]);
        r.seed = detail::parse_int<std::uint64_t>(fields[9]);
        records.push_back(r);
    }
    return records;
}

inline void write_records_csv(const std::string& path, const std::vector<SweepRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << records_to_csv(records);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::vector<SweepRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return records_from_csv(in);
}

// Flat `key = value` sweep configuration, keys named after the SweepConfig
// fields; n_grid and schemes are comma-separated lists.
inline SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = detail::trim(line);
        if (s.empty() || s.front() == '#') continue;
        const std::size_t eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw std::runtime_error("sweep config line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string_view key = detail::trim(s.substr(0, eq));
        const std::string_view value = detail::trim(s.substr(eq + 1));
        if (key == "eps") {
            cfg.eps = detail::parse_double(value);
        } else if (key == "tau") {
            cfg.tau = detail::parse_double(value);
        } else if (key == "n_grid") {
            cfg.n_grid.clear();
            for (auto f : detail::split(value, ',')) {
                cfg.n_grid.push_back(detail::parse_int<int>(detail::trim(f)));
            }
        } else if (key == "symbols_per_point") {
            cfg.symbols_per_point = detail::parse_int<int>(value);
        } else if (key == "P") {
            cfg.P = detail::parse_double(value);
        } else if (key == "seed") {
            cfg.seed = detail::parse_int<std::uint64_t>(value);
        } else if (key == "schemes") {
            cfg.schemes.clear();
            for (auto f : detail::split(value, ',')) {
                cfg.schemes.push_back(scheme_from_string(detail::trim(f)));
            }
        } else if (key == "mode") {
            cfg.mode = selection_mode_from_string(value);
        } else {
            throw std::runtime_error("sweep config: unknown key: " + std::string(key));
        }
    }
    return cfg;
}

inline SweepConfig parse_sweep_config(const std::string& text) {
    std::istringstream in(text);
    return parse_sweep_config(in);
}

inline std::string format_sweep_config(const SweepConfig& cfg) {
    std::ostringstream out;
    out << "eps = " << detail::format_double(cfg.eps) << '\n';
    out << "tau = " << detail::format_double(cfg.tau) << '\n';
    out << "n_grid = ";
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        if (i > 0) out << ',';
        out << cfg.n_grid[i];
    }
    out << '\n';
    out << "symbols_per_point = " << cfg.symbols_per_point << '\n';
    out << "P = " << detail::format_double(cfg.P) << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "schemes = ";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
        if (i > 0) out << ',';
        out << to_string(cfg.schemes[i]);
    }
    out << '\n';
    out << "mode = " << to_string(cfg.mode) << '\n';
    return out.str();
}

}  // namespace simo
