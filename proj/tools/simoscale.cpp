// Command-line front end: sweep reproduction, capacity-bound evaluation,
// exponent prediction and SVG chart emission.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "simo/simo.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct SweepCli {
    double eps = 0.0;
    double tau = 0.0;
    int n_min = 16;
    int n_max = 4096;
    int points = 9;
    int symbols = 10000;
    double power = 2.0;
    std::uint64_t seed = 0;
    std::string schemes = "em,fem,pa";
    std::string mode = "all-subcarriers";
    std::string out = "sweep.csv";
    std::string config_path;
};

int run_sweep_cmd(const SweepCli& cli, bool eps_given, bool tau_given) {
    simo::SweepConfig cfg;
    if (!cli.config_path.empty()) {
        std::ifstream in(cli.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << cli.config_path << "\n";
            return kExitRuntime;
        }
        cfg = simo::parse_sweep_config(in);
    }
    if (eps_given || cli.config_path.empty()) cfg.eps = cli.eps;
    if (tau_given || cli.config_path.empty()) cfg.tau = cli.tau;
    if (cfg.n_grid.empty() || cli.config_path.empty()) {
        cfg.n_grid = simo::make_geometric_grid(cli.n_min, cli.n_max, cli.points);
    }
    if (cli.config_path.empty()) {
        cfg.symbols_per_point = cli.symbols;
        cfg.P = cli.power;
        cfg.seed = cli.seed;
        cfg.mode = simo::selection_mode_from_string(cli.mode);
        cfg.schemes.clear();
        for (auto name : simo::detail::split(cli.schemes, ',')) {
            cfg.schemes.push_back(simo::scheme_from_string(simo::detail::trim(name)));
        }
    }
    const auto records = simo::run_sweep(cfg);
    simo::write_records_csv(cli.out, records);
    std::cout << "wrote " << records.size() << " records to " << cli.out << "\n";
    if (cfg.n_grid.size() >= 3) {
        const auto slopes = simo::empirical_exponents(records);
        for (const auto& [scheme, slope] : slopes) {
            std::cout << "measured exponent " << simo::to_string(scheme) << " " << slope
                      << "\n";
        }
    }
    return 0;
}

int run_bounds_cmd(long long n, long long l, double p, long long b, double eps,
                   bool eps_given, const std::string& csv_path) {
    if (eps_given) b = simo::ceil_power(static_cast<int>(n), eps);
    const simo::BoundReport r = simo::evaluate_bounds(n, l, p, b);
    std::cout << "a0 = " << r.a0 << "\n";
    std::cout << "sup_phi = " << r.sup_phi << " nats\n";
    std::cout << "cs_upper = " << r.cs_upper << " bits/symbol-period\n";
    std::cout << "m_star = " << r.m_star << "\n";
    std::cout << "bcrit_lo = " << r.bcrit_lo << "\n";
    std::cout << "bcrit_hi = " << r.bcrit_hi << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open for writing: " << csv_path << "\n";
            return kExitRuntime;
        }
        out << "N,L,P,B,a0,sup_phi,cs_upper,m_star,bcrit_lo,bcrit_hi\n"
            << n << ',' << l << ',' << p << ',' << b << ',' << r.a0 << ',' << r.sup_phi << ','
            << r.cs_upper << ',' << r.m_star << ',' << r.bcrit_lo << ',' << r.bcrit_hi << '\n';
    }
    return 0;
}

int run_predict_cmd(double eps, double tau) {
    using simo::Scheme;
    for (Scheme s : {Scheme::coherent, Scheme::noncoherent, Scheme::pa, Scheme::em,
                     Scheme::oed, Scheme::fem}) {
        const auto p = simo::predicted_exponent(s, eps, tau);
        std::cout << simo::to_string(s) << " " << p.exponent << "\n";
    }
    return 0;
}

int run_plot_cmd(const std::string& in_path, const std::string& metric,
                 const std::string& out_path, int symbols) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open: " << in_path << "\n";
        return kExitUsage;
    }
    std::vector<simo::SweepRecord> records;
    try {
        records = simo::records_from_csv(in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (records.empty()) {
        std::cerr << "error: no records in " << in_path << "\n";
        return kExitUsage;
    }

    const double ber_floor = 1.0 / (2.0 * symbols);
    std::map<simo::Scheme, simo::ChartSeries> by_scheme;
    for (const auto& r : records) {
        double y = 0.0;
        if (metric == "ber") {
            y = r.ber > 0.0 ? r.ber : ber_floor;
        } else if (metric == "nominal_rate") {
            y = r.nominal_rate;
        } else {
            y = r.bsc_eq_rate;
        }
        auto& series = by_scheme[r.scheme];
        series.label = simo::to_string(r.scheme);
        series.points.push_back({static_cast<double>(r.N), y});
    }
    std::vector<simo::ChartSeries> series;
    for (auto& [scheme, s] : by_scheme) {
        std::sort(s.points.begin(), s.points.end());
        series.push_back(std::move(s));
    }

    simo::ChartOptions opt;
    opt.x_label = "receive antennas N";
    opt.y_label = metric == "ber" ? "bit error rate"
                                  : metric + " (bits per symbol-period)";
    opt.title = metric + " vs N";
    opt.log_y = metric == "ber";
    opt.log_x = metric != "ber";
    if (metric == "ber") {
        opt.note = "BER = 0 points drawn at the Monte Carlo floor 1/(2*symbols) = " +
                   simo::detail::format_double(ber_floor);
    }
    const std::string svg = simo::render_line_chart(opt, series);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open for writing: " << out_path << "\n";
        return kExitRuntime;
    }
    out << svg;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo sweeps and capacity bounds for the wideband SIMO "
                 "Rayleigh block-fading channel"};
    app.require_subcommand(1);

    SweepCli sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "run BER/rate sweeps over an N grid");
    auto* eps_opt = sweep_cmd->add_option("--eps", sweep.eps, "bandwidth exponent")
                        ->check(CLI::NonNegativeNumber);
    auto* tau_opt = sweep_cmd->add_option("--tau", sweep.tau, "block-length exponent")
                        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--nmin", sweep.n_min, "smallest N")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--nmax", sweep.n_max, "largest N")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--points", sweep.points, "grid points")->check(CLI::Range(2, 1000));
    sweep_cmd->add_option("--symbols", sweep.symbols, "symbols per grid point")
        ->check(CLI::Range(1000, 100000000));
    sweep_cmd->add_option("--power", sweep.power, "normalized average power P")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep.seed, "master seed");
    sweep_cmd->add_option("--schemes", sweep.schemes, "comma-separated subset of em,fem,pa");
    sweep_cmd->add_option("--mode", sweep.mode, "subchannel selection")
        ->check(CLI::IsMember({"theoretical", "all-subcarriers"}));
    sweep_cmd->add_option("--out", sweep.out, "output CSV path");
    sweep_cmd->add_option("--config", sweep.config_path,
                          "key = value sweep configuration file (flags win)");

    long long bn = 100, bl = 10, bb = 1;
    double bp = 2.0, beps = 0.0;
    std::string bounds_csv;
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate capacity bounds at one point");
    bounds_cmd->add_option("--n", bn, "receive antennas")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--l", bl, "coherence block length")
        ->required()
        ->check(CLI::Range(2LL, 1LL << 40));
    bounds_cmd->add_option("--p", bp, "normalized average power")
        ->required()
        ->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--b", bb, "subcarrier count for the M search")
        ->check(CLI::PositiveNumber);
    auto* bounds_eps = bounds_cmd->add_option("--eps", beps, "derive B = ceil(N^eps)")
                           ->check(CLI::NonNegativeNumber);
    bounds_cmd->add_option("--csv", bounds_csv, "also write the report as CSV");

    double peps = 0.0, ptau = 0.0;
    auto* predict_cmd = app.add_subcommand("predict", "print predicted scaling exponents");
    predict_cmd->add_option("--eps", peps, "bandwidth exponent")
        ->required()
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--tau", ptau, "block-length exponent")
        ->required()
        ->check(CLI::NonNegativeNumber);

    std::string plot_in, plot_metric, plot_out = "chart.svg";
    int plot_symbols = 10000;
    auto* plot_cmd = app.add_subcommand("plot", "render a sweep CSV as an SVG chart");
    plot_cmd->add_option("--in", plot_in, "results CSV")->required();
    plot_cmd->add_option("--metric", plot_metric, "column to plot")
        ->required()
        ->check(CLI::IsMember({"ber", "nominal_rate", "bsc_eq_rate"}));
    plot_cmd->add_option("--out", plot_out, "output SVG path");
    plot_cmd->add_option("--symbols", plot_symbols, "symbols per point, sets the BER floor")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep_cmd->parsed()) {
            if (sweep.config_path.empty() && (eps_opt->count() == 0 || tau_opt->count() == 0)) {
                std::cerr << "error: sweep requires --eps and --tau (or --config)\n"
                          << sweep_cmd->help();
                return kExitUsage;
            }
            return run_sweep_cmd(sweep, eps_opt->count() > 0, tau_opt->count() > 0);
        }
        if (bounds_cmd->parsed()) {
            return run_bounds_cmd(bn, bl, bp, bb, beps, bounds_eps->count() > 0, bounds_csv);
        }
        if (predict_cmd->parsed()) return run_predict_cmd(peps, ptau);
        if (plot_cmd->parsed()) {
            return run_plot_cmd(plot_in, plot_metric, plot_out, plot_symbols);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
