#include "robnp/config.hpp"
#include "robnp/report.hpp"
#include "robnp/selftest.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitEstimator = 2;
constexpr int kExitIo = 3;

struct EstimateOptions {
    std::string data_path;
    std::string estimator;
    std::string query_path;
    std::string out_path;
    std::optional<std::int64_t> m;
    std::optional<double> h;
    std::optional<int> ell;
    std::string kernel = "box";
    std::optional<double> trunc_L;
    double trunc_c = 3.0;
};

std::vector<std::vector<double>> read_query_points(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open query file '" + path + "'");
    std::vector<std::vector<double>> points;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) { // header row
                first = false;
                continue;
            }
            throw std::runtime_error("query file: non-numeric row '" + line + "'");
        }
        first = false;
        if (static_cast<int>(row.size()) != d)
            throw std::runtime_error("query file: row has " + std::to_string(row.size()) +
                                     " coordinates, expected " + std::to_string(d));
        points.push_back(std::move(row));
    }
    return points;
}

int run_estimate(const EstimateOptions& opt) {
    robnp::Observations obs;
    {
        std::ifstream in(opt.data_path);
        if (!in) {
            std::cerr << "error: cannot open data file '" << opt.data_path << "'\n";
            return kExitIo;
        }
        try {
            obs = robnp::read_observations_csv(in);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitConfig;
        }
    }

    robnp::ExperimentConfig cfg;
    cfg.d = obs.grid.d;
    cfg.ns = {obs.grid.n};
    cfg.f = robnp::TestFunction::constant(0.0, obs.grid.d);

    robnp::EstimatorSpec spec;
    spec.key = opt.estimator;
    spec.m = opt.m;
    spec.h = opt.h;
    spec.ell = opt.ell;
    spec.kernel = opt.kernel;
    spec.trunc_L = opt.trunc_L;
    spec.trunc_c = opt.trunc_c;

    std::vector<std::vector<double>> queries;
    robnp::ResolvedEstimator est;
    try {
        est = robnp::resolve_estimator(spec, cfg, obs.grid.n);
        queries = read_query_points(opt.query_path, obs.grid.d);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::ostringstream body;
    try {
        const robnp::Predictor pred = robnp::build_predictor(est, obs);
        for (int k = 1; k <= obs.grid.d; ++k) body << (k > 1 ? "," : "") << "x_" << k;
        body << ",prediction\n";
        char buf[64];
        for (const auto& q : queries) {
            for (std::size_t k = 0; k < q.size(); ++k) {
                const auto res = std::to_chars(buf, buf + sizeof(buf), q[k]);
                if (k) body << ',';
                body.write(buf, res.ptr - buf);
            }
            const double v = pred(q);
            const auto res = std::to_chars(buf, buf + sizeof(buf), v);
            body << ',';
            body.write(buf, res.ptr - buf);
            body << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "estimator failure: " << e.what() << "\n";
        return kExitEstimator;
    }

    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << opt.out_path << "'\n";
        return kExitIo;
    }
    out << body.str();
    out.flush();
    if (!out) {
        std::cerr << "error: write failed for '" << opt.out_path << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& out_dir, bool require_rate) {
    robnp::ExperimentConfig cfg;
    try {
        cfg = robnp::parse_config_file(config_path);
        if (require_rate && cfg.ns.size() < 3)
            throw robnp::config_error("rate: need at least 3 n values for slope fitting");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    robnp::RiskReport report;
    try {
        report = robnp::run_experiment(cfg);
    } catch (const std::exception& e) {
        std::cerr << "estimator failure: " << e.what() << "\n";
        return kExitEstimator;
    }

    try {
        robnp::emit_report(report, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }

    for (const auto& s : report.summary) {
        if (s.count == 0) continue;
        std::cout << s.estimator << " n=" << s.n << " mean_risk=" << s.mean
                  << " stderr=" << s.stderr_mean << "\n";
    }
    for (const auto& r : report.rates) {
        if (r.valid)
            std::cout << r.estimator << " slope=" << r.slope << " stderr=" << r.stderr_slope
                      << "\n";
        else if (require_rate)
            std::cout << r.estimator << " slope unavailable (" << r.note << ")\n";
    }
    if (!report.complete) {
        std::cerr << "warning: some cells failed; see risks.csv for gaps\n";
        for (const auto& c : report.cells)
            if (!c.ok)
                std::cerr << "  " << c.estimator << " n=" << c.n << " rep=" << c.replicate
                          << ": " << c.error << "\n";
        return kExitEstimator;
    }
    return kExitOk;
}

int run_selftest_cmd() {
    const auto results = robnp::run_selftests();
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
        all = all && r.pass;
    }
    return all ? kExitOk : kExitEstimator;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust nonparametric regression under contamination"};
    app.require_subcommand(0, 1);

    bool print_config = false;
    app.add_flag("--print-config", print_config, "print the config-file schema with defaults");

    std::string sim_config, sim_out;
    auto* simulate = app.add_subcommand("simulate", "run a configured experiment sweep");
    simulate->add_option("--config", sim_config, "experiment config file")->required();
    simulate->add_option("--out", sim_out, "output directory")->required();

    std::string rate_config, rate_out;
    auto* rate = app.add_subcommand("rate", "run a sweep and fit log-log risk slopes");
    rate->add_option("--config", rate_config, "experiment config file")->required();
    rate->add_option("--out", rate_out, "output directory")->required();

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "fit one estimator on a CSV data set");
    estimate->set_help_flag("--help", "print help"); // keep --h free for the bandwidth
    estimate->add_option("--data", est.data_path, "observations CSV")->required();
    estimate->add_option("--estimator", est.estimator, "lbm|lbm_ks|lbm_lpr|kernel|t_kernel|lpr")
        ->required();
    estimate->add_option("--query", est.query_path, "CSV of query points")->required();
    estimate->add_option("--out", est.out_path, "output CSV")->required();
    std::int64_t est_m = -1;
    double est_h = -1.0;
    int est_ell = -1;
    double est_trunc_L = -1.0;
    estimate->add_option("--m", est_m, "bins per axis (default: formula)");
    estimate->add_option("--h", est_h, "bandwidth (default: formula)");
    estimate->add_option("--ell", est_ell, "polynomial degree (default: floor(beta)=1)");
    estimate->add_option("--kernel", est.kernel, "box|triangular|epanechnikov");
    estimate->add_option("--trunc-L", est_trunc_L, "truncation sup-norm bound");
    estimate->add_option("--trunc-c", est.trunc_c, "truncation margin (> 1)");

    auto* selftest = app.add_subcommand("selftest", "run the built-in property-oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (print_config) {
        robnp::print_default_config(std::cout);
        return kExitOk;
    }
    if (simulate->parsed()) return run_sweep(sim_config, sim_out, false);
    if (rate->parsed()) return run_sweep(rate_config, rate_out, true);
    if (estimate->parsed()) {
        if (est_m >= 0) est.m = est_m;
        if (est_h >= 0) est.h = est_h;
        if (est_ell >= 0) est.ell = est_ell;
        if (est_trunc_L >= 0) est.trunc_L = est_trunc_L;
        return run_estimate(est);
    }
    if (selftest->parsed()) return run_selftest_cmd();

    std::cout << app.help();
    return kExitOk;
}
