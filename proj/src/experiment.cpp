#include "robnp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

namespace robnp {

namespace {

const std::set<std::string> kEstimatorKeys = {"lbm", "lbm_ks", "lbm_lpr",
                                              "kernel", "t_kernel", "lpr"};

std::int64_t points_per_axis(std::int64_t n, int d) {
    const std::int64_t p =
        static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / d)));
    std::int64_t check = 1;
    for (int k = 0; k < d; ++k) check *= p;
    if (check != n)
        throw std::invalid_argument("experiment: n = " + std::to_string(n) +
                                    " is not a perfect d-th power for d = " + std::to_string(d));
    return p;
}

double bandwidth_formula(std::int64_t n, double beta, double L, int d, std::int64_t cells) {
    double h = std::pow(static_cast<double>(n) * L * L, -1.0 / (2.0 * beta + d));
    const double lo = 1.0 / static_cast<double>(cells);
    if (lo >= 0.5) return 0.25;
    return std::clamp(h, std::nextafter(lo, 1.0), std::nextafter(0.5, 0.0));
}

} // namespace

void ExperimentConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (ns.empty()) throw std::invalid_argument("config: need at least one n");
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i] >= ns[i + 1])
            throw std::invalid_argument("config: n values must be strictly increasing");
    for (std::int64_t n : ns) points_per_axis(n, d);
    if (estimators.empty()) throw std::invalid_argument("config: need at least one estimator");
    for (const auto& e : estimators)
        if (!kEstimatorKeys.count(e.key))
            throw std::invalid_argument("config: unknown estimator key '" + e.key + "'");
    if (f.dim() != d) throw std::invalid_argument("config: function dimension != d");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::invalid_argument("config: epsilon must be in [0,1]");
    if (benign_sd <= 0.0) throw std::invalid_argument("config: benign_sd must be positive");
    if (risk_grid_points < 1) throw std::invalid_argument("config: risk_grid_points must be >= 1");
    if (interior_margin && !(*interior_margin >= 0.0 && *interior_margin < 0.5))
        throw std::invalid_argument("config: interior_margin must be in [0, 1/2)");
}

ResolvedEstimator resolve_estimator(const EstimatorSpec& spec, const ExperimentConfig& cfg,
                                    std::int64_t n) {
    const std::int64_t p = points_per_axis(n, cfg.d);
    ResolvedEstimator r;
    r.key = spec.key;
    r.kernel = spec.kernel;
    r.trunc_L = spec.trunc_L.value_or(cfg.L);
    r.trunc_c = spec.trunc_c;
    r.ell = spec.ell.value_or(static_cast<int>(std::floor(cfg.beta)));

    if (spec.key == "lbm") {
        r.m = spec.m.value_or(choose_m_holder(n, cfg.beta, cfg.L, cfg.d));
        r.m = std::clamp<std::int64_t>(r.m, 1, p);
        r.required_margin = 0.0;
    } else if (spec.key == "lbm_ks" || spec.key == "lbm_lpr") {
        const PostprocessParams auto_params = choose_postprocess_params(n, cfg.beta, cfg.L, cfg.d);
        r.m = std::clamp<std::int64_t>(spec.m.value_or(auto_params.m), 1, p);
        r.h = spec.h.value_or(bandwidth_formula(n, cfg.beta, cfg.L, cfg.d, r.m));
        r.required_margin = spec.key == "lbm_ks" ? r.h : 0.0;
    } else { // kernel, t_kernel, lpr on raw responses: one cell per point
        r.m = p;
        r.h = spec.h.value_or(bandwidth_formula(n, cfg.beta, cfg.L, cfg.d, p));
        r.required_margin = spec.key == "lpr" ? 0.0 : r.h;
    }
    return r;
}

Predictor build_predictor(const ResolvedEstimator& est, const Observations& obs) {
    if (est.key == "lbm") {
        auto fit = std::make_shared<LbmFit>(lbm_fit(obs, est.m));
        return [fit](std::span<const double> x) { return lbm_predict(*fit, x); };
    }
    if (est.key == "lbm_ks") {
        auto fit = std::make_shared<LbmFit>(lbm_fit(obs, est.m));
        auto kernel = std::make_shared<KernelSpec>(KernelSpec::by_name(est.kernel));
        const BandwidthPlan plan(est.h, est.m, est.required_margin);
        return [fit, kernel, plan](std::span<const double> x) {
            return ks_predict(*fit, plan, *kernel, x[0]);
        };
    }
    if (est.key == "lbm_lpr") {
        auto fit = std::make_shared<LbmFit>(lbm_fit(obs, est.m));
        const PolyBasis basis(est.ell, obs.grid.d);
        const double h = est.h;
        return [fit, basis, h](std::span<const double> x) {
            return lpr_predict(*fit, h, basis, x);
        };
    }
    if (est.key == "kernel") {
        auto data = std::make_shared<Observations>(obs);
        auto kernel = std::make_shared<KernelSpec>(KernelSpec::by_name(est.kernel));
        const double h = est.h;
        return [data, kernel, h](std::span<const double> x) {
            return direct_kernel_predict(*data, h, *kernel, x[0]);
        };
    }
    if (est.key == "t_kernel") {
        auto data = std::make_shared<Observations>(obs);
        auto kernel = std::make_shared<KernelSpec>(KernelSpec::by_name(est.kernel));
        const TruncationSpec trunc(est.trunc_L, est.trunc_c);
        const double h = est.h;
        return [data, kernel, trunc, h](std::span<const double> x) {
            return truncated_kernel_predict(*data, h, *kernel, trunc, x[0]);
        };
    }
    if (est.key == "lpr") {
        auto data = std::make_shared<Observations>(obs);
        const PolyBasis basis(est.ell, obs.grid.d);
        const double h = est.h;
        return [data, basis, h](std::span<const double> x) {
            return direct_lpr_predict(*data, h, basis, x);
        };
    }
    throw std::invalid_argument("build_predictor: unknown estimator '" + est.key + "'");
}

std::pair<double, double> fit_rate(const std::vector<std::pair<std::int64_t, double>>& mean_risks) {
    if (mean_risks.size() < 3)
        throw std::invalid_argument("fit_rate: need at least 3 (n, risk) pairs");
    std::vector<double> lx, ly;
    for (const auto& [n, risk] : mean_risks) {
        if (!(risk > 0.0)) throw std::invalid_argument("fit_rate: risks must be positive");
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(risk));
    }
    const std::size_t k = lx.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate: degenerate n values");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        rss += r * r;
    }
    const double sigma2 = k > 2 ? rss / static_cast<double>(k - 2) : 0.0;
    return {slope, std::sqrt(sigma2 / sxx)};
}

RiskReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    // One shared evaluation domain: the margin every estimator can serve at
    // every n, so risks are comparable across the whole sweep.
    double margin = cfg.interior_margin.value_or(0.0);
    if (!cfg.interior_margin) {
        for (std::int64_t n : cfg.ns)
            for (const auto& spec : cfg.estimators)
                margin = std::max(margin, resolve_estimator(spec, cfg, n).required_margin);
    }

    RiskReport report;
    report.interior_margin = margin;

    std::set<std::uint64_t> seeds_used;
    for (std::int64_t n : cfg.ns) {
        const std::int64_t p = points_per_axis(n, cfg.d);
        const GridSpec grid = make_grid(p, cfg.d);
        const ContaminationModel model(cfg.epsilon, cfg.adversary, cfg.benign_sd);
        for (int rep = 0; rep < cfg.replicates; ++rep) {
            const std::uint64_t seed =
                derive_seed(cfg.root_seed, static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(rep));
            if (!seeds_used.insert(seed).second)
                throw std::logic_error("run_experiment: child seed collision across the sweep");
            const Observations obs = sample_observations(cfg.f, grid, model, seed);
            const std::uint64_t checksum = obs.checksum();
            for (const auto& spec : cfg.estimators) {
                RiskCell cell;
                cell.estimator = spec.key;
                cell.n = n;
                cell.replicate = rep;
                cell.data_checksum = checksum;
                try {
                    const ResolvedEstimator est = resolve_estimator(spec, cfg, n);
                    const Predictor pred = build_predictor(est, obs);
                    cell.risk = l2_risk(pred, cfg.f, cfg.d, margin, cfg.risk_grid_points);
                    cell.ok = true;
                } catch (const std::exception& e) {
                    cell.ok = false;
                    cell.error = e.what();
                    report.complete = false;
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }

    std::stable_sort(report.cells.begin(), report.cells.end(),
                     [](const RiskCell& a, const RiskCell& b) {
                         if (a.estimator != b.estimator) return a.estimator < b.estimator;
                         if (a.n != b.n) return a.n < b.n;
                         return a.replicate < b.replicate;
                     });

    // Per-estimator, per-n mean and standard error over completed cells.
    for (const auto& spec : cfg.estimators) {
        for (std::int64_t n : cfg.ns) {
            RiskSummary s;
            s.estimator = spec.key;
            s.n = n;
            double sum = 0.0;
            for (const auto& c : report.cells)
                if (c.ok && c.estimator == spec.key && c.n == n) {
                    sum += c.risk;
                    ++s.count;
                }
            if (s.count > 0) {
                s.mean = sum / s.count;
                double ss = 0.0;
                for (const auto& c : report.cells)
                    if (c.ok && c.estimator == spec.key && c.n == n)
                        ss += (c.risk - s.mean) * (c.risk - s.mean);
                s.stderr_mean = s.count > 1
                                    ? std::sqrt(ss / (s.count - 1) / s.count)
                                    : 0.0;
            }
            report.summary.push_back(std::move(s));
        }
    }
    std::stable_sort(report.summary.begin(), report.summary.end(),
                     [](const RiskSummary& a, const RiskSummary& b) {
                         if (a.estimator != b.estimator) return a.estimator < b.estimator;
                         return a.n < b.n;
                     });

    // Log-log slope per estimator when at least three n values completed.
    std::set<std::string> keys;
    for (const auto& spec : cfg.estimators) keys.insert(spec.key);
    for (const auto& key : keys) {
        RateFit fit;
        fit.estimator = key;
        std::vector<std::pair<std::int64_t, double>> pairs;
        for (const auto& s : report.summary)
            if (s.estimator == key && s.count > 0 && s.mean > 0.0)
                pairs.emplace_back(s.n, s.mean);
        if (pairs.size() >= 3) {
            const auto [slope, se] = fit_rate(pairs);
            fit.slope = slope;
            fit.stderr_slope = se;
            fit.valid = true;
        } else {
            fit.note = "needs >= 3 n values";
        }
        report.rates.push_back(std::move(fit));
    }
    return report;
}

} // namespace robnp
