#include "robnp/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace robnp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    const std::string last = trim(cur);
    if (!last.empty() || !out.empty()) out.push_back(last);
    return out;
}

bool is_auto(const std::string& v) { return v == "auto"; }

const std::set<std::string> kKnownKeys = {
    "function", "rho", "beta", "L", "value", "coeffs", "scale", "dimension",
    "n", "epsilon", "adversary", "adversary_value", "adversary_magnitude",
    "adversary_mean", "adversary_sd", "benign_sd",
    "estimators", "replicates", "root_seed", "interior_margin", "risk_grid_points"};

const std::set<std::string> kEstimatorSubkeys = {"m", "h", "ell", "kernel", "trunc_L", "trunc_c"};

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config line " + std::to_string(line_no) + ": empty key or value");
        if (kv.count(key))
            throw config_error("config: duplicate key '" + key + "'");
        kv[key] = value;
    }

    for (const auto& [key, value] : kv) {
        const auto dot = key.find('.');
        if (dot == std::string::npos) {
            if (!kKnownKeys.count(key)) throw config_error("config: unknown key '" + key + "'");
        } else {
            if (!kEstimatorSubkeys.count(key.substr(dot + 1)))
                throw config_error("config: unknown key '" + key + "'");
        }
    }

    auto get = [&](const std::string& key, const std::string& fallback) {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };

    ExperimentConfig cfg;
    cfg.d = static_cast<int>(to_int("dimension", get("dimension", "1")));
    cfg.beta = to_double("beta", get("beta", "1"));
    cfg.L = to_double("L", get("L", "1"));

    const std::string fn = get("function", "constant");
    if (fn == "ramp") {
        cfg.f = TestFunction::ramp(to_double("rho", get("rho", "0.2")), cfg.beta, cfg.L);
    } else if (fn == "constant") {
        cfg.f = TestFunction::constant(to_double("value", get("value", "0")), cfg.d);
    } else if (fn == "polynomial") {
        std::vector<double> coeffs;
        for (const auto& c : split_list(get("coeffs", "0,1"))) coeffs.push_back(to_double("coeffs", c));
        cfg.f = TestFunction::polynomial(std::move(coeffs));
    } else if (fn == "peak2d") {
        cfg.f = TestFunction::peak2d(to_double("scale", get("scale", "1")));
    } else {
        throw config_error("config: unknown function '" + fn + "'");
    }

    for (const auto& tok : split_list(get("n", "1024"))) cfg.ns.push_back(to_int("n", tok));
    cfg.epsilon = to_double("epsilon", get("epsilon", "0"));

    const std::string adv = get("adversary", "point_mass");
    if (adv == "point_mass") {
        cfg.adversary = Adversary::point_mass(to_double("adversary_value", get("adversary_value", "0")));
    } else if (adv == "symmetric_bernoulli") {
        cfg.adversary = Adversary::symmetric_bernoulli(
            to_double("adversary_magnitude", get("adversary_magnitude", "100")));
    } else if (adv == "shifted_gaussian") {
        cfg.adversary = Adversary::shifted_gaussian(
            to_double("adversary_mean", get("adversary_mean", "0")),
            to_double("adversary_sd", get("adversary_sd", "1")));
    } else {
        throw config_error("config: unknown adversary '" + adv + "'");
    }
    cfg.benign_sd = to_double("benign_sd", get("benign_sd", "1"));

    cfg.replicates = static_cast<int>(to_int("replicates", get("replicates", "1")));
    cfg.root_seed = static_cast<std::uint64_t>(to_int("root_seed", get("root_seed", "1")));
    const std::string margin = get("interior_margin", "auto");
    if (!is_auto(margin)) cfg.interior_margin = to_double("interior_margin", margin);
    cfg.risk_grid_points = static_cast<int>(to_int("risk_grid_points", get("risk_grid_points", "2000")));

    for (const auto& key : split_list(get("estimators", "lbm"))) {
        EstimatorSpec spec;
        spec.key = key;
        const std::string m = get(key + ".m", "auto");
        if (!is_auto(m)) spec.m = to_int(key + ".m", m);
        const std::string h = get(key + ".h", "auto");
        if (!is_auto(h)) spec.h = to_double(key + ".h", h);
        const std::string ell = get(key + ".ell", "auto");
        if (!is_auto(ell)) spec.ell = static_cast<int>(to_int(key + ".ell", ell));
        spec.kernel = get(key + ".kernel", "box");
        const std::string tl = get(key + ".trunc_L", "auto");
        if (!is_auto(tl)) spec.trunc_L = to_double(key + ".trunc_L", tl);
        spec.trunc_c = to_double(key + ".trunc_c", get(key + ".trunc_c", "3"));
        cfg.estimators.push_back(std::move(spec));
    }

    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    return parse_config(in);
}

void print_default_config(std::ostream& out) {
    out << "# robnp experiment configuration (key = value, '#' comments)\n"
        << "# target function: ramp | constant | polynomial | peak2d\n"
        << "function = constant\n"
        << "rho = 0.2              # ramp knee\n"
        << "beta = 1               # smoothness; also drives the auto hyperparameter formulas\n"
        << "L = 1                  # smoothness constant; idem\n"
        << "value = 0              # constant level\n"
        << "coeffs = 0,1           # polynomial coefficients, ascending degree\n"
        << "scale = 1              # peak2d amplitude\n"
        << "dimension = 1\n"
        << "\n"
        << "# data model\n"
        << "n = 1024               # comma list; each must be p^dimension\n"
        << "epsilon = 0\n"
        << "adversary = point_mass # point_mass | symmetric_bernoulli | shifted_gaussian\n"
        << "adversary_value = 0\n"
        << "adversary_magnitude = 100\n"
        << "adversary_mean = 0\n"
        << "adversary_sd = 1\n"
        << "benign_sd = 1\n"
        << "\n"
        << "# run\n"
        << "estimators = lbm       # comma list of lbm, lbm_ks, lbm_lpr, kernel, t_kernel, lpr\n"
        << "replicates = 1\n"
        << "root_seed = 1\n"
        << "interior_margin = auto # auto: widest margin any kernel estimator needs\n"
        << "risk_grid_points = 2000\n"
        << "\n"
        << "# per-estimator hyperparameters (auto = asymptotic formulas)\n"
        << "lbm.m = auto\n"
        << "lbm_ks.m = auto\n"
        << "lbm_ks.h = auto\n"
        << "lbm_ks.kernel = box\n"
        << "lbm_lpr.m = auto\n"
        << "lbm_lpr.h = auto\n"
        << "lbm_lpr.ell = auto     # auto: floor(beta)\n"
        << "kernel.h = auto\n"
        << "kernel.kernel = box\n"
        << "t_kernel.h = auto\n"
        << "t_kernel.kernel = box\n"
        << "t_kernel.trunc_L = auto # auto: the L above\n"
        << "t_kernel.trunc_c = 3\n"
        << "lpr.h = auto\n"
        << "lpr.ell = auto\n";
}

} // namespace robnp
