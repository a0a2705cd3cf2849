#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robnp/baselines.hpp"
#include "robnp/config.hpp"
#include "robnp/median.hpp"
#include "robnp/report.hpp"
#include "robnp/selftest.hpp"

#include <sstream>

namespace py = pybind11;
using namespace robnp;

namespace {

Predictor wrap_predictor(const py::function& f) {
    return [f](std::span<const double> x) {
        return f(std::vector<double>(x.begin(), x.end())).cast<double>();
    };
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Robust nonparametric regression under epsilon-contamination: "
              "local binning medians with kernel and local-polynomial post-processing";

    py::class_<GridSpec>(m, "GridSpec")
        .def_readonly("p", &GridSpec::p)
        .def_readonly("d", &GridSpec::d)
        .def_readonly("n", &GridSpec::n)
        .def("point", &GridSpec::point, py::arg("index"))
        .def("__repr__", [](const GridSpec& g) {
            std::ostringstream os;
            os << "GridSpec(p=" << g.p << ", d=" << g.d << ", n=" << g.n << ")";
            return os.str();
        });
    m.def("make_grid", &make_grid, py::arg("p"), py::arg("d"));

    m.def(
        "median", [](const std::vector<double>& v) { return median(v); }, py::arg("values"),
        "Lower median (the ceil(s/2)-th smallest element).");

    py::class_<TestFunction>(m, "TestFunction")
        .def_static("ramp", &TestFunction::ramp, py::arg("rho"), py::arg("beta"), py::arg("L"))
        .def_static("constant", &TestFunction::constant, py::arg("value"), py::arg("dim") = 1)
        .def_static("polynomial", &TestFunction::polynomial, py::arg("coeffs"))
        .def_static("peak2d", &TestFunction::peak2d, py::arg("scale"))
        .def_property_readonly("dim", &TestFunction::dim)
        .def("__call__",
             [](const TestFunction& f, const std::vector<double>& x) { return f(x); })
        .def("__repr__", &TestFunction::describe);

    py::class_<HolderSpec>(m, "HolderSpec")
        .def(py::init<double, double>(), py::arg("beta"), py::arg("L"))
        .def_readonly("beta", &HolderSpec::beta)
        .def_readonly("L", &HolderSpec::L);
    m.def("holder_seminorm_estimate", &holder_seminorm_estimate, py::arg("f"), py::arg("spec"),
          py::arg("samples"), py::arg("seed"));

    py::class_<Adversary>(m, "Adversary")
        .def_static("point_mass", &Adversary::point_mass, py::arg("value"))
        .def_static("symmetric_bernoulli", &Adversary::symmetric_bernoulli, py::arg("magnitude"))
        .def_static("shifted_gaussian", &Adversary::shifted_gaussian, py::arg("mean"),
                    py::arg("sd"))
        .def("__repr__", &Adversary::describe);

    py::class_<ContaminationModel>(m, "ContaminationModel")
        .def(py::init<double, Adversary, double>(), py::arg("epsilon"), py::arg("adversary"),
             py::arg("benign_sd") = 1.0)
        .def_readonly("epsilon", &ContaminationModel::epsilon)
        .def_readonly("benign_sd", &ContaminationModel::benign_sd);

    py::class_<Observations>(m, "Observations")
        .def_readonly("grid", &Observations::grid)
        .def_readonly("y", &Observations::y)
        .def_readonly("adversary_mask", &Observations::adversary_mask)
        .def_readonly("seed", &Observations::seed)
        .def("checksum", &Observations::checksum)
        .def("to_csv",
             [](const Observations& obs) {
                 std::ostringstream os;
                 write_observations_csv(obs, os);
                 return os.str();
             })
        .def_static("from_csv", [](const std::string& text) {
            std::istringstream is(text);
            return read_observations_csv(is);
        });

    m.def("sample_observations", &sample_observations, py::arg("f"), py::arg("grid"),
          py::arg("model"), py::arg("seed"));
    m.def("count_adversaries_per_bin", &count_adversaries_per_bin, py::arg("obs"), py::arg("m"));
    m.def("derive_seed", &derive_seed, py::arg("root"), py::arg("a"), py::arg("b"));

    py::class_<BinningSpec>(m, "BinningSpec")
        .def_readonly("m", &BinningSpec::m)
        .def_readonly("d", &BinningSpec::d)
        .def_readonly("s", &BinningSpec::s);
    m.def(
        "bin_index",
        [](const std::vector<double>& x, std::int64_t m) { return bin_index(x, m); },
        py::arg("x"), py::arg("m"));

    py::class_<LbmFit>(m, "LbmFit")
        .def_readonly("binning", &LbmFit::binning)
        .def_readonly("z", &LbmFit::z)
        .def_readonly("s_counts", &LbmFit::s_counts);

    m.def(
        "lbm_fit", [](const Observations& obs, std::int64_t m) { return lbm_fit(obs, m); },
        py::arg("obs"), py::arg("m"));
    m.def(
        "lbm_predict",
        [](const LbmFit& fit, const std::vector<double>& x) { return lbm_predict(fit, x); },
        py::arg("fit"), py::arg("x"));
    m.def("choose_m_holder", &choose_m_holder, py::arg("n"), py::arg("beta"), py::arg("L"),
          py::arg("d"));
    m.def(
        "worst_case_median_bounds",
        [](const std::vector<double>& fixed, std::int64_t s_prime) {
            return worst_case_median_bounds(fixed, s_prime);
        },
        py::arg("fixed"), py::arg("s_prime"),
        "Returns (lower, upper) median extrema over adversarial completions.");

    m.def(
        "kernel_weight",
        [](std::int64_t j, std::int64_t m, double h, double x, const std::string& kernel) {
            return kernel_weight(j, m, h, x, KernelSpec::by_name(kernel));
        },
        py::arg("j"), py::arg("m"), py::arg("h"), py::arg("x"), py::arg("kernel") = "box");
    m.def(
        "ks_predict",
        [](const LbmFit& fit, double h, double x0, const std::string& kernel, double margin) {
            const BandwidthPlan plan(h, fit.binning.m, margin < 0.0 ? h : margin);
            return ks_predict(fit, plan, KernelSpec::by_name(kernel), x0);
        },
        py::arg("fit"), py::arg("h"), py::arg("x0"), py::arg("kernel") = "box",
        py::arg("interior_margin") = -1.0);

    py::class_<PolyBasis>(m, "PolyBasis")
        .def(py::init<int, int>(), py::arg("degree"), py::arg("d"))
        .def_readonly("degree", &PolyBasis::degree)
        .def_readonly("d", &PolyBasis::d)
        .def_readonly("D", &PolyBasis::D);
    m.def(
        "poly_features",
        [](const PolyBasis& b, const std::vector<double>& x, double h,
           const std::vector<double>& z) { return poly_features(b, x, h, z); },
        py::arg("basis"), py::arg("x"), py::arg("h"), py::arg("z"));
    m.def(
        "lpr_predict",
        [](const LbmFit& fit, double h, int ell, const std::vector<double>& x0) {
            return lpr_predict(fit, h, PolyBasis(ell, fit.binning.d), x0);
        },
        py::arg("fit"), py::arg("h"), py::arg("ell"), py::arg("x0"));
    m.def(
        "lpr_weight_l1_norm",
        [](const LbmFit& fit, double h, int ell, const std::vector<double>& x0) {
            return lpr_weight_l1_norm(fit.binning, h, PolyBasis(ell, fit.binning.d), x0);
        },
        py::arg("fit"), py::arg("h"), py::arg("ell"), py::arg("x0"));
    m.def(
        "choose_postprocess_params",
        [](std::int64_t n, double beta, double L, int d) {
            const PostprocessParams p = choose_postprocess_params(n, beta, L, d);
            return std::make_pair(p.m, p.h);
        },
        py::arg("n"), py::arg("beta"), py::arg("L"), py::arg("d"),
        "Returns (m, h) for the post-processing stage.");

    py::class_<TruncationSpec>(m, "TruncationSpec")
        .def(py::init<double, double>(), py::arg("L_bound"), py::arg("c_margin"))
        .def_property_readonly("level", &TruncationSpec::level)
        .def("clamp", &TruncationSpec::clamp, py::arg("y"));
    m.def(
        "direct_kernel_predict",
        [](const Observations& obs, double h, double x0, const std::string& kernel) {
            return direct_kernel_predict(DesignResponses(obs), h, KernelSpec::by_name(kernel), x0);
        },
        py::arg("obs"), py::arg("h"), py::arg("x0"), py::arg("kernel") = "box");
    m.def(
        "truncated_kernel_predict",
        [](const Observations& obs, double h, const TruncationSpec& trunc, double x0,
           const std::string& kernel) {
            return truncated_kernel_predict(DesignResponses(obs), h, KernelSpec::by_name(kernel),
                                            trunc, x0);
        },
        py::arg("obs"), py::arg("h"), py::arg("trunc"), py::arg("x0"), py::arg("kernel") = "box");
    m.def(
        "direct_lpr_predict",
        [](const Observations& obs, double h, int ell, const std::vector<double>& x0) {
            return direct_lpr_predict(DesignResponses(obs), h, PolyBasis(ell, obs.grid.d), x0);
        },
        py::arg("obs"), py::arg("h"), py::arg("ell"), py::arg("x0"));

    m.def(
        "l2_risk",
        [](const py::function& predictor, const TestFunction& f, int d, double c,
           int grid_points) { return l2_risk(wrap_predictor(predictor), f, d, c, grid_points); },
        py::arg("predictor"), py::arg("f"), py::arg("d"), py::arg("c") = 0.0,
        py::arg("grid_points") = 2000);
    m.def("fit_rate", &fit_rate, py::arg("mean_risks"),
          "OLS slope of log(risk) on log(n); returns (slope, stderr).");

    m.def(
        "run_experiment_file",
        [](const std::string& config_path, const std::string& out_dir) {
            const ExperimentConfig cfg = parse_config_file(config_path);
            const RiskReport report = run_experiment(cfg);
            if (!out_dir.empty()) emit_report(report, out_dir);
            py::dict out;
            py::list summary;
            for (const auto& s : report.summary) {
                py::dict row;
                row["estimator"] = s.estimator;
                row["n"] = s.n;
                row["mean"] = s.mean;
                row["stderr"] = s.stderr_mean;
                row["count"] = s.count;
                summary.append(row);
            }
            py::list rates;
            for (const auto& r : report.rates) {
                if (!r.valid) continue;
                py::dict row;
                row["estimator"] = r.estimator;
                row["slope"] = r.slope;
                row["stderr"] = r.stderr_slope;
                rates.append(row);
            }
            out["summary"] = summary;
            out["rates"] = rates;
            out["complete"] = report.complete;
            out["interior_margin"] = report.interior_margin;
            return out;
        },
        py::arg("config_path"), py::arg("out_dir") = "",
        "Run a configured sweep; optionally emit CSV/SVG reports.");

    m.def("run_selftests", []() {
        py::list out;
        for (const auto& r : run_selftests()) {
            py::dict row;
            row["name"] = r.name;
            row["pass"] = r.pass;
            row["detail"] = r.detail;
            out.append(row);
        }
        return out;
    });
}
