#include "robnp/contamination.hpp"

#include "robnp/binning.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace robnp {

Adversary Adversary::point_mass(double value) {
    Adversary a;
    a.kind_ = Kind::point_mass;
    a.value_ = value;
    return a;
}

Adversary Adversary::symmetric_bernoulli(double magnitude) {
    Adversary a;
    a.kind_ = Kind::symmetric_bernoulli;
    a.magnitude_ = magnitude;
    return a;
}

Adversary Adversary::shifted_gaussian(double mean, double sd) {
    if (sd <= 0.0) throw std::invalid_argument("shifted_gaussian: sd must be positive");
    Adversary a;
    a.kind_ = Kind::shifted_gaussian;
    a.mean_ = mean;
    a.sd_ = sd;
    return a;
}

Adversary Adversary::custom(std::string id, Sampler sampler) {
    if (!sampler) throw std::invalid_argument("custom adversary: sampler must be callable");
    Adversary a;
    a.kind_ = Kind::custom;
    a.id_ = std::move(id);
    a.sampler_ = std::move(sampler);
    return a;
}

double Adversary::sample(std::span<const double> x, Rng& rng) const {
    switch (kind_) {
    case Kind::point_mass:
        return value_;
    case Kind::symmetric_bernoulli:
        return rng.uniform01() < 0.5 ? magnitude_ : -magnitude_;
    case Kind::shifted_gaussian:
        return rng.normal(mean_, sd_);
    case Kind::custom:
        return sampler_(x, rng);
    }
    throw std::logic_error("Adversary: unknown kind");
}

std::string Adversary::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::point_mass: os << "point_mass(" << value_ << ")"; break;
    case Kind::symmetric_bernoulli: os << "symmetric_bernoulli(" << magnitude_ << ")"; break;
    case Kind::shifted_gaussian: os << "shifted_gaussian(" << mean_ << "," << sd_ << ")"; break;
    case Kind::custom: os << "custom(" << id_ << ")"; break;
    }
    return os.str();
}

ContaminationModel::ContaminationModel(double epsilon_, Adversary adversary_, double benign_sd_)
    : epsilon(epsilon_), adversary(std::move(adversary_)), benign_sd(benign_sd_) {
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::invalid_argument("ContaminationModel: epsilon must be in [0,1]");
    if (benign_sd <= 0.0)
        throw std::invalid_argument("ContaminationModel: benign_sd must be positive");
}

std::uint64_t Observations::checksum() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : y) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffULL;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

Observations sample_observations(const TestFunction& f, const GridSpec& grid,
                                 const ContaminationModel& model, std::uint64_t seed) {
    if (f.dim() != grid.d)
        throw std::invalid_argument("sample_observations: function/grid dimension mismatch");
    Observations obs;
    obs.grid = grid;
    obs.seed = seed;
    obs.epsilon = model.epsilon;
    obs.benign_sd = model.benign_sd;
    obs.adversary_desc = model.adversary.describe();
    obs.y.resize(static_cast<std::size_t>(grid.n));
    obs.adversary_mask.assign(static_cast<std::size_t>(grid.n), false);

    Rng rng(seed);
    for (std::int64_t r = 0; r < grid.n; ++r) {
        const std::vector<double> x = grid.point(r);
        const bool corrupt = rng.uniform01() < model.epsilon;
        if (corrupt) {
            obs.y[static_cast<std::size_t>(r)] = model.adversary.sample(x, rng);
            obs.adversary_mask[static_cast<std::size_t>(r)] = true;
        } else {
            obs.y[static_cast<std::size_t>(r)] = f(x) + rng.normal(0.0, model.benign_sd);
        }
    }
    return obs;
}

std::vector<std::int64_t> count_adversaries_per_bin(const Observations& obs, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("count_adversaries_per_bin: m must be >= 1");
    std::int64_t bins = 1;
    for (int k = 0; k < obs.grid.d; ++k) bins *= m;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
    for (std::int64_t r = 0; r < obs.grid.n; ++r) {
        if (obs.adversary_mask[static_cast<std::size_t>(r)])
            ++counts[static_cast<std::size_t>(design_flat_bin(obs.grid, r, m))];
    }
    return counts;
}

namespace {

void format_double(std::ostream& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

} // namespace

void write_observations_csv(const Observations& obs, std::ostream& out) {
    out << "# robnp-observations seed=" << obs.seed << " epsilon=";
    format_double(out, obs.epsilon);
    out << " benign_sd=";
    format_double(out, obs.benign_sd);
    out << " adversary=" << obs.adversary_desc << " p=" << obs.grid.p << " d=" << obs.grid.d << "\n";
    out << "index";
    for (int k = 1; k <= obs.grid.d; ++k) out << ",x_" << k;
    out << ",y,adversary\n";
    for (std::int64_t r = 0; r < obs.grid.n; ++r) {
        out << (r + 1);
        for (double c : obs.grid.point(r)) {
            out << ',';
            format_double(out, c);
        }
        out << ',';
        format_double(out, obs.y[static_cast<std::size_t>(r)]);
        out << ',' << (obs.adversary_mask[static_cast<std::size_t>(r)] ? 1 : 0) << "\n";
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw std::runtime_error("observations csv: bad number '" + s + "'");
    return v;
}

// Pulls "key=value" out of the header comment; empty string when absent.
std::string comment_field(const std::string& comment, const std::string& key) {
    const std::string needle = key + "=";
    const auto pos = comment.find(needle);
    if (pos == std::string::npos) return {};
    auto end = comment.find(' ', pos);
    if (end == std::string::npos) end = comment.size();
    return comment.substr(pos + needle.size(), end - pos - needle.size());
}

} // namespace

Observations read_observations_csv(std::istream& in) {
    std::string line;
    std::string comment;
    // Comment lines precede the header.
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            comment += line;
            continue;
        }
        break;
    }
    if (line.empty() || line.rfind("index", 0) != 0)
        throw std::runtime_error("observations csv: missing header row");
    const auto header = split_csv_line(line);
    if (header.size() < 4)
        throw std::runtime_error("observations csv: header must be index,x_1..x_d,y,adversary");
    const int d = static_cast<int>(header.size()) - 3;

    std::vector<double> ys;
    std::vector<bool> mask;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("observations csv: ragged row");
        ys.push_back(parse_double(cells[cells.size() - 2]));
        mask.push_back(cells.back() == "1");
    }

    std::int64_t p = 0;
    const std::string p_str = comment_field(comment, "p");
    if (!p_str.empty()) {
        p = std::stoll(p_str);
    } else {
        p = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(ys.size()), 1.0 / d)));
    }
    const GridSpec grid = make_grid(p, d);
    if (grid.n != static_cast<std::int64_t>(ys.size()))
        throw std::runtime_error("observations csv: row count is not p^d");

    Observations obs;
    obs.grid = grid;
    obs.y = std::move(ys);
    obs.adversary_mask = std::move(mask);
    const std::string seed_str = comment_field(comment, "seed");
    if (!seed_str.empty()) obs.seed = std::stoull(seed_str);
    const std::string eps_str = comment_field(comment, "epsilon");
    if (!eps_str.empty()) obs.epsilon = parse_double(eps_str);
    const std::string sd_str = comment_field(comment, "benign_sd");
    if (!sd_str.empty()) obs.benign_sd = parse_double(sd_str);
    obs.adversary_desc = comment_field(comment, "adversary");
    return obs;
}

} // namespace robnp
