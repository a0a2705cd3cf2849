#include "robnp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace robnp {

namespace {

void put_double(std::ostream& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

// Fixed two-decimal pixel coordinates keep the SVG byte-stable.
std::string px(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

void write_risks_csv(const RiskReport& report, std::ostream& out) {
    out << "estimator,n,replicate,risk\n";
    for (const auto& c : report.cells) {
        out << c.estimator << ',' << c.n << ',' << c.replicate << ',';
        if (c.ok) put_double(out, c.risk);
        out << "\n";
    }
}

void write_summary_csv(const RiskReport& report, std::ostream& out) {
    out << "estimator,n,mean,stderr\n";
    for (const auto& s : report.summary) {
        out << s.estimator << ',' << s.n << ',';
        if (s.count > 0) {
            put_double(out, s.mean);
            out << ',';
            put_double(out, s.stderr_mean);
        } else {
            out << ',';
        }
        out << "\n";
    }
}

void write_rates_csv(const RiskReport& report, std::ostream& out) {
    out << "estimator,slope,stderr\n";
    for (const auto& r : report.rates) {
        out << r.estimator << ',';
        if (r.valid) {
            put_double(out, r.slope);
            out << ',';
            put_double(out, r.stderr_slope);
        } else {
            out << ',';
        }
        out << "\n";
    }
}

void write_risk_svg(const RiskReport& report, std::ostream& out) {
    const double width = 640.0, height = 440.0;
    const double left = 70.0, right = 610.0, top = 30.0, bottom = 390.0;

    // Series points: per estimator, (log10 n, log10 mean risk).
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double min_x = 0.0, max_x = 1.0, min_y = -1.0, max_y = 0.0;
    bool have_data = false;
    for (const auto& s : report.summary) {
        if (s.count <= 0 || !(s.mean > 0.0)) continue;
        const double lx = std::log10(static_cast<double>(s.n));
        const double ly = std::log10(s.mean);
        if (!have_data) {
            min_x = max_x = lx;
            min_y = max_y = ly;
            have_data = true;
        } else {
            min_x = std::min(min_x, lx);
            max_x = std::max(max_x, lx);
            min_y = std::min(min_y, ly);
            max_y = std::max(max_y, ly);
        }
        series[s.estimator].emplace_back(lx, ly);
    }
    if (max_x - min_x < 1e-9) max_x = min_x + 1.0;
    if (max_y - min_y < 1e-9) max_y = min_y + 1.0;

    auto sx = [&](double lx) { return left + (lx - min_x) / (max_x - min_x) * (right - left); };
    auto sy = [&](double ly) { return bottom - (ly - min_y) / (max_y - min_y) * (bottom - top); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << px((left + right) / 2) << "\" y=\"18\" font-size=\"14\" "
           "text-anchor=\"middle\" font-family=\"sans-serif\">mean L2 risk vs n "
           "(log-log)</text>\n";

    // Axes box.
    out << "<polyline points=\"" << px(left) << "," << px(top) << " " << px(left) << ","
        << px(bottom) << " " << px(right) << "," << px(bottom)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Decade ticks.
    for (int e = static_cast<int>(std::ceil(min_y)); e <= static_cast<int>(std::floor(max_y)); ++e) {
        const double y = sy(e);
        out << "<line x1=\"" << px(left - 4) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left)
            << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(left - 8) << "\" y=\"" << px(y + 4)
            << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">1e" << e
            << "</text>\n";
    }
    std::set<std::int64_t> n_ticks;
    for (const auto& s : report.summary)
        if (s.count > 0 && s.mean > 0.0) n_ticks.insert(s.n);
    for (std::int64_t n : n_ticks) {
        const double x = sx(std::log10(static_cast<double>(n)));
        out << "<line x1=\"" << px(x) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(x)
            << "\" y2=\"" << px(bottom + 4) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(x) << "\" y=\"" << px(bottom + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" << n
            << "</text>\n";
    }
    out << "<text x=\"" << px((left + right) / 2) << "\" y=\"" << px(height - 8)
        << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">n</text>\n";

    // One polyline + markers per estimator, palette by series order.
    int color_idx = 0;
    double legend_y = top + 10.0;
    for (const auto& [name, pts] : series) {
        const char* color = kPalette[color_idx % 6];
        ++color_idx;
        if (pts.size() > 1) {
            out << "<polyline points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i) out << ' ';
                out << px(sx(pts[i].first)) << "," << px(sy(pts[i].second));
            }
            out << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        }
        for (const auto& [lx, ly] : pts)
            out << "<circle cx=\"" << px(sx(lx)) << "\" cy=\"" << px(sy(ly))
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        out << "<line x1=\"" << px(right - 120) << "\" y1=\"" << px(legend_y) << "\" x2=\""
            << px(right - 100) << "\" y2=\"" << px(legend_y) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << px(right - 94) << "\" y=\"" << px(legend_y + 4)
            << "\" font-size=\"11\" font-family=\"sans-serif\">" << name << "</text>\n";
        legend_y += 16.0;
    }
    out << "</svg>\n";
}

namespace {

void write_file(const std::filesystem::path& path, void (*writer)(const RiskReport&, std::ostream&),
                const RiskReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path.string());
    writer(report, out);
    out.flush();
    if (!out) throw std::runtime_error("emit_report: write failed for " + path.string());
}

} // namespace

void emit_report(const RiskReport& report, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir))
        throw std::runtime_error("emit_report: cannot create " + out_dir.string());
    write_file(out_dir / "risks.csv", &write_risks_csv, report);
    write_file(out_dir / "summary.csv", &write_summary_csv, report);
    write_file(out_dir / "rates.csv", &write_rates_csv, report);
    write_file(out_dir / "risk_vs_n.svg", &write_risk_svg, report);
}

} // namespace robnp
