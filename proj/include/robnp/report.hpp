#pragma once

#include "robnp/experiment.hpp"

#include <filesystem>
#include <iosfwd>

namespace robnp {

/// Emits risks.csv, summary.csv, rates.csv and risk_vs_n.svg into out_dir.
/// Output is byte-deterministic: fixed row order (estimator, n, replicate
/// ascending), shortest round-trip float formatting, '.' decimal
/// separator, and the SVG is plain text with no external renderer.
/// I/O failures throw std::runtime_error naming the path.
void emit_report(const RiskReport& report, const std::filesystem::path& out_dir);

void write_risks_csv(const RiskReport& report, std::ostream& out);
void write_summary_csv(const RiskReport& report, std::ostream& out);
void write_rates_csv(const RiskReport& report, std::ostream& out);
void write_risk_svg(const RiskReport& report, std::ostream& out);

} // namespace robnp
