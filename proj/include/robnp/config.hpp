#pragma once

#include "robnp/experiment.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace robnp {

/// Malformed or inconsistent experiment configuration.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses the flat key=value config format ('#' comments, "auto" leaves a
/// hyperparameter to the asymptotic formulas). Unknown keys are rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Prints every key with its default, as accepted by parse_config.
void print_default_config(std::ostream& out);

} // namespace robnp
