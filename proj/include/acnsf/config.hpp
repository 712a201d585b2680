#pragma once

#include <stdexcept>
#include <string>

#include "acnsf/convergence_lab.hpp"

namespace acnsf {

/// Raised for malformed or out-of-range configuration input; the message
/// names the section, key and line.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parsed sectioned key=value configuration.  A [sweep] section makes it
/// a sweep description; otherwise it describes a single run.
struct ParsedConfig {
    RunConfig run;
    bool is_sweep = false;
    std::vector<double> eps_list;
    std::vector<std::string> norms;  // empty = all
    std::optional<std::array<int, 3>> track_mode;
    bool record_pressure = false;
    double window_factor = 8.0;

    SweepConfig sweep_config() const;
};

/// Parses and validates a config file.  Unknown keys are rejected and all
/// diagnostics carry line numbers.
ParsedConfig parse_config(const std::string& text);

}  // namespace acnsf
