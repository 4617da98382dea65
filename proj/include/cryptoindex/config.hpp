#pragma once

#include "cryptoindex/dates.hpp"
#include "cryptoindex/errors.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace cryptoindex {

// Aggregated run parameters. Precedence: command-line flags override
// config-file values override these defaults.
struct RunConfig {
    std::string data_path;
    std::optional<Date> start;
    std::optional<Date> end;
    int n_constituents = 30;
    double alpha = std::log(2.0) / 14.0;
    double epsilon = 1e-10;
    int carry_forward_days = 7;
    double base_value = 100.0;
    int periods_per_year = 365;
    double risk_free_rate = 0.0;
    bool reselect_monthly = false;
    std::string output_dir = ".";

    // Throws UsageError unless every field satisfies its module-level
    // precondition and start < end.
    void validate_for_backtest() const;
};

// Flat key=value file, one entry per line, '#' comments. Keys mirror the
// RunConfig field names. Throws UsageError on unreadable file, a malformed
// line, or an unknown key.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies one key=value entry. Throws UsageError on an unknown key or an
// unparseable value.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace cryptoindex
