#include "cryptoindex/config.hpp"

#include "cryptoindex/text.hpp"

#include <cmath>
#include <fstream>

namespace cryptoindex {

void RunConfig::validate_for_backtest() const {
    if (data_path.empty()) throw UsageError("no data file given (--data)");
    if (!start || !end) throw UsageError("backtest needs both --start and --end");
    if (*start >= *end) {
        throw UsageError("start " + start->iso() + " must be before end " + end->iso());
    }
    if (n_constituents < 1) throw UsageError("n must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw UsageError("alpha must be > 0");
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw UsageError("epsilon must be in (0, 1)");
    if (carry_forward_days < 0) throw UsageError("carry-forward-days must be >= 0");
    if (!(base_value > 0.0) || !std::isfinite(base_value)) {
        throw UsageError("base-value must be > 0");
    }
    if (periods_per_year < 1) throw UsageError("periods-per-year must be >= 1");
    if (!(risk_free_rate > -1.0)) throw UsageError("risk-free must be > -1");
    if (output_dir.empty()) throw UsageError("output directory must not be empty");
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");

    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config '" + path + "' line " + std::to_string(line_no) +
                             ": expected key=value");
        }
        const auto key = trim(stripped.substr(0, eq));
        const auto value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw UsageError("config '" + path + "' line " + std::to_string(line_no) +
                             ": empty key");
        }
        entries[key] = value;
    }
    return entries;
}

namespace {

double parse_double_or_throw(const std::string& key, const std::string& value) {
    double out = 0.0;
    if (!parse_double(value, out)) {
        throw UsageError("config value for '" + key + "' is not a number: '" + value + "'");
    }
    return out;
}

int parse_int_or_throw(const std::string& key, const std::string& value) {
    long out = 0;
    if (!parse_long(value, out)) {
        throw UsageError("config value for '" + key + "' is not an integer: '" + value + "'");
    }
    return static_cast<int>(out);
}

bool parse_bool_or_throw(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw UsageError("config value for '" + key + "' is not a boolean: '" + value + "'");
}

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "data_path") {
        config.data_path = value;
    } else if (key == "start") {
        config.start = Date::parse(value);
    } else if (key == "end") {
        config.end = Date::parse(value);
    } else if (key == "n_constituents") {
        config.n_constituents = parse_int_or_throw(key, value);
    } else if (key == "alpha") {
        config.alpha = parse_double_or_throw(key, value);
    } else if (key == "epsilon") {
        config.epsilon = parse_double_or_throw(key, value);
    } else if (key == "carry_forward_days") {
        config.carry_forward_days = parse_int_or_throw(key, value);
    } else if (key == "base_value") {
        config.base_value = parse_double_or_throw(key, value);
    } else if (key == "periods_per_year") {
        config.periods_per_year = parse_int_or_throw(key, value);
    } else if (key == "risk_free_rate") {
        config.risk_free_rate = parse_double_or_throw(key, value);
    } else if (key == "reselect_monthly") {
        config.reselect_monthly = parse_bool_or_throw(key, value);
    } else if (key == "output_dir") {
        config.output_dir = value;
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

}  // namespace cryptoindex
