#include "cryptoindex/analytics.hpp"
#include "cryptoindex/composition.hpp"
#include "cryptoindex/config.hpp"
#include "cryptoindex/index_engine.hpp"
#include "cryptoindex/market_data.hpp"
#include "cryptoindex/smoothing.hpp"
#include "cryptoindex/text.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace cryptoindex;

namespace {

// Flag values; applied over config-file entries, which apply over defaults.
struct Flags {
    std::string data;
    std::string start;
    std::string end;
    int n = 0;
    double alpha = 0.0;
    double epsilon = 0.0;
    int carry_forward_days = 0;
    double base_value = 0.0;
    int periods_per_year = 0;
    double risk_free = 0.0;
    bool reselect_monthly = false;
    std::string out;
    std::string config;
};

struct FlagOptions {
    CLI::Option* data = nullptr;
    CLI::Option* start = nullptr;
    CLI::Option* end = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* epsilon = nullptr;
    CLI::Option* carry = nullptr;
    CLI::Option* base = nullptr;
    CLI::Option* periods = nullptr;
    CLI::Option* risk_free = nullptr;
    CLI::Option* reselect = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* config = nullptr;
};

FlagOptions add_run_options(CLI::App& cmd, Flags& flags) {
    FlagOptions opts;
    opts.data = cmd.add_option("--data", flags.data, "Market data CSV (date,coin,price,market_cap)");
    opts.start = cmd.add_option("--start", flags.start, "First index day (YYYY-MM-DD)");
    opts.end = cmd.add_option("--end", flags.end, "Last index day (YYYY-MM-DD)");
    opts.n = cmd.add_option("--n", flags.n, "Number of constituents (default 30)");
    opts.alpha = cmd.add_option("--alpha", flags.alpha, "Cap-smoothing decay per day (default ln2/14)");
    opts.epsilon = cmd.add_option("--epsilon", flags.epsilon, "Smoothing truncation threshold (default 1e-10)");
    opts.carry = cmd.add_option("--carry-forward-days", flags.carry_forward_days,
                                "Max days to carry a stale observation (default 7)");
    opts.base = cmd.add_option("--base-value", flags.base_value, "Index level at start (default 100)");
    opts.periods = cmd.add_option("--periods-per-year", flags.periods_per_year,
                                  "Annualization periods (default 365)");
    opts.risk_free = cmd.add_option("--risk-free", flags.risk_free,
                                    "Annual risk-free rate (default 0)");
    opts.reselect = cmd.add_flag("--reselect-monthly", flags.reselect_monthly,
                                 "Reselect membership at monthly reweights too");
    opts.out = cmd.add_option("--out", flags.out, "Output directory (default .)");
    opts.config = cmd.add_option("--config", flags.config, "key=value config file");
    return opts;
}

RunConfig assemble_config(const Flags& flags, const FlagOptions& opts) {
    RunConfig config;
    if (opts.config->count() > 0) {
        for (const auto& [key, value] : parse_config_file(flags.config)) {
            apply_config_entry(config, key, value);
        }
    }
    if (opts.data->count() > 0) config.data_path = flags.data;
    if (opts.start->count() > 0) config.start = Date::parse(flags.start);
    if (opts.end->count() > 0) config.end = Date::parse(flags.end);
    if (opts.n->count() > 0) config.n_constituents = flags.n;
    if (opts.alpha->count() > 0) config.alpha = flags.alpha;
    if (opts.epsilon->count() > 0) config.epsilon = flags.epsilon;
    if (opts.carry->count() > 0) config.carry_forward_days = flags.carry_forward_days;
    if (opts.base->count() > 0) config.base_value = flags.base_value;
    if (opts.periods->count() > 0) config.periods_per_year = flags.periods_per_year;
    if (opts.risk_free->count() > 0) config.risk_free_rate = flags.risk_free;
    if (opts.reselect->count() > 0) config.reselect_monthly = flags.reselect_monthly;
    if (opts.out->count() > 0) config.output_dir = flags.out;
    return config;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

int run_validate(const std::string& data_path, int carry_forward_days) {
    try {
        const auto history = load_history(data_path, carry_forward_days);
        std::cout << "OK: " << history.n_rows() << " rows, " << history.n_coins() << " coins, "
                  << history.n_dates() << " days\n";
        return 0;
    } catch (const CsvError& e) {
        for (const auto& row : e.rows()) {
            std::cout << "row " << row.line << ": " << row.message << '\n';
        }
        std::cout << "FAIL: " << e.what() << '\n';
        return 1;
    }
}

int run_backtest(const RunConfig& config) {
    config.validate_for_backtest();
    const auto history = load_history(config.data_path, config.carry_forward_days);

    EngineConfig engine;
    engine.start = *config.start;
    engine.end = *config.end;
    engine.n_constituents = config.n_constituents;
    engine.smoothing = {config.alpha, config.epsilon};
    engine.base_value = config.base_value;
    engine.reselect_monthly = config.reselect_monthly;

    // Compute everything first; files are written only on full success.
    const auto result = run_backtest(history, engine);
    const auto report = perf_report(result.series, config.periods_per_year,
                                    config.risk_free_rate);

    std::ostringstream series_csv;
    write_series_csv(result.series, series_csv);
    std::ostringstream compositions_csv;
    write_composition_log_csv(result.compositions, compositions_csv);
    std::ostringstream report_txt;
    write_report_text(report, report_txt);
    std::ostringstream report_csv;
    write_report_csv(report, report_csv);
    std::ostringstream diagnostics_txt;
    diagnostics_txt << "carried_forward_prices=" << result.diagnostics.carried_forward_prices
                    << '\n'
                    << "dropped_coins=" << result.diagnostics.dropped_coins << '\n'
                    << "undersized_selections=" << result.diagnostics.undersized_selections
                    << '\n';

    const fs::path out_dir(config.output_dir);
    write_file_atomic(out_dir / "index_series.csv", series_csv.str());
    write_file_atomic(out_dir / "compositions.csv", compositions_csv.str());
    write_file_atomic(out_dir / "report.txt", report_txt.str());
    write_file_atomic(out_dir / "report.csv", report_csv.str());
    write_file_atomic(out_dir / "diagnostics.txt", diagnostics_txt.str());

    std::cout << "index: " << result.series.points.size() << " days, "
              << result.series.points.front().date.iso() << " to "
              << result.series.points.back().date.iso() << ", final level "
              << fixed8(result.series.points.back().level) << '\n';
    std::cout << "compositions: " << result.compositions.size() << '\n';
    std::cout << report_txt.str();
    for (const char* name :
         {"index_series.csv", "compositions.csv", "report.txt", "report.csv",
          "diagnostics.txt"}) {
        std::cout << "wrote " << (out_dir / name).string() << '\n';
    }
    return 0;
}

int run_weights(const RunConfig& config, const std::string& date_text) {
    if (config.data_path.empty()) throw UsageError("no data file given (--data)");
    const auto date = Date::parse(date_text);
    const auto history = load_history(config.data_path, config.carry_forward_days);
    const SmoothingParams params{config.alpha, config.epsilon};

    const auto caps = adjusted_caps_on(history, date, params);
    const auto composition = make_composition(history, {date, EventKind::Rebalance},
                                              std::nullopt, params, config.n_constituents);

    std::printf("%-10s %24s %14s\n", "coin", "adjusted_cap", "weight");
    for (const auto& c : composition.constituents()) {
        std::printf("%-10s %24s %14s\n", c.coin.str().c_str(),
                    fixed8(caps.at(c.coin)).c_str(), fixed8(c.weight).c_str());
    }
    return 0;
}

int run_stats(const std::string& series_path, const RunConfig& config) {
    const auto series = load_series_csv(series_path);
    const auto report = perf_report(series, config.periods_per_year, config.risk_free_rate);
    write_report_text(report, std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Market-cap cryptocurrency index: construction, backtest, analytics"};
    app.require_subcommand(1);

    auto* validate_cmd = app.add_subcommand("validate", "Check a market data CSV");
    std::string validate_data;
    int validate_carry = 7;
    validate_cmd->add_option("--data", validate_data, "Market data CSV")->required();
    validate_cmd->add_option("--carry-forward-days", validate_carry,
                             "Max days to carry a stale observation (default 7)");

    auto* backtest_cmd = app.add_subcommand("backtest", "Run the index over a date range");
    Flags backtest_flags;
    const auto backtest_opts = add_run_options(*backtest_cmd, backtest_flags);

    auto* weights_cmd =
        app.add_subcommand("weights", "Composition that a full selection would produce");
    Flags weights_flags;
    const auto weights_opts = add_run_options(*weights_cmd, weights_flags);
    std::string weights_date;
    weights_cmd->add_option("--date", weights_date, "Effective date (YYYY-MM-DD)")->required();

    auto* stats_cmd = app.add_subcommand("stats", "Performance report for a date,level CSV");
    Flags stats_flags;
    const auto stats_opts = add_run_options(*stats_cmd, stats_flags);
    std::string stats_series;
    stats_cmd->add_option("series", stats_series, "Series CSV (date,level)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) return run_validate(validate_data, validate_carry);
        if (backtest_cmd->parsed()) {
            return run_backtest(assemble_config(backtest_flags, backtest_opts));
        }
        if (weights_cmd->parsed()) {
            return run_weights(assemble_config(weights_flags, weights_opts), weights_date);
        }
        if (stats_cmd->parsed()) {
            return run_stats(stats_series, assemble_config(stats_flags, stats_opts));
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CsvError& e) {
        for (const auto& row : e.rows()) {
            std::cerr << "row " << row.line << ": " << row.message << '\n';
        }
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
