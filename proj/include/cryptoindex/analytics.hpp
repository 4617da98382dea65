#pragma once

#include "cryptoindex/index_engine.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace cryptoindex {

// Performance statistics over an index (or any positive price) series.
// Conventions: log returns, sample (n-1) stdev, 365 periods per year for
// daily crypto data, risk-free rate 0 unless configured otherwise.
struct PerfReport {
    double total_return = 0.0;           // last/first - 1
    double annualized_return = 0.0;      // exp(mean(r) * A) - 1
    double annualized_volatility = 0.0;  // sample stdev(r) * sqrt(A)
    std::optional<double> sharpe;        // nullopt when volatility is zero
    double max_drawdown = 0.0;           // max peak-to-trough fraction, in [0, 1)
    std::size_t n_observations = 0;
};

// r_t = ln(level_t / level_{t-1}). Throws DataError on fewer than 2 points.
std::vector<double> log_returns(const IndexSeries& series);

// Throws DataError on fewer than 2 points and std::invalid_argument on
// periods_per_year < 1 or risk_free_rate <= -1. A series with a single
// return has no dispersion estimate: volatility 0, sharpe undefined.
PerfReport perf_report(const IndexSeries& series, int periods_per_year,
                       double risk_free_rate);

// Flat key=value lines; an undefined sharpe serializes as an empty value.
void write_report_text(const PerfReport& report, std::ostream& out);

// Single-row CSV with the same six fields.
void write_report_csv(const PerfReport& report, std::ostream& out);

}  // namespace cryptoindex
