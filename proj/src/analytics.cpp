#include "cryptoindex/analytics.hpp"

#include "cryptoindex/text.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cryptoindex {

std::vector<double> log_returns(const IndexSeries& series) {
    if (series.points.size() < 2) {
        throw DataError("need at least 2 series points, got " +
                        std::to_string(series.points.size()));
    }
    std::vector<double> returns;
    returns.reserve(series.points.size() - 1);
    for (std::size_t i = 1; i < series.points.size(); ++i) {
        returns.push_back(std::log(series.points[i].level / series.points[i - 1].level));
    }
    return returns;
}

PerfReport perf_report(const IndexSeries& series, int periods_per_year,
                       double risk_free_rate) {
    if (periods_per_year < 1) throw std::invalid_argument("periods_per_year must be >= 1");
    if (!(risk_free_rate > -1.0)) {
        throw std::invalid_argument("risk_free_rate must be > -1");
    }
    const auto returns = log_returns(series);
    const double annual = static_cast<double>(periods_per_year);

    double mean = 0.0;
    for (double r : returns) mean += r;
    mean /= static_cast<double>(returns.size());

    // Sample (n-1) stdev; a single return has no dispersion estimate.
    double stdev = 0.0;
    if (returns.size() >= 2) {
        double squared = 0.0;
        for (double r : returns) squared += (r - mean) * (r - mean);
        stdev = std::sqrt(squared / static_cast<double>(returns.size() - 1));
    }

    PerfReport report;
    report.n_observations = series.points.size();
    report.total_return = series.points.back().level / series.points.front().level - 1.0;
    report.annualized_return = std::exp(mean * annual) - 1.0;
    report.annualized_volatility = stdev * std::sqrt(annual);
    if (stdev > 0.0) {
        const double rf_log = std::log1p(risk_free_rate);
        report.sharpe = (mean * annual - rf_log) / (stdev * std::sqrt(annual));
    }

    double peak = series.points.front().level;
    for (const auto& point : series.points) {
        if (point.level > peak) peak = point.level;
        const double drawdown = (peak - point.level) / peak;
        if (drawdown > report.max_drawdown) report.max_drawdown = drawdown;
    }
    return report;
}

namespace {

std::string sharpe_field(const PerfReport& report) {
    return report.sharpe ? fixed8(*report.sharpe) : std::string{};
}

}  // namespace

void write_report_text(const PerfReport& report, std::ostream& out) {
    out << "total_return=" << fixed8(report.total_return) << '\n'
        << "annualized_return=" << fixed8(report.annualized_return) << '\n'
        << "annualized_volatility=" << fixed8(report.annualized_volatility) << '\n'
        << "sharpe=" << sharpe_field(report) << '\n'
        << "max_drawdown=" << fixed8(report.max_drawdown) << '\n'
        << "n_observations=" << report.n_observations << '\n';
}

void write_report_csv(const PerfReport& report, std::ostream& out) {
    out << "total_return,annualized_return,annualized_volatility,sharpe,max_drawdown,"
           "n_observations\n"
        << fixed8(report.total_return) << ',' << fixed8(report.annualized_return) << ','
        << fixed8(report.annualized_volatility) << ',' << sharpe_field(report) << ','
        << fixed8(report.max_drawdown) << ',' << report.n_observations << '\n';
}

}  // namespace cryptoindex
