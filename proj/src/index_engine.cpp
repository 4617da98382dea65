#include "cryptoindex/index_engine.hpp"

#include "cryptoindex/text.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace cryptoindex {

SegmentValue segment_value(const Composition& composition, const MarketHistory& history,
                           Date date) {
    if (date < composition.effective_date()) {
        throw std::invalid_argument("segment evaluated before its effective date");
    }
    // Accumulate weighted deviations from 1 rather than the weighted relatives
    // themselves: on the effective date every price ratio is exactly 1, so the
    // segment opens at exactly 1.0 no matter how the weights rounded.
    double deviation = 0.0;
    int carried = 0;
    for (const auto& c : composition.constituents()) {
        const auto quote = history.resolve(c.coin, date);
        if (!quote) {
            throw DataError("price for constituent " + c.coin.str() + " unresolvable on " +
                            date.iso() + " (carry-forward exhausted)");
        }
        if (quote->lag_days > 0) ++carried;
        deviation += c.weight * (quote->price / c.base_price - 1.0);
    }
    return {date, 1.0 + deviation, carried};
}

IndexSeries chain_segments(const std::vector<std::vector<SegmentValue>>& segments,
                           double base_value) {
    if (!(base_value > 0.0) || !std::isfinite(base_value)) {
        throw std::invalid_argument("base value must be positive");
    }
    if (segments.empty()) throw std::invalid_argument("no segments to chain");
    for (const auto& segment : segments) {
        if (segment.empty()) throw std::invalid_argument("empty segment");
        if (std::abs(segment.front().relative_value - 1.0) > 1e-9) {
            throw std::invalid_argument("segment does not open at relative value 1 on " +
                                        segment.front().date.iso());
        }
        for (std::size_t i = 1; i < segment.size(); ++i) {
            if (segment[i].date <= segment[i - 1].date) {
                throw std::invalid_argument("segment dates not strictly increasing");
            }
        }
    }
    for (std::size_t j = 1; j < segments.size(); ++j) {
        if (segments[j].front().date != segments[j - 1].back().date) {
            throw std::invalid_argument("non-contiguous segments: segment ending " +
                                        segments[j - 1].back().date.iso() +
                                        " followed by segment opening " +
                                        segments[j].front().date.iso());
        }
    }

    IndexSeries series;
    series.base_value = base_value;
    series.base_date = segments.front().front().date;

    double chain = base_value;  // base * product of completed segments' closes
    for (std::size_t j = 0; j < segments.size(); ++j) {
        const auto& segment = segments[j];
        // The boundary day was already emitted as the previous segment's
        // close; the new segment's open (relative 1) lands on the same level.
        const std::size_t begin = j == 0 ? 0 : 1;
        for (std::size_t i = begin; i < segment.size(); ++i) {
            const double level = chain * segment[i].relative_value;
            if (!(level > 0.0) || !std::isfinite(level)) {
                throw DataError("non-positive index level on " + segment[i].date.iso());
            }
            series.points.push_back({segment[i].date, level});
        }
        chain *= segment.back().relative_value;
    }
    return series;
}

BacktestResult run_backtest(const MarketHistory& history, const EngineConfig& config) {
    config.smoothing.validate();
    if (config.n_constituents < 1) throw std::invalid_argument("n_constituents must be >= 1");
    if (!(config.base_value > 0.0) || !std::isfinite(config.base_value)) {
        throw std::invalid_argument("base value must be positive");
    }
    if (config.start > config.end) throw std::invalid_argument("backtest start after end");
    if (!history.contains(config.start) || !history.contains(config.end)) {
        throw DataError("backtest range [" + config.start.iso() + ", " + config.end.iso() +
                        "] outside history range [" + history.first_date().iso() + ", " +
                        history.last_date().iso() + "]");
    }

    const auto schedule = build_schedule(config.start, config.end);

    BacktestResult result;
    std::vector<std::vector<SegmentValue>> segments;
    std::optional<Composition> previous;

    for (std::size_t j = 0; j < schedule.size(); ++j) {
        const auto& event = schedule[j];
        auto composition = make_composition(history, event, previous, config.smoothing,
                                            config.n_constituents, config.reselect_monthly);

        if (event.kind == EventKind::Reweight && previous) {
            for (const auto& c : previous->constituents()) {
                if (!history.resolve(c.coin, event.date)) ++result.diagnostics.dropped_coins;
            }
        }
        const bool full_selection = event.kind == EventKind::Rebalance || config.reselect_monthly;
        if (full_selection && composition.constituents().size() <
                                  static_cast<std::size_t>(config.n_constituents)) {
            ++result.diagnostics.undersized_selections;
        }

        const Date segment_end = j + 1 < schedule.size() ? schedule[j + 1].date : config.end;
        std::vector<SegmentValue> segment;
        segment.reserve(static_cast<std::size_t>(segment_end - event.date) + 1);
        for (Date d = event.date; d <= segment_end; d = d.plus_days(1)) {
            auto sv = segment_value(composition, history, d);
            result.diagnostics.carried_forward_prices += sv.carried_forward;
            segment.push_back(sv);
        }
        segments.push_back(std::move(segment));
        result.compositions.push_back(composition);
        previous = std::move(composition);
    }

    result.series = chain_segments(segments, config.base_value);
    return result;
}

void write_series_csv(const IndexSeries& series, std::ostream& out) {
    out << "date,level\n";
    for (const auto& point : series.points) {
        out << point.date.iso() << ',' << fixed8(point.level) << '\n';
    }
}

IndexSeries load_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open series file '" + path + "'");

    std::string line;
    if (!std::getline(in, line) || trim(line) != "date,level") {
        throw CsvError("bad header in '" + path + "': expected 'date,level'",
                       {{1, "bad header"}});
    }

    IndexSeries series;
    std::vector<RowError> errors;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split(line, ',');
        if (fields.size() != 2) {
            errors.push_back({line_no, "expected 2 columns (date,level)"});
            continue;
        }
        Date date;
        try {
            date = Date::parse(trim(fields[0]));
        } catch (const UsageError& e) {
            errors.push_back({line_no, e.what()});
            continue;
        }
        double level = 0.0;
        if (!parse_double(trim(fields[1]), level) || !(level > 0.0) || !std::isfinite(level)) {
            errors.push_back({line_no, "level must be a positive finite number"});
            continue;
        }
        if (!series.points.empty() && date <= series.points.back().date) {
            errors.push_back({line_no, "dates must be strictly increasing"});
            continue;
        }
        series.points.push_back({date, level});
    }
    if (!errors.empty()) {
        throw CsvError("invalid series in '" + path + "': " + std::to_string(errors.size()) +
                           " bad row(s)",
                       std::move(errors));
    }
    if (series.points.empty()) {
        throw CsvError("empty series: '" + path + "' has a header but no data rows", {});
    }
    series.base_date = series.points.front().date;
    series.base_value = series.points.front().level;
    return series;
}

}  // namespace cryptoindex
