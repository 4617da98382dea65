#pragma once

#include "cryptoindex/composition.hpp"
#include "cryptoindex/market_data.hpp"
#include "cryptoindex/smoothing.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cryptoindex {

// Index value relative to the owning segment's base date (1 at that date).
struct SegmentValue {
    Date date;
    double relative_value;
    int carried_forward = 0;  // constituents priced via carry-forward on this date
};

struct IndexPoint {
    Date date;
    double level;
};

// Chained, publishable index series: one point per calendar day,
// level == base_value at base_date.
struct IndexSeries {
    std::vector<IndexPoint> points;
    double base_value = 0.0;
    Date base_date;
};

struct Diagnostics {
    // Price lookups during segment evaluation that resolved via
    // carry-forward. Boundary days are evaluated under both adjoining
    // compositions and counted for each.
    std::int64_t carried_forward_prices = 0;
    // Previous constituents dropped at REWEIGHT events because their price
    // no longer resolved.
    std::int64_t dropped_coins = 0;
    // Full-selection events that produced fewer than n constituents.
    std::int64_t undersized_selections = 0;
};

struct BacktestResult {
    IndexSeries series;
    std::vector<Composition> compositions;
    Diagnostics diagnostics;
};

struct EngineConfig {
    Date start;
    Date end;
    int n_constituents = 30;
    SmoothingParams smoothing{};
    double base_value = 100.0;
    bool reselect_monthly = false;
};

// relative_value = sum_i w_i * P_i(date) / base_price_i, accumulated as
// 1 + sum_i w_i * (P_i(date)/base_price_i - 1) so the effective date gives
// exactly 1.0. Throws DataError (naming the coin and date) if any
// constituent's price fails to resolve even via carry-forward.
SegmentValue segment_value(const Composition& composition, const MarketHistory& history,
                           Date date);

// Chains per-segment relative-value sequences into one continuous series:
// level(t) = base_value * prod(closing relatives of completed segments)
//          * current segment's relative at t.
// Consecutive segments must share their boundary date (the old segment's
// close and the new segment's open fall on the same day) and every segment
// must open at relative 1; the duplicated boundary point is emitted once.
// Throws std::invalid_argument on empty input, a segment not opening at 1,
// or non-contiguous segments.
IndexSeries chain_segments(const std::vector<std::vector<SegmentValue>>& segments,
                           double base_value);

// Builds the schedule over [start, end], materializes compositions
// sequentially, evaluates every day of every segment and chains the result.
// A constituent whose price becomes unresolvable mid-segment fails the run
// loudly; membership recovery happens only at schedule events.
BacktestResult run_backtest(const MarketHistory& history, const EngineConfig& config);

// CSV `date,level`, one row per day, levels fixed to 8 decimals.
void write_series_csv(const IndexSeries& series, std::ostream& out);

// Reads any `date,level` CSV back into a series (base = first row).
// Throws UsageError if unreadable, CsvError on malformed content.
IndexSeries load_series_csv(const std::string& path);

}  // namespace cryptoindex
