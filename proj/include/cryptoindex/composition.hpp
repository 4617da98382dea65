#pragma once

#include "cryptoindex/market_data.hpp"
#include "cryptoindex/smoothing.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace cryptoindex {

enum class EventKind { Rebalance, Reweight };

std::string_view to_string(EventKind kind);

struct ScheduleEvent {
    Date date;
    EventKind kind;
};

struct Constituent {
    CoinId coin;
    double weight;      // in (0, 1]
    double base_price;  // price at the composition's effective date
};

// The constituent set and weights in force over one index segment.
// Constituents are sorted by descending weight, ties by coin; the weight
// sum must be 1 within 1e-9.
class Composition {
public:
    Composition(Date effective_date, EventKind origin, std::vector<Constituent> constituents);

    Date effective_date() const { return effective_date_; }
    EventKind origin() const { return origin_; }
    const std::vector<Constituent>& constituents() const { return constituents_; }

private:
    Date effective_date_;
    EventKind origin_;
    std::vector<Constituent> constituents_;
};

// Every month boundary in [start, end], REBALANCE on quarter boundaries
// (Jan/Apr/Jul/Oct 1) and REWEIGHT otherwise. The first event is always a
// REBALANCE: prepended at `start` when `start` is not a month boundary,
// promoted when `start` falls on a non-quarter month boundary.
// Throws std::invalid_argument if start > end.
std::vector<ScheduleEvent> build_schedule(Date start, Date end);

// The n coins with the highest adjusted cap on `date` (fewer if fewer
// qualify), sorted by descending adjusted cap, ties by ascending coin.
// Throws DataError when no coin qualifies or `date` is out of range.
std::vector<CoinId> select_constituents(const MarketHistory& history, Date date,
                                        const SmoothingParams& params, int n);

// weight_i = sqrt(cap_i) / sum_j sqrt(cap_j).
// Throws std::invalid_argument on empty input or a non-positive cap.
std::map<CoinId, double> compute_weights(const std::map<CoinId, double>& caps);

// Composition in force from `event.date`. REBALANCE reselects the top n;
// REWEIGHT keeps the previous coin set (dropping coins whose price no
// longer resolves) and recomputes weights from current adjusted caps.
// With `reselect_on_reweight`, REWEIGHT events also reselect membership.
// Base prices are the carry-forward prices at the event date.
Composition make_composition(const MarketHistory& history, const ScheduleEvent& event,
                             const std::optional<Composition>& previous,
                             const SmoothingParams& params, int n,
                             bool reselect_on_reweight = false);

// CSV log `effective_date,kind,coin,weight,base_price`, one row per
// constituent, sorted by (effective_date, descending weight).
void write_composition_log_csv(const std::vector<Composition>& compositions, std::ostream& out);

}  // namespace cryptoindex
