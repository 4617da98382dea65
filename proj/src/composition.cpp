#include "cryptoindex/composition.hpp"

#include "cryptoindex/text.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace cryptoindex {

std::string_view to_string(EventKind kind) {
    return kind == EventKind::Rebalance ? "REBALANCE" : "REWEIGHT";
}

Composition::Composition(Date effective_date, EventKind origin,
                         std::vector<Constituent> constituents)
    : effective_date_(effective_date), origin_(origin), constituents_(std::move(constituents)) {
    if (constituents_.empty()) {
        throw std::invalid_argument("composition needs at least one constituent");
    }
    std::set<CoinId> coins;
    double sum = 0.0;
    for (const auto& c : constituents_) {
        if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
            throw std::invalid_argument("non-positive weight for " + c.coin.str());
        }
        if (!(c.base_price > 0.0) || !std::isfinite(c.base_price)) {
            throw std::invalid_argument("non-positive base price for " + c.coin.str());
        }
        if (!coins.insert(c.coin).second) {
            throw std::invalid_argument("duplicate constituent " + c.coin.str());
        }
        sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("constituent weights sum to " + std::to_string(sum) +
                                    ", expected 1");
    }

    std::sort(constituents_.begin(), constituents_.end(),
              [](const Constituent& a, const Constituent& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  return a.coin < b.coin;
              });
}

std::vector<ScheduleEvent> build_schedule(Date start, Date end) {
    if (start > end) throw std::invalid_argument("schedule start after end");

    std::vector<ScheduleEvent> events;
    Date boundary = start.is_month_start() ? start : start.month_start_after(1);
    while (boundary <= end) {
        events.push_back({boundary, boundary.is_quarter_start() ? EventKind::Rebalance
                                                                : EventKind::Reweight});
        boundary = boundary.month_start_after(1);
    }
    if (events.empty() || events.front().date != start) {
        events.insert(events.begin(), {start, EventKind::Rebalance});
    } else {
        // The index must begin with a full selection.
        events.front().kind = EventKind::Rebalance;
    }
    return events;
}

std::vector<CoinId> select_constituents(const MarketHistory& history, Date date,
                                        const SmoothingParams& params, int n) {
    if (n < 1) throw std::invalid_argument("selection size must be >= 1");
    const auto caps = adjusted_caps_on(history, date, params);
    if (caps.empty()) throw DataError("no qualifying coins on " + date.iso());

    std::vector<std::pair<CoinId, double>> ranked(caps.begin(), caps.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > static_cast<std::size_t>(n)) {
        ranked.erase(ranked.begin() + n, ranked.end());
    }

    std::vector<CoinId> selected;
    selected.reserve(ranked.size());
    for (const auto& [coin, cap] : ranked) selected.push_back(coin);
    return selected;
}

std::map<CoinId, double> compute_weights(const std::map<CoinId, double>& caps) {
    if (caps.empty()) throw std::invalid_argument("compute_weights: empty cap set");
    double total = 0.0;
    for (const auto& [coin, cap] : caps) {
        if (!(cap > 0.0) || !std::isfinite(cap)) {
            throw std::invalid_argument("compute_weights: non-positive cap for " + coin.str());
        }
        total += std::sqrt(cap);
    }
    std::map<CoinId, double> weights;
    for (const auto& [coin, cap] : caps) weights.emplace(coin, std::sqrt(cap) / total);
    return weights;
}

namespace {

Composition weighted_composition(const MarketHistory& history, Date date, EventKind origin,
                                 const std::vector<CoinId>& members,
                                 const SmoothingParams& params) {
    std::map<CoinId, double> caps;
    for (const auto& coin : members) {
        const auto cap = adjusted_cap(history, coin, date, params);
        if (cap) caps.emplace(coin, cap->value);
    }
    if (caps.empty()) throw DataError("no qualifying coins on " + date.iso());

    const auto weights = compute_weights(caps);
    std::vector<Constituent> constituents;
    constituents.reserve(weights.size());
    for (const auto& [coin, weight] : weights) {
        const auto price = history.price_at(coin, date);
        if (!price) throw DataError("price for " + coin.str() + " unresolvable on " + date.iso());
        constituents.push_back({coin, weight, *price});
    }
    return Composition(date, origin, std::move(constituents));
}

}  // namespace

Composition make_composition(const MarketHistory& history, const ScheduleEvent& event,
                             const std::optional<Composition>& previous,
                             const SmoothingParams& params, int n,
                             bool reselect_on_reweight) {
    if (n < 1) throw std::invalid_argument("selection size must be >= 1");

    if (event.kind == EventKind::Rebalance || reselect_on_reweight) {
        if (event.kind == EventKind::Reweight && !previous) {
            throw std::invalid_argument("REWEIGHT event requires a previous composition");
        }
        const auto members = select_constituents(history, event.date, params, n);
        return weighted_composition(history, event.date, event.kind, members, params);
    }

    if (!previous) {
        throw std::invalid_argument("REWEIGHT event requires a previous composition");
    }
    // Keep the previous membership; drop coins whose price no longer resolves.
    std::vector<CoinId> survivors;
    for (const auto& c : previous->constituents()) {
        if (history.price_at(c.coin, event.date)) survivors.push_back(c.coin);
    }
    if (survivors.empty()) {
        throw DataError("no qualifying coins on " + event.date.iso() +
                        ": every previous constituent dropped");
    }
    return weighted_composition(history, event.date, EventKind::Reweight, survivors, params);
}

void write_composition_log_csv(const std::vector<Composition>& compositions, std::ostream& out) {
    out << "effective_date,kind,coin,weight,base_price\n";
    for (const auto& comp : compositions) {
        for (const auto& c : comp.constituents()) {
            out << comp.effective_date().iso() << ',' << to_string(comp.origin()) << ','
                << c.coin.str() << ',' << fixed8(c.weight) << ',' << fixed8(c.base_price)
                << '\n';
        }
    }
}

}  // namespace cryptoindex
