#include "cryptoindex/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace cryptoindex {

int SmoothingParams::truncation_lag() const {
    validate();
    return static_cast<int>(std::ceil(-std::log(epsilon) / alpha));
}

void SmoothingParams::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("smoothing alpha must be > 0");
    }
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("smoothing epsilon must be in (0, 1)");
    }
}

std::optional<AdjustedCap> adjusted_cap(const MarketHistory& history, const CoinId& coin,
                                        Date date, const SmoothingParams& params) {
    params.validate();
    if (!history.contains(date)) {
        throw DataError("date " + date.iso() + " outside history range [" +
                        history.first_date().iso() + ", " + history.last_date().iso() + "]");
    }
    if (!history.resolve(coin, date)) return std::nullopt;

    const int max_lag = params.truncation_lag();
    double numerator = 0.0;
    double denominator = 0.0;
    for (int lag = 0; lag <= max_lag; ++lag) {
        const auto quote = history.resolve(coin, date.plus_days(-lag));
        if (!quote) continue;
        const double weight = std::exp(-params.alpha * lag);
        numerator += quote->market_cap * weight;
        denominator += weight;
    }
    return AdjustedCap{coin, date, numerator / denominator};
}

std::map<CoinId, double> adjusted_caps_on(const MarketHistory& history, Date date,
                                          const SmoothingParams& params) {
    std::map<CoinId, double> caps;
    for (const auto& coin : history.coins_active_on(date)) {
        if (const auto cap = adjusted_cap(history, coin, date, params)) {
            caps.emplace(coin, cap->value);
        }
    }
    return caps;
}

}  // namespace cryptoindex
