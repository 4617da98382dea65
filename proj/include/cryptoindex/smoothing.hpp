#pragma once

#include "cryptoindex/market_data.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace cryptoindex {

// Decay parameters for the exponentially weighted moving average of market
// cap. The infinite sum is truncated at lag L = ceil(-ln(epsilon)/alpha),
// where the dropped tail is below epsilon in relative weight.
struct SmoothingParams {
    double alpha = std::log(2.0) / 14.0;  // per-day decay, half-life 14 days
    double epsilon = 1e-10;

    int truncation_lag() const;

    // Throws std::invalid_argument unless alpha > 0 and 0 < epsilon < 1.
    void validate() const;
};

struct AdjustedCap {
    CoinId coin;
    Date date;
    double value;
};

// EWMA-smoothed market cap at `date`:
//   M*(date) = sum_i M(date-i) exp(-alpha i) / sum_i exp(-alpha i)
// with both sums running over the lags i in [0, L] at which a cap
// observation resolves under the carry-forward rule. Renormalizing by the
// weights actually present keeps M* a weighted average when the history is
// shorter than L. Returns nullopt when nothing resolves at lag 0.
// Throws DataError if `date` lies outside the history range.
std::optional<AdjustedCap> adjusted_cap(const MarketHistory& history, const CoinId& coin,
                                        Date date, const SmoothingParams& params);

// adjusted_cap for every coin active on `date`; absent results are omitted.
std::map<CoinId, double> adjusted_caps_on(const MarketHistory& history, Date date,
                                          const SmoothingParams& params);

}  // namespace cryptoindex
