#pragma once

#include <vector>

namespace stocksim {

// Forward rate of change: out[t] = (x[t+span] - x[t]) / x[t].
// Output has size x.size() - span; throws if the input is shorter than span+1.
std::vector<double> proc(const std::vector<double>& x, int span);

// Relative strength index over simple (unsmoothed) gain/loss averages of the
// trailing `period` deltas. out[i] corresponds to x[i + period]; output size is
// x.size() - period. When the average loss is zero the value is 100 if any
// gain was seen in the window, else 50 (a flat window has no directional
// information).
std::vector<double> rsi(const std::vector<double>& x, int period = 14);

// Exponential moving average seeded with the first observation,
// multiplier 2/(span+1). Same length as the input.
std::vector<double> ema(const std::vector<double>& x, int span);

// MACD histogram: (EMA12 - EMA26) - EMA9(EMA12 - EMA26), full input length.
// Early values are ramp-in artifacts of the seeding; callers that need
// settled values should discard a warmup prefix.
std::vector<double> macd_histogram(const std::vector<double>& x, int fast = 12, int slow = 26,
                                   int signal = 9);

}  // namespace stocksim
