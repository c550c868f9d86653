#include "stocksim/indicators.hpp"

#include <stdexcept>

namespace stocksim {

std::vector<double> proc(const std::vector<double>& x, int span) {
  if (span < 1) throw std::invalid_argument("proc: span must be >= 1");
  if (x.size() < static_cast<std::size_t>(span) + 1)
    throw std::invalid_argument("proc: input shorter than span+1");
  std::vector<double> out(x.size() - static_cast<std::size_t>(span));
  for (std::size_t t = 0; t < out.size(); ++t)
    out[t] = (x[t + static_cast<std::size_t>(span)] - x[t]) / x[t];
  return out;
}

std::vector<double> rsi(const std::vector<double>& x, int period) {
  if (period < 1) throw std::invalid_argument("rsi: period must be >= 1");
  const auto p = static_cast<std::size_t>(period);
  if (x.size() < p + 1) throw std::invalid_argument("rsi: input shorter than period+1");
  std::vector<double> out(x.size() - p);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double gain = 0.0, loss = 0.0;
    for (std::size_t j = i; j < i + p; ++j) {
      const double d = x[j + 1] - x[j];
      if (d > 0.0)
        gain += d;
      else
        loss -= d;
    }
    const double avg_gain = gain / period, avg_loss = loss / period;
    if (avg_loss == 0.0)
      out[i] = avg_gain > 0.0 ? 100.0 : 50.0;
    else
      out[i] = 100.0 - 100.0 / (1.0 + avg_gain / avg_loss);
  }
  return out;
}

std::vector<double> ema(const std::vector<double>& x, int span) {
  if (span < 1) throw std::invalid_argument("ema: span must be >= 1");
  if (x.empty()) throw std::invalid_argument("ema: empty input");
  const double k = 2.0 / (span + 1.0);
  std::vector<double> out(x.size());
  out[0] = x[0];
  for (std::size_t t = 1; t < x.size(); ++t) out[t] = x[t] * k + out[t - 1] * (1.0 - k);
  return out;
}

std::vector<double> macd_histogram(const std::vector<double>& x, int fast, int slow, int signal) {
  if (fast >= slow) throw std::invalid_argument("macd_histogram: fast span must be < slow span");
  auto ef = ema(x, fast);
  auto es = ema(x, slow);
  std::vector<double> line(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) line[t] = ef[t] - es[t];
  auto sig = ema(line, signal);
  std::vector<double> out(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) out[t] = line[t] - sig[t];
  return out;
}

}  // namespace stocksim
