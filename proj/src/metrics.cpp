#include "stocksim/metrics.hpp"

#include <stdexcept>

#include "stocksim/mathutil.hpp"

namespace stocksim {

ClassificationScores evaluate_classification(const std::vector<int>& predictions,
                                             const std::vector<int>& truths) {
  if (predictions.empty() || predictions.size() != truths.size())
    throw std::invalid_argument("evaluate_classification: need equal non-empty inputs");

  ClassificationScores s;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truths.size(); ++i)
    if (predictions[i] == truths[i]) ++correct;
  s.accuracy = static_cast<double>(correct) / static_cast<double>(truths.size());

  double f1_sum = 0.0;
  for (int cls : {1, 0}) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
      const bool p = predictions[i] == cls, t = truths[i] == cls;
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
    }
    const double denom = 2.0 * tp + fp + fn;
    f1_sum += denom > 0.0 ? 2.0 * tp / denom : 0.0;
  }
  s.f1_macro = f1_sum / 2.0;
  return s;
}

BacktestResult buy_and_hold(const std::vector<int>& predictions,
                            const std::vector<double>& closes, int horizon) {
  if (horizon < 1) throw std::invalid_argument("buy_and_hold: horizon must be >= 1");
  const auto h = static_cast<std::size_t>(horizon);
  if (closes.size() < predictions.size() + h)
    throw std::invalid_argument("buy_and_hold: missing forward close for the last trade");

  BacktestResult r;
  for (std::size_t t = 0; t < predictions.size(); ++t) {
    TradeRecord rec;
    rec.position = predictions[t] == 1 ? 1 : -1;
    rec.prediction = predictions[t];
    rec.truth = closes[t + h] > closes[t] ? 1 : 0;
    rec.realized_return = rec.position * (closes[t + h] - closes[t]) / closes[t];
    r.profit += 100.0 * rec.realized_return;
    r.log.push_back(rec);
  }
  return r;
}

BacktestResult buy_and_hold(const std::vector<int>& predictions,
                            const std::vector<Instance>& test) {
  if (predictions.size() != test.size())
    throw std::invalid_argument("buy_and_hold: one prediction per test instance required");
  BacktestResult r;
  for (std::size_t t = 0; t < test.size(); ++t) {
    TradeRecord rec;
    rec.date = test[t].as_of_date;
    rec.position = predictions[t] == 1 ? 1 : -1;
    rec.prediction = predictions[t];
    rec.truth = test[t].target_class;
    rec.realized_return =
        rec.position * (test[t].close_future - test[t].close_now) / test[t].close_now;
    r.profit += 100.0 * rec.realized_return;
    r.log.push_back(rec);
  }
  return r;
}

SharpeResult sharpe_ratio(const std::vector<double>& returns) {
  if (returns.size() < 2) throw std::invalid_argument("sharpe_ratio: need at least 2 returns");
  // An all-equal vector must hit the degenerate branch even when its mean is
  // not exactly representable (pop_std would come back ~1e-18, not 0).
  bool flat = true;
  for (double r : returns) flat = flat && r == returns.front();
  const double m = mean_of(returns);
  const double sd = pop_std(returns, m);
  if (flat || sd == 0.0) return {0.0, true};
  return {m / sd, false};
}

}  // namespace stocksim
