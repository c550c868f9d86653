#pragma once

#include <vector>

#include "stocksim/instances.hpp"

namespace stocksim {

struct ClassificationScores {
  double accuracy = 0.0;
  double f1_macro = 0.0;
};

// Accuracy plus the unweighted mean of the per-class F1 scores over
// increase/decrease; a class with no true or predicted members contributes
// an F1 of 0.
ClassificationScores evaluate_classification(const std::vector<int>& predictions,
                                             const std::vector<int>& truths);

struct TradeRecord {
  Date date;
  int position = 0;  // +1 long, -1 short
  double realized_return = 0.0;
  int prediction = 0;
  int truth = 0;
};

struct BacktestResult {
  double profit = 0.0;  // percentage points, non-compounded unit-notional trades
  std::vector<TradeRecord> log;
};

// Long on predicted increase, short on predicted decrease, one trade per test
// point held for the horizon; trades overlap when the horizon exceeds a day.
BacktestResult buy_and_hold(const std::vector<int>& predictions,
                            const std::vector<double>& closes, int horizon);

// Same trade rule with the entry/exit closes carried by the test instances.
BacktestResult buy_and_hold(const std::vector<int>& predictions,
                            const std::vector<Instance>& test);

struct SharpeResult {
  double value = 0.0;
  bool degenerate = false;  // zero-variance returns
};

// mean / population std of per-trade returns, no annualization.
SharpeResult sharpe_ratio(const std::vector<double>& returns);

}  // namespace stocksim
