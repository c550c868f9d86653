#pragma once

#include <map>
#include <string>
#include <vector>

#include "stocksim/bar.hpp"

namespace stocksim {

enum class FeatureMode { univariate, multivariate };
enum class Transform { raw, sax, pca };
enum class Temporal { timepoint, window };
enum class PredictValue { close, proc };

FeatureMode feature_mode_from_string(const std::string& s);
Transform transform_from_string(const std::string& s);
PredictValue predict_value_from_string(const std::string& s);
std::string to_string(FeatureMode v);
std::string to_string(Transform v);
std::string to_string(PredictValue v);

struct ProcessingConfig {
  FeatureMode feature_mode = FeatureMode::univariate;
  Transform transform = Transform::raw;
  Temporal temporal = Temporal::timepoint;
  int window = 5;  // trailing points per instance when temporal == window
  PredictValue predict_value = PredictValue::close;
  int horizon = 1;  // trading days ahead the target refers to

  int proc_span = 1;     // rate-of-change span for the proc feature/value
  int rsi_period = 14;   // also the indicator warmup in multivariate mode
  int sax_alphabet = 8;
  int pca_components = 3;
};

// One model-ready example. Raw closes ride along so the backtest can compute
// per-trade returns without re-reading the series.
struct Instance {
  std::vector<double> features;
  double target_value = 0.0;  // regression target (close targets pre-normalized)
  int target_class = 0;       // 1 = increase, 0 = decrease
  Date as_of_date;
  std::string source_symbol;
  double weight = 1.0;
  double close_now = 0.0;
  double close_future = 0.0;           // close at as_of + horizon
  double direction_threshold = 0.0;    // regression output above this = increase
};

struct BuiltInstances {
  std::vector<Instance> train;
  std::vector<Instance> test;
  std::vector<std::string> feature_names;
};

// Raw (value, class) targets for every bar that has a bar `horizon` steps
// ahead: proc targets are the forward relative change, close targets the raw
// forward close. A flat move counts as decrease.
struct TargetPoint {
  Date as_of;
  double value = 0.0;
  int cls = 0;
  double close_now = 0.0;
  double close_future = 0.0;
};

std::vector<TargetPoint> build_targets(const StockSeries& s, const ProcessingConfig& config);

// Assemble train/test matrices for one (stock, fold, config) cell.
//
// Timepoint mode: one instance per joined date. Univariate features are the
// chosen value series; multivariate features are [close, macd_hist, rsi,
// proc, open_close_diff, volume] in that order. Peer value series join as
// extra columns on shared dates. Window mode (univariate only): features are
// the trailing `window` values of the chosen value series; peers contribute
// extra *train* rows from their own histories, never test rows.
//
// Close-derived values are z-normalized with statistics fitted on the owning
// series' train range; proc/RSI/MACD-histogram features stay raw; the
// open-close-difference and volume columns are normalized against the train
// instance rows. The sax/pca transforms are likewise fitted on train rows
// only and applied to both sides.
//
// `instance_weight_by_symbol` weights examples by their source symbol
// (window-mode peer rows); symbols not present get weight 1.
BuiltInstances build_instances(const StockSeries& target,
                               const std::vector<const StockSeries*>& peers,
                               const ProcessingConfig& config, const FoldPlan& fold,
                               const std::map<std::string, double>& instance_weight_by_symbol = {});

}  // namespace stocksim
