#include "stocksim/instances.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "stocksim/align.hpp"
#include "stocksim/indicators.hpp"
#include "stocksim/market_data.hpp"
#include "stocksim/normalize.hpp"
#include "stocksim/segment.hpp"

namespace stocksim {

FeatureMode feature_mode_from_string(const std::string& s) {
  if (s == "univariate") return FeatureMode::univariate;
  if (s == "multivariate") return FeatureMode::multivariate;
  throw std::invalid_argument("unknown feature_mode: " + s);
}

Transform transform_from_string(const std::string& s) {
  if (s == "raw") return Transform::raw;
  if (s == "sax") return Transform::sax;
  if (s == "pca") return Transform::pca;
  throw std::invalid_argument("unknown transform: " + s);
}

PredictValue predict_value_from_string(const std::string& s) {
  if (s == "close") return PredictValue::close;
  if (s == "proc") return PredictValue::proc;
  throw std::invalid_argument("unknown predict_value: " + s);
}

std::string to_string(FeatureMode v) {
  return v == FeatureMode::univariate ? "univariate" : "multivariate";
}
std::string to_string(Transform v) {
  switch (v) {
    case Transform::raw: return "raw";
    case Transform::sax: return "sax";
    default: return "pca";
  }
}
std::string to_string(PredictValue v) {
  return v == PredictValue::close ? "close" : "proc";
}

std::vector<TargetPoint> build_targets(const StockSeries& s, const ProcessingConfig& config) {
  const int h = config.horizon;
  if (h < 1) throw std::invalid_argument("build_targets: horizon must be >= 1");
  if (s.bars.size() <= static_cast<std::size_t>(h))
    throw std::invalid_argument("build_targets: series not longer than the horizon");
  std::vector<TargetPoint> out;
  out.reserve(s.bars.size() - static_cast<std::size_t>(h));
  for (std::size_t t = 0; t + static_cast<std::size_t>(h) < s.bars.size(); ++t) {
    const double now = s.bars[t].close;
    const double fut = s.bars[t + static_cast<std::size_t>(h)].close;
    TargetPoint p;
    p.as_of = s.bars[t].date;
    p.value = config.predict_value == PredictValue::proc ? (fut - now) / now : fut;
    p.cls = fut > now ? 1 : 0;
    p.close_now = now;
    p.close_future = fut;
    out.push_back(p);
  }
  return out;
}

namespace {

std::vector<double> closes_of(const StockSeries& s, std::size_t lo, std::size_t hi) {
  std::vector<double> out;
  out.reserve(hi - lo + 1);
  for (std::size_t i = lo; i <= hi; ++i) out.push_back(s.bars[i].close);
  return out;
}

// The chosen univariate value over bars [lo, hi]: normalized closes (stats
// from the series' train sub-range [lo, train_hi]) or raw forward-looking
// rate of change. Dates line up with the bar each value belongs to.
ValueSeries value_series(const StockSeries& s, std::size_t lo, std::size_t hi,
                         std::size_t train_hi, const ProcessingConfig& config) {
  ValueSeries v;
  auto closes = closes_of(s, lo, hi);
  if (config.predict_value == PredictValue::close) {
    auto stats = fit_z(closes_of(s, lo, train_hi));
    v.values = apply_z(closes, stats);
    for (std::size_t i = lo; i <= hi; ++i) v.dates.push_back(s.bars[i].date);
  } else {
    const auto span = static_cast<std::size_t>(config.proc_span);
    if (closes.size() <= span)
      throw std::runtime_error("value series shorter than the rate-of-change span");
    v.values = proc(closes, config.proc_span);
    for (std::size_t i = lo + span; i <= hi; ++i) v.dates.push_back(s.bars[i].date);
  }
  return v;
}

struct SliceIndex {
  std::size_t train_lo, train_hi, test_lo, test_hi, ext_hi;
};

SliceIndex slice_for_fold(const StockSeries& s, const FoldPlan& fold, int horizon) {
  SliceIndex ix;
  std::tie(ix.train_lo, ix.train_hi) = index_range(s, fold.train_range);
  std::tie(ix.test_lo, ix.test_hi) = index_range(s, fold.test_range);
  ix.ext_hi = std::min(ix.test_hi + static_cast<std::size_t>(horizon), s.bars.size() - 1);
  return ix;
}

void fill_target(Instance& inst, const StockSeries& s, std::size_t t, int horizon,
                 const ProcessingConfig& config, const ZStats& close_stats) {
  const double now = s.bars[t].close;
  const double fut = s.bars[t + static_cast<std::size_t>(horizon)].close;
  inst.close_now = now;
  inst.close_future = fut;
  inst.target_class = fut > now ? 1 : 0;
  if (config.predict_value == PredictValue::proc) {
    inst.target_value = (fut - now) / now;
    inst.direction_threshold = 0.0;
  } else {
    inst.target_value = apply_z(fut, close_stats);
    inst.direction_threshold = apply_z(now, close_stats);
  }
  inst.as_of_date = s.bars[t].date;
}

// Window rows for one series: every position whose trailing window and
// forward target both exist. Train rows keep the target inside the series'
// own train range so nothing from the test period leaks in.
void append_window_rows(std::vector<Instance>& out, const StockSeries& s, const SliceIndex& ix,
                        std::size_t hi, bool train_side, const ProcessingConfig& config,
                        double weight) {
  const auto w = static_cast<std::size_t>(config.window);
  const auto h = static_cast<std::size_t>(config.horizon);
  ValueSeries v = value_series(s, ix.train_lo, hi, ix.train_hi, config);
  if (v.size() < w) return;
  const ZStats close_stats = fit_z(closes_of(s, ix.train_lo, ix.train_hi));

  std::unordered_map<int, std::size_t> bar_index;
  for (std::size_t i = ix.train_lo; i <= hi; ++i) bar_index[s.bars[i].date.packed()] = i;

  for (std::size_t j = w - 1; j < v.size(); ++j) {
    const std::size_t t = bar_index.at(v.dates[j].packed());  // as-of bar
    const bool in_train = t >= ix.train_lo && t <= ix.train_hi;
    const bool in_test = t >= ix.test_lo && t <= ix.test_hi;
    if (train_side ? !in_train : !in_test) continue;
    if (train_side && t + h > ix.train_hi) continue;  // target would leave train
    if (t + h >= s.bars.size()) continue;             // target beyond the series
    Instance inst;
    inst.features.assign(v.values.begin() + static_cast<std::ptrdiff_t>(j - w + 1),
                         v.values.begin() + static_cast<std::ptrdiff_t>(j + 1));
    inst.source_symbol = s.symbol;
    inst.weight = weight;
    fill_target(inst, s, t, config.horizon, config, close_stats);
    out.push_back(inst);
  }
}

// Apply per-column z-normalization fitted on train rows to selected columns.
void normalize_matrix_columns(std::vector<Instance>& train, std::vector<Instance>& test,
                              const std::vector<std::size_t>& cols) {
  if (train.empty() || cols.empty()) return;
  for (std::size_t c : cols) {
    std::vector<double> col(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) col[r] = train[r].features[c];
    const ZStats s = fit_z(col);
    for (auto& inst : train) inst.features[c] = apply_z(inst.features[c], s);
    for (auto& inst : test) inst.features[c] = apply_z(inst.features[c], s);
  }
}

void apply_transform(BuiltInstances& built, const ProcessingConfig& config) {
  if (config.transform == Transform::raw || built.train.empty()) return;

  std::vector<std::vector<double>> train_rows;
  train_rows.reserve(built.train.size());
  for (const auto& i : built.train) train_rows.push_back(i.features);

  if (config.transform == Transform::sax) {
    auto stats = fit_columns(train_rows, train_rows.size());
    const SaxCodec codec = make_sax_codec(config.sax_alphabet);
    auto encode = [&](Instance& inst) {
      for (std::size_t c = 0; c < inst.features.size(); ++c) {
        const double z = apply_z(inst.features[c], stats[c]);
        auto it = std::upper_bound(codec.breakpoints.begin(), codec.breakpoints.end(), z);
        inst.features[c] = static_cast<double>(it - codec.breakpoints.begin());
      }
    };
    for (auto& i : built.train) encode(i);
    for (auto& i : built.test) encode(i);
    return;
  }

  // PCA: project every row onto the train-fitted components.
  const PcaModel model = pca_fit(train_rows, config.pca_components);
  auto project = [&](Instance& inst) {
    inst.features = pca_apply(model, {inst.features})[0];
  };
  for (auto& i : built.train) project(i);
  for (auto& i : built.test) project(i);
  built.feature_names.clear();
  for (int k = 1; k <= config.pca_components; ++k)
    built.feature_names.push_back("pc" + std::to_string(k));
}

}  // namespace

BuiltInstances build_instances(const StockSeries& target,
                               const std::vector<const StockSeries*>& peers,
                               const ProcessingConfig& config, const FoldPlan& fold,
                               const std::map<std::string, double>& instance_weight_by_symbol) {
  if (config.horizon < 1) throw std::invalid_argument("build_instances: horizon must be >= 1");
  if (config.temporal == Temporal::window) {
    if (config.feature_mode != FeatureMode::univariate)
      throw std::invalid_argument("build_instances: window modeling is univariate-only");
    if (config.window < 2) throw std::invalid_argument("build_instances: window must be >= 2");
  }

  BuiltInstances built;
  const SliceIndex ix = slice_for_fold(target, fold, config.horizon);

  if (config.temporal == Temporal::window) {
    append_window_rows(built.train, target, ix, ix.train_hi, true, config, 1.0);
    for (const auto* p : peers) {
      double w = 1.0;
      if (auto it = instance_weight_by_symbol.find(p->symbol);
          it != instance_weight_by_symbol.end())
        w = it->second;
      try {
        const SliceIndex pix = slice_for_fold(*p, fold, config.horizon);
        append_window_rows(built.train, *p, pix, pix.train_hi, true, config, w);
      } catch (const std::runtime_error&) {
        // Peer history too thin for this fold; it simply contributes no rows.
      }
    }
    append_window_rows(built.test, target, ix, ix.ext_hi, false, config, 1.0);
    for (int i = 1; i <= config.window; ++i)
      built.feature_names.push_back("value_lag" + std::to_string(config.window - i));
  } else {
    // Timepoint mode: assemble dated feature columns, then inner-join them.
    std::vector<ValueSeries> columns;
    std::vector<std::size_t> matrix_norm_cols;

    if (config.feature_mode == FeatureMode::univariate) {
      columns.push_back(value_series(target, ix.train_lo, ix.ext_hi, ix.train_hi, config));
      built.feature_names.push_back("value");
    } else {
      auto closes = closes_of(target, ix.train_lo, ix.ext_hi);
      const auto n = closes.size();
      auto dates_from = [&](std::size_t start) {
        std::vector<Date> d;
        for (std::size_t i = start; i < n; ++i) d.push_back(target.bars[ix.train_lo + i].date);
        return d;
      };
      const ZStats cs = fit_z(closes_of(target, ix.train_lo, ix.train_hi));
      columns.push_back({dates_from(0), apply_z(closes, cs)});
      columns.push_back({dates_from(0), macd_histogram(closes)});
      columns.push_back(
          {dates_from(static_cast<std::size_t>(config.rsi_period)), rsi(closes, config.rsi_period)});
      columns.push_back(
          {dates_from(static_cast<std::size_t>(config.proc_span)), proc(closes, config.proc_span)});
      ValueSeries ocd{dates_from(0), {}}, vol{dates_from(0), {}};
      for (std::size_t i = 0; i < n; ++i) {
        const Bar& b = target.bars[ix.train_lo + i];
        ocd.values.push_back(b.open - b.close);
        vol.values.push_back(b.volume);
      }
      columns.push_back(std::move(ocd));
      columns.push_back(std::move(vol));
      built.feature_names = {"close", "macd_hist", "rsi", "proc", "open_close_diff", "volume"};
      matrix_norm_cols = {4, 5};
    }

    for (const auto* p : peers) {
      std::size_t plo, phi, ptr_hi;
      std::tie(plo, ptr_hi) = index_range(*p, fold.train_range);
      phi = index_range(*p, {fold.train_range.first, fold.test_range.last}).second;
      ProcessingConfig peer_cfg = config;
      if (config.feature_mode == FeatureMode::multivariate)
        peer_cfg.predict_value = PredictValue::close;  // peer columns carry closes
      columns.push_back(value_series(*p, plo, phi, ptr_hi, peer_cfg));
      built.feature_names.push_back("peer_" + p->symbol);
    }

    // Instance dates = dates on which every column is defined.
    std::unordered_map<int, std::size_t> hits;
    for (const auto& col : columns)
      for (Date d : col.dates) ++hits[d.packed()];
    std::vector<Date> shared;
    for (Date d : columns[0].dates)
      if (hits[d.packed()] == columns.size()) shared.push_back(d);

    std::vector<std::unordered_map<int, double>> lookup(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (std::size_t i = 0; i < columns[c].size(); ++i)
        lookup[c][columns[c].dates[i].packed()] = columns[c].values[i];

    std::unordered_map<int, std::size_t> bar_index;
    for (std::size_t i = ix.train_lo; i <= ix.ext_hi; ++i)
      bar_index[target.bars[i].date.packed()] = i;
    const ZStats target_close_stats = fit_z(closes_of(target, ix.train_lo, ix.train_hi));
    const auto h = static_cast<std::size_t>(config.horizon);

    for (Date d : shared) {
      const std::size_t t = bar_index.at(d.packed());
      const bool in_train = t <= ix.train_hi;
      const bool in_test = t >= ix.test_lo && t <= ix.test_hi;
      if (in_train && t + h > ix.train_hi) continue;
      if (!in_train && !in_test) continue;
      if (t + h >= target.bars.size()) continue;
      Instance inst;
      inst.features.reserve(columns.size());
      for (std::size_t c = 0; c < columns.size(); ++c)
        inst.features.push_back(lookup[c].at(d.packed()));
      inst.source_symbol = target.symbol;
      fill_target(inst, target, t, config.horizon, config, target_close_stats);
      (in_train ? built.train : built.test).push_back(inst);
    }
    normalize_matrix_columns(built.train, built.test, matrix_norm_cols);
  }

  if (built.train.empty())
    throw std::runtime_error("build_instances: empty train matrix after joins");
  if (built.test.empty())
    throw std::runtime_error("build_instances: no test instances for this fold");
  apply_transform(built, config);
  return built;
}

}  // namespace stocksim
