#include "stocksim/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "stocksim/mathutil.hpp"
#include "stocksim/metrics.hpp"

namespace stocksim {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::uint64_t fp_mix(std::uint64_t fp, const void* data, std::size_t len) {
  return fnv1a64(data, len, fp);
}
std::uint64_t fp_mix(std::uint64_t fp, const std::string& s) {
  return fp_mix(fp, s.data(), s.size());
}
std::uint64_t fp_mix(std::uint64_t fp, double v) { return fp_mix(fp, &v, sizeof(v)); }
std::uint64_t fp_mix(std::uint64_t fp, int v) { return fp_mix(fp, &v, sizeof(v)); }

}  // namespace

std::vector<GridCell> enumerate_cells(const ExperimentGrid& grid) {
  std::vector<GridCell> cells;
  for (FeatureMode fm : grid.feature_modes)
    for (Transform tr : grid.transforms)
      for (const auto& [temporal, window] : grid.temporals) {
        if (temporal == Temporal::window && fm != FeatureMode::univariate)
          continue;  // window modeling is defined for univariate features only
        for (PredictValue pv : grid.predict_values)
          for (int h : grid.horizons)
            for (ModelKind mk : grid.model_kinds)
              for (ModelMode mm : grid.model_modes)
                for (const std::string& enrichment : grid.enrichments) {
                  GridCell base;
                  base.processing.feature_mode = fm;
                  base.processing.transform = tr;
                  base.processing.temporal = temporal;
                  base.processing.window = window;
                  base.processing.predict_value = pv;
                  base.processing.horizon = h;
                  base.processing.sax_alphabet = grid.sax_alphabet;
                  base.processing.proc_span = grid.proc_span;
                  base.processing.rsi_period = grid.rsi_period;
                  base.temporal_label =
                      temporal == Temporal::timepoint ? "timepoint"
                                                      : "window" + std::to_string(window);
                  base.model_kind = mk;
                  base.model_mode = mm;
                  base.enrichment = enrichment;

                  if (enrichment == "none") {
                    cells.push_back(base);
                  } else if (enrichment == "random") {
                    for (int rc : grid.random_counts) {
                      GridCell c = base;
                      c.random_count = rc;
                      cells.push_back(c);
                    }
                  } else {
                    for (SimilarityFn fn : grid.similarity_fns)
                      for (ValueField vf : grid.similarity_values)
                        for (Fixer fx : grid.fixers)
                          for (int k : grid.ks)
                            for (bool w : grid.weighted) {
                              GridCell c = base;
                              c.sim.function = fn;
                              c.sim.value_field = vf;
                              c.sim.fixer = fx;
                              c.sim.k = k;
                              c.sim.delay = grid.delay;
                              c.sim.pip_fraction = grid.pip_fraction;
                              c.sim.sax_alphabet = grid.sax_alphabet;
                              c.sim.proc_span = grid.proc_span;
                              c.weighted = w;
                              cells.push_back(c);
                            }
                  }
                }
      }
  return cells;
}

std::vector<std::string> EvaluationRow::key() const {
  return {stock,
          std::to_string(fold),
          feature_mode,
          transform,
          temporal,
          predict_value,
          std::to_string(horizon),
          model,
          mode,
          similarity_fn,
          similarity_value,
          fixer,
          std::to_string(k),
          weighted ? "1" : "0",
          std::to_string(random_count),
          std::to_string(seed)};
}

std::vector<std::string> select_random_stocks(const Universe& universe,
                                              const std::string& target, int count,
                                              std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("select_random_stocks: count must be >= 1");
  std::vector<std::string> pool;
  for (const auto& [sym, _] : universe.series_by_symbol)
    if (sym != target) pool.push_back(sym);
  if (pool.size() < static_cast<std::size_t>(count))
    throw std::runtime_error("select_random_stocks: only " + std::to_string(pool.size()) +
                             " candidates for " + std::to_string(count));
  Rng rng(seed);
  const auto m = static_cast<std::size_t>(count);
  for (std::size_t i = 0; i < m; ++i)
    std::swap(pool[i], pool[i + rng.next_below(pool.size() - i)]);
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

EvaluationRow row_skeleton(const std::string& stock, int fold, const GridCell& cell,
                           std::uint64_t master_seed) {
  EvaluationRow r;
  r.stock = stock;
  r.fold = fold;
  r.feature_mode = to_string(cell.processing.feature_mode);
  r.transform = to_string(cell.processing.transform);
  r.temporal = cell.temporal_label;
  r.predict_value = to_string(cell.processing.predict_value);
  r.horizon = cell.processing.horizon;
  r.model = to_string(cell.model_kind);
  r.mode = to_string(cell.model_mode);
  r.similarity_fn = cell.enrichment == "similar" ? to_string(cell.sim.function)
                                                 : cell.enrichment;
  if (cell.enrichment == "similar") {
    r.similarity_value = to_string(cell.sim.value_field);
    r.fixer = to_string(cell.sim.fixer);
    r.k = cell.sim.k;
    r.weighted = cell.weighted;
  }
  if (cell.enrichment == "random") r.random_count = cell.random_count;
  r.seed = master_seed;
  return r;
}

std::uint64_t cell_seed(const EvaluationRow& row) {
  std::string joined;
  for (const auto& part : row.key()) {
    joined += part;
    joined += '|';
  }
  return mix_seed(row.seed, fnv1a64(joined));
}

std::uint64_t fingerprint_train_side(const RankedPeers& ranked,
                                     const std::vector<std::string>& peer_symbols,
                                     const std::map<std::string, double>& weights,
                                     const std::vector<Instance>& train,
                                     const TrainedModel& model) {
  std::uint64_t fp = 1469598103934665603ULL;
  for (const auto& p : ranked.peers) {
    fp = fp_mix(fp, p.symbol);
    fp = fp_mix(fp, p.distance);
  }
  for (const auto& s : peer_symbols) fp = fp_mix(fp, s);
  for (const auto& [sym, w] : weights) {
    fp = fp_mix(fp, sym);
    fp = fp_mix(fp, w);
  }
  for (const auto& inst : train) {
    for (double f : inst.features) fp = fp_mix(fp, f);
    fp = fp_mix(fp, inst.target_value);
    fp = fp_mix(fp, inst.target_class);
    fp = fp_mix(fp, inst.weight);
    fp = fp_mix(fp, inst.source_symbol);
    fp = fp_mix(fp, inst.as_of_date.packed());
  }
  fp = fp_mix(fp, dump_model(model));
  return fp;
}

void run_cell(EvaluationRow& row, const Universe& universe, const StockSeries& target,
              const FoldPlan& fold, const GridCell& cell, const ExperimentGrid& grid) {
  const std::uint64_t seed = cell_seed(row);

  RankedPeers ranked;
  std::vector<std::string> peer_symbols;
  std::map<std::string, double> weights;
  if (cell.enrichment == "similar") {
    try {
      ranked = rank_top_k(target.symbol, universe, cell.sim, fold.train_range);
    } catch (const std::exception&) {
      row.error_tag = "enrichment_failed";
      return;
    }
    if (ranked.peers.empty()) {
      row.error_tag = "enrichment_failed";
      return;
    }
    for (const auto& p : ranked.peers) peer_symbols.push_back(p.symbol);
    if (cell.weighted) weights = instance_weights(ranked);
  } else if (cell.enrichment == "random") {
    try {
      peer_symbols = select_random_stocks(universe, target.symbol, cell.random_count, seed);
    } catch (const std::exception&) {
      row.error_tag = "enrichment_failed";
      return;
    }
  }

  std::vector<const StockSeries*> peers;
  for (const auto& sym : peer_symbols) peers.push_back(&universe.series(sym));

  BuiltInstances built;
  try {
    built = build_instances(target, peers, cell.processing, fold, weights);
  } catch (const std::exception&) {
    row.error_tag = "build_failed";
    return;
  }
  row.n_train = static_cast<int>(built.train.size());
  row.n_test = static_cast<int>(built.test.size());

  EnsembleConfig mc = default_config(cell.model_kind, cell.model_mode, seed);
  mc.tree_count =
      cell.model_kind == ModelKind::random_forest ? grid.rf_trees : grid.gbt_stages;
  mc.learning_rate = grid.gbt_learning_rate;
  TrainedModel model;
  try {
    model = fit_model(built.train, mc, cell.processing.predict_value);
  } catch (const std::exception&) {
    row.error_tag = "model_failed";
    return;
  }
  row.train_fingerprint = fingerprint_train_side(ranked, peer_symbols, weights,
                                                 built.train, model);

  try {
    std::vector<int> preds, truths;
    preds.reserve(built.test.size());
    truths.reserve(built.test.size());
    for (const auto& inst : built.test) {
      preds.push_back(predict_direction(model, inst));
      truths.push_back(inst.target_class);
    }
    const auto scores = evaluate_classification(preds, truths);
    row.accuracy = scores.accuracy;
    row.f1_macro = scores.f1_macro;
    const auto bt = buy_and_hold(preds, built.test);
    row.profit = bt.profit;
    if (bt.log.size() >= 2) {
      std::vector<double> returns;
      returns.reserve(bt.log.size());
      for (const auto& rec : bt.log) returns.push_back(rec.realized_return);
      row.sharpe = sharpe_ratio(returns).value;
    }
  } catch (const std::exception&) {
    row.error_tag = "eval_failed";
  }
}

}  // namespace

std::vector<EvaluationRow> run_grid(const Universe& universe, const ExperimentGrid& grid) {
  std::vector<std::string> targets =
      grid.targets.empty() ? universe.target_symbols : grid.targets;
  if (targets.empty()) throw std::invalid_argument("run_grid: no target symbols");
  const std::vector<GridCell> cells = enumerate_cells(grid);
  if (cells.empty()) throw std::invalid_argument("run_grid: empty grid");

  struct Task {
    const StockSeries* series;       // null when fold partitioning failed
    std::string stock;
    int fold_index;
    const FoldPlan* fold;
    std::size_t cell;
  };
  std::vector<Task> tasks;
  std::vector<std::vector<FoldPlan>> plans(targets.size());
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const StockSeries& s = universe.series(targets[ti]);
    bool ok = true;
    try {
      plans[ti] = partition_folds(s, grid.folds);
    } catch (const std::exception&) {
      ok = false;
    }
    for (int f = 1; f <= grid.folds; ++f)
      for (std::size_t c = 0; c < cells.size(); ++c)
        tasks.push_back({ok ? &s : nullptr, targets[ti], f,
                         ok ? &plans[ti][static_cast<std::size_t>(f - 1)] : nullptr, c});
  }

  std::vector<EvaluationRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      rows[i] = row_skeleton(t.stock, t.fold_index, cells[t.cell], grid.seed);
      if (t.series == nullptr) {
        rows[i].error_tag = "partition_failed";
        continue;
      }
      run_cell(rows[i], universe, *t.series, *t.fold, cells[t.cell], grid);
    }
  };

  const int jobs = std::max(1, grid.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string render_report(std::vector<EvaluationRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const EvaluationRow& a, const EvaluationRow& b) {
    const auto ka = a.key(), kb = b.key();
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
  });
  std::string out =
      "stock,fold,feature_mode,transform,temporal,predict_value,horizon,model,mode,"
      "similarity_fn,similarity_value,fixer,k,weighted,random_count,seed,accuracy,f1_macro,"
      "profit,sharpe,n_train,n_test,error_tag\n";
  for (const auto& r : rows) {
    for (const auto& part : r.key()) {
      out += part;
      out += ',';
    }
    out += format_double(r.accuracy) + ',' + format_double(r.f1_macro) + ',' +
           format_double(r.profit) + ',' + format_double(r.sharpe) + ',' +
           std::to_string(r.n_train) + ',' + std::to_string(r.n_test) + ',' + r.error_tag +
           '\n';
  }
  return out;
}

void write_report(const std::vector<EvaluationRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("write_report: no rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << render_report(rows);
  if (!out) throw std::runtime_error("short write: " + path);
}

}  // namespace stocksim
