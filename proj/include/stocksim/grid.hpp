#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stocksim/grid_config.hpp"
#include "stocksim/instances.hpp"
#include "stocksim/market_data.hpp"
#include "stocksim/models.hpp"
#include "stocksim/similarity.hpp"

namespace stocksim {

// One leaf of the configuration tree: processing x model x peer selection.
struct GridCell {
  ProcessingConfig processing;
  std::string temporal_label;  // "timepoint" | "window<N>"
  ModelKind model_kind = ModelKind::random_forest;
  ModelMode model_mode = ModelMode::classifier;
  std::string enrichment = "none";  // none | similar | random
  SimilarityConfig sim;             // meaningful when enrichment == similar
  bool weighted = false;
  int random_count = 0;             // meaningful when enrichment == random
};

// Cartesian product of the grid axes. Window temporal modes are attached to
// univariate features only; that constraint is structural, not a failure.
std::vector<GridCell> enumerate_cells(const ExperimentGrid& grid);

struct EvaluationRow {
  std::string stock;
  int fold = 0;
  std::string feature_mode, transform, temporal, predict_value;
  int horizon = 1;
  std::string model, mode;
  std::string similarity_fn;     // none | <function> | random
  std::string similarity_value;  // empty unless enrichment == similar
  std::string fixer;             // empty unless enrichment == similar
  int k = 0;
  bool weighted = false;
  int random_count = 0;
  std::uint64_t seed = 0;

  double accuracy = 0.0, f1_macro = 0.0, profit = 0.0, sharpe = 0.0;
  int n_train = 0, n_test = 0;
  std::string error_tag;  // empty = success; otherwise the failed stage

  // Digest of everything fitted from train data (peer ranking, train matrix,
  // model dump). Not written to the CSV; exists so a leakage probe can assert
  // that perturbing test-range data changes nothing trained.
  std::uint64_t train_fingerprint = 0;

  // The sixteen key columns as strings, in CSV order.
  std::vector<std::string> key() const;
};

// Seeded uniform sample of `count` non-target symbols, without replacement,
// returned in symbol order.
std::vector<std::string> select_random_stocks(const Universe& universe,
                                              const std::string& target, int count,
                                              std::uint64_t seed);

// Evaluate every (target stock, fold, cell) combination. Failures never
// abort the grid: each failed combination yields a row whose error_tag names
// the stage (partition_failed, enrichment_failed, build_failed, model_failed,
// eval_failed). Row count is exactly |targets| x folds x |cells|.
std::vector<EvaluationRow> run_grid(const Universe& universe, const ExperimentGrid& grid);

// Rows sorted lexicographically by their key columns, rendered with the
// fixed header and %.10g floats; identical inputs give identical bytes.
std::string render_report(std::vector<EvaluationRow> rows);
void write_report(const std::vector<EvaluationRow>& rows, const std::string& path);

}  // namespace stocksim
