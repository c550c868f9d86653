#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stocksim/instances.hpp"
#include "stocksim/models.hpp"
#include "stocksim/similarity.hpp"

namespace stocksim {

// The experiment configuration tree: each list is one axis and the cells are
// their cartesian product (window temporal modes pair only with univariate
// features). `enrichments` selects which peer-selection branches exist:
// "none" (no peers), "similar" (the similarity axis), "random" (seeded
// random peers, one cell per random_count).
struct ExperimentGrid {
  int folds = 5;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<std::string> targets;  // empty = every symbol in the universe

  std::vector<FeatureMode> feature_modes = {FeatureMode::univariate};
  std::vector<Transform> transforms = {Transform::raw};
  // (mode, window size); size is ignored for timepoint
  std::vector<std::pair<Temporal, int>> temporals = {{Temporal::timepoint, 0}};
  std::vector<PredictValue> predict_values = {PredictValue::close};
  std::vector<int> horizons = {1};

  std::vector<ModelKind> model_kinds = {ModelKind::random_forest};
  std::vector<ModelMode> model_modes = {ModelMode::classifier};

  std::vector<std::string> enrichments = {"none"};
  std::vector<SimilarityFn> similarity_fns = {SimilarityFn::euclidean};
  std::vector<ValueField> similarity_values = {ValueField::close};
  std::vector<Fixer> fixers = {Fixer::time_join};
  std::vector<int> ks = {10};
  std::vector<bool> weighted = {false};
  std::vector<int> random_counts = {50};

  // Shared knobs
  int delay = 1;
  double pip_fraction = 0.10;
  int sax_alphabet = 8;
  int proc_span = 1;
  int rsi_period = 14;
  int rf_trees = 100;
  int gbt_stages = 100;
  double gbt_learning_rate = 0.02;
};

// Plain-text `key = value` file; lists are comma-separated, blank lines and
// '#' comments are skipped, unknown keys are errors.
ExperimentGrid parse_grid_config_text(const std::string& text);
ExperimentGrid parse_grid_config(const std::string& path);

}  // namespace stocksim
