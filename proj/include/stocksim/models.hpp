#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stocksim/instances.hpp"
#include "stocksim/tree.hpp"

namespace stocksim {

enum class ModelKind { random_forest, gradient_boosting };
enum class ModelMode { classifier, regressor };

ModelKind model_kind_from_string(const std::string& s);
ModelMode model_mode_from_string(const std::string& s);
std::string to_string(ModelKind v);
std::string to_string(ModelMode v);

struct EnsembleConfig {
  ModelKind kind = ModelKind::random_forest;
  ModelMode mode = ModelMode::classifier;
  int tree_count = 100;
  double learning_rate = 0.02;   // gradient boosting only
  int max_depth = -1;            // forest grows out; boosting uses shallow trees
  int min_samples_leaf = 2;
  bool feature_subsample = true; // forest: sqrt(features) per split
  double class_threshold = 0.5;  // classifier score above this = increase
  std::uint64_t seed = 0;
};

// The per-kind defaults: forest = 100 unpruned trees, min leaf 2, sqrt
// feature subsampling; boosting = 100 depth-3 stages at learning rate 0.02.
EnsembleConfig default_config(ModelKind kind, ModelMode mode, std::uint64_t seed);

struct TrainedModel {
  EnsembleConfig config;
  std::vector<Tree> trees;
  std::size_t feature_count = 0;
  double base_score = 0.0;  // boosting prior (train mean or log-odds)
  PredictValue predict_value = PredictValue::close;
  std::vector<double> train_loss_per_stage;  // boosting: weighted MSE after each stage
};

// Fit on the train matrix; classifier targets are the instance classes,
// regressor targets the instance target values. Sample weights reach the
// forest through weighted bootstrap resampling and the boosting stages
// directly. Deterministic for a fixed seed/config/input order.
TrainedModel fit_model(const std::vector<Instance>& train, const EnsembleConfig& config,
                       PredictValue predict_value);

// Regressor: the numeric prediction. Classifier: a score in [0,1]
// (vote fraction for the forest, sigmoid link for boosting).
double predict_score(const TrainedModel& m, const std::vector<double>& features);

// Final increase(1)/decrease(0) call: classifiers threshold their score,
// regressors compare the prediction against the instance's direction
// threshold (0 for rate-of-change targets, the normalized current close
// otherwise). Both tie-break to decrease.
int predict_direction(const TrainedModel& m, const Instance& instance);

std::string dump_model(const TrainedModel& m);

}  // namespace stocksim
