#include "stocksim/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stocksim {

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "random_forest") return ModelKind::random_forest;
  if (s == "gradient_boosting") return ModelKind::gradient_boosting;
  throw std::invalid_argument("unknown model kind: " + s);
}

ModelMode model_mode_from_string(const std::string& s) {
  if (s == "classifier") return ModelMode::classifier;
  if (s == "regressor") return ModelMode::regressor;
  throw std::invalid_argument("unknown model mode: " + s);
}

std::string to_string(ModelKind v) {
  return v == ModelKind::random_forest ? "random_forest" : "gradient_boosting";
}
std::string to_string(ModelMode v) {
  return v == ModelMode::classifier ? "classifier" : "regressor";
}

EnsembleConfig default_config(ModelKind kind, ModelMode mode, std::uint64_t seed) {
  EnsembleConfig c;
  c.kind = kind;
  c.mode = mode;
  c.seed = seed;
  if (kind == ModelKind::gradient_boosting) {
    c.max_depth = 3;
    c.min_samples_leaf = 1;
    c.feature_subsample = false;
  }
  return c;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct TrainView {
  std::vector<const std::vector<double>*> rows;
  std::vector<double> y;
  std::vector<double> w;
  double total_w = 0.0;
};

TrainView make_view(const std::vector<Instance>& train, ModelMode mode) {
  if (train.empty()) throw std::invalid_argument("fit_model: empty train matrix");
  TrainView v;
  v.rows.reserve(train.size());
  v.y.reserve(train.size());
  v.w.reserve(train.size());
  const std::size_t f = train[0].features.size();
  if (f == 0) throw std::invalid_argument("fit_model: instances have no features");
  for (const auto& inst : train) {
    if (inst.features.size() != f)
      throw std::invalid_argument("fit_model: inconsistent feature widths");
    if (inst.weight < 0.0) throw std::invalid_argument("fit_model: negative instance weight");
    v.rows.push_back(&inst.features);
    v.y.push_back(mode == ModelMode::classifier ? static_cast<double>(inst.target_class)
                                                : inst.target_value);
    v.w.push_back(inst.weight);
    v.total_w += inst.weight;
  }
  if (v.total_w <= 0.0) throw std::invalid_argument("fit_model: all-zero instance weights");
  return v;
}

TrainedModel fit_forest(const TrainView& view, const EnsembleConfig& config) {
  TrainedModel m;
  m.config = config;
  m.feature_count = view.rows[0]->size();

  std::vector<double> cumulative(view.w.size());
  double run = 0.0;
  for (std::size_t i = 0; i < view.w.size(); ++i) cumulative[i] = run += view.w[i];

  TreeParams params;
  params.classification = config.mode == ModelMode::classifier;
  params.max_depth = config.max_depth;
  params.min_samples_leaf = config.min_samples_leaf;
  const auto f = m.feature_count;
  params.features_per_split =
      config.feature_subsample && f > 1
          ? std::max(1, static_cast<int>(std::sqrt(static_cast<double>(f))))
          : -1;

  const std::size_t n = view.rows.size();
  std::vector<const std::vector<double>*> rows(n);
  std::vector<double> y(n), w(n, 1.0);
  for (int t = 0; t < config.tree_count; ++t) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(t)));
    for (std::size_t i = 0; i < n; ++i) {
      // Weighted bootstrap: draw a point on the cumulative weight line.
      const double u = rng.next_double() * view.total_w;
      const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
      const auto pick = std::min<std::size_t>(
          static_cast<std::size_t>(it - cumulative.begin()), n - 1);
      rows[i] = view.rows[pick];
      y[i] = view.y[pick];
    }
    m.trees.push_back(fit_tree(rows, y, w, params, &rng));
  }
  return m;
}

TrainedModel fit_boosting(const TrainView& view, const EnsembleConfig& config) {
  TrainedModel m;
  m.config = config;
  m.feature_count = view.rows[0]->size();
  const std::size_t n = view.rows.size();
  const bool classify = config.mode == ModelMode::classifier;

  double wy = 0.0;
  for (std::size_t i = 0; i < n; ++i) wy += view.w[i] * view.y[i];
  const double mean = wy / view.total_w;
  if (classify) {
    const double p = std::clamp(mean, 1e-12, 1.0 - 1e-12);
    m.base_score = std::log(p / (1.0 - p));
  } else {
    m.base_score = mean;
  }

  TreeParams params;
  params.classification = false;  // stages always fit numeric residuals
  params.max_depth = config.max_depth;
  params.min_samples_leaf = config.min_samples_leaf;

  std::vector<double> score(n, m.base_score);
  std::vector<double> residual(n);
  for (int stage = 0; stage < config.tree_count; ++stage) {
    for (std::size_t i = 0; i < n; ++i)
      residual[i] = view.y[i] - (classify ? sigmoid(score[i]) : score[i]);
    Tree tree = fit_tree(view.rows, residual, view.w, params);

    if (classify) {
      // Newton leaf update: sum w*(y-p) over sum w*p*(1-p) per leaf.
      std::vector<double> num(tree.nodes.size(), 0.0), den(tree.nodes.size(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        int id = 0;
        while (tree.nodes[static_cast<std::size_t>(id)].feature >= 0) {
          const TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
          id = (*view.rows[i])[static_cast<std::size_t>(node.feature)] <= node.threshold
                   ? node.left
                   : node.right;
        }
        const double p = sigmoid(score[i]);
        num[static_cast<std::size_t>(id)] += view.w[i] * residual[i];
        den[static_cast<std::size_t>(id)] += view.w[i] * p * (1.0 - p);
      }
      for (std::size_t id = 0; id < tree.nodes.size(); ++id)
        if (tree.nodes[id].feature < 0)
          tree.nodes[id].value = num[id] / std::max(den[id], 1e-12);
    }

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      score[i] += config.learning_rate * tree.predict(*view.rows[i]);
      const double fit = classify ? sigmoid(score[i]) : score[i];
      loss += view.w[i] * (view.y[i] - fit) * (view.y[i] - fit);
    }
    m.train_loss_per_stage.push_back(loss / view.total_w);
    m.trees.push_back(std::move(tree));
  }
  return m;
}

}  // namespace

TrainedModel fit_model(const std::vector<Instance>& train, const EnsembleConfig& config,
                       PredictValue predict_value) {
  if (config.tree_count < 0) throw std::invalid_argument("fit_model: negative tree count");
  const TrainView view = make_view(train, config.mode);
  TrainedModel m = config.kind == ModelKind::random_forest ? fit_forest(view, config)
                                                           : fit_boosting(view, config);
  m.predict_value = predict_value;
  return m;
}

double predict_score(const TrainedModel& m, const std::vector<double>& features) {
  if (features.size() != m.feature_count)
    throw std::invalid_argument("predict: feature count mismatch");
  if (m.config.kind == ModelKind::gradient_boosting) {
    double f = m.base_score;
    for (const Tree& t : m.trees) f += m.config.learning_rate * t.predict(features);
    return m.config.mode == ModelMode::classifier ? sigmoid(f) : f;
  }
  if (m.trees.empty()) throw std::invalid_argument("predict: forest has no trees");
  if (m.config.mode == ModelMode::classifier) {
    int votes = 0;
    for (const Tree& t : m.trees)
      if (t.predict(features) > m.config.class_threshold) ++votes;
    return static_cast<double>(votes) / static_cast<double>(m.trees.size());
  }
  double sum = 0.0;
  for (const Tree& t : m.trees) sum += t.predict(features);
  return sum / static_cast<double>(m.trees.size());
}

int predict_direction(const TrainedModel& m, const Instance& instance) {
  const double s = predict_score(m, instance.features);
  if (m.config.mode == ModelMode::classifier) return s > m.config.class_threshold ? 1 : 0;
  return s > instance.direction_threshold ? 1 : 0;
}

std::string dump_model(const TrainedModel& m) {
  std::string out = to_string(m.config.kind) + " " + to_string(m.config.mode) + " base=";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", m.base_score);
  out += buf;
  out += "\n";
  for (std::size_t i = 0; i < m.trees.size(); ++i) {
    out += "tree " + std::to_string(i) + "\n";
    out += dump_tree(m.trees[i]);
  }
  return out;
}

}  // namespace stocksim
