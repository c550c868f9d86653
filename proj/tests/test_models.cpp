#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "stocksim/mathutil.hpp"
#include "stocksim/models.hpp"
#include "stocksim/tree.hpp"

using namespace stocksim;

namespace {

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  std::vector<double> w;

  std::vector<const std::vector<double>*> rows() const {
    std::vector<const std::vector<double>*> r;
    for (const auto& row : x) r.push_back(&row);
    return r;
  }
};

// Exhaustive depth-1 oracle: try every feature and every midpoint between
// consecutive distinct values, score by weighted SSE, prefer lower feature
// then lower threshold on ties. Returns (feature, threshold).
std::pair<int, double> best_stump_oracle(const Dataset& d) {
  const std::size_t nf = d.x[0].size();
  double best_sse = std::numeric_limits<double>::infinity();
  int best_f = -1;
  double best_thr = 0.0;
  for (std::size_t f = 0; f < nf; ++f) {
    std::vector<double> vals;
    for (const auto& row : d.x) vals.push_back(row[f]);
    auto sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      const double thr = (sorted[i - 1] + sorted[i]) / 2.0;
      double wl = 0, wyl = 0, wr = 0, wyr = 0;
      for (std::size_t r = 0; r < d.x.size(); ++r) {
        if (vals[r] <= thr) {
          wl += d.w[r];
          wyl += d.w[r] * d.y[r];
        } else {
          wr += d.w[r];
          wyr += d.w[r] * d.y[r];
        }
      }
      const double ml = wyl / wl, mr = wyr / wr;
      double sse = 0.0;
      for (std::size_t r = 0; r < d.x.size(); ++r) {
        const double m = vals[r] <= thr ? ml : mr;
        sse += d.w[r] * (d.y[r] - m) * (d.y[r] - m);
      }
      if (sse < best_sse - 1e-12) {
        best_sse = sse;
        best_f = static_cast<int>(f);
        best_thr = thr;
      }
    }
  }
  return {best_f, best_thr};
}

Dataset random_regression(int n, int nf, std::uint64_t seed) {
  Dataset d;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row;
    for (int f = 0; f < nf; ++f) row.push_back(rng.next_normal());
    d.y.push_back(row[0] * 2.0 - row[nf - 1] + 0.2 * rng.next_normal());
    d.w.push_back(1.0);
    d.x.push_back(row);
  }
  return d;
}

// Two well-separated gaussian blobs, labels 0/1.
std::vector<Instance> blob_instances(int n, std::uint64_t seed) {
  std::vector<Instance> out;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    Instance inst;
    const int cls = i % 2;
    const double cx = cls ? 2.5 : -2.5;
    inst.features = {cx + rng.next_normal() * 0.7, -cx + rng.next_normal() * 0.7,
                     rng.next_normal()};
    inst.target_class = cls;
    inst.target_value = static_cast<double>(cls);
    out.push_back(inst);
  }
  return out;
}

}  // namespace

TEST_CASE("a depth-1 tree picks the exhaustively best split") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    auto d = random_regression(40, 3, seed);
    TreeParams p;
    p.max_depth = 1;
    const auto tree = fit_tree(d.rows(), d.y, d.w, p);
    const auto [want_f, want_thr] = best_stump_oracle(d);
    REQUIRE(tree.nodes.size() == 3);
    CAPTURE(seed);
    CHECK(tree.nodes[0].feature == want_f);
    CHECK(tree.nodes[0].threshold == doctest::Approx(want_thr).epsilon(1e-12));
  }
}

TEST_CASE("split ties resolve to the lowest feature, then the lowest threshold") {
  // Feature 1 duplicates feature 0, so either would give the same gain; the
  // tie must go to feature 0.
  Dataset d;
  d.x = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}};
  d.y = {0.0, 0.0, 10.0, 10.0};
  d.w = {1.0, 1.0, 1.0, 1.0};
  TreeParams p;
  p.max_depth = 1;
  const auto tree = fit_tree(d.rows(), d.y, d.w, p);
  CHECK(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == doctest::Approx(1.5));
}

TEST_CASE("leaves respect the minimum row count") {
  auto d = random_regression(30, 2, 99);
  for (int min_leaf : {1, 3, 7}) {
    TreeParams p;
    p.min_samples_leaf = min_leaf;
    const auto tree = fit_tree(d.rows(), d.y, d.w, p);
    // Count rows reaching each leaf.
    std::vector<int> counts(tree.nodes.size(), 0);
    for (const auto& row : d.x) {
      std::size_t node = 0;
      while (tree.nodes[node].feature >= 0) {
        const auto& nd = tree.nodes[node];
        node = static_cast<std::size_t>(
            row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right);
      }
      ++counts[node];
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i)
      if (tree.nodes[i].feature < 0) CHECK(counts[i] >= min_leaf);
  }
}

TEST_CASE("a pure node stops splitting") {
  Dataset d;
  d.x = {{1.0}, {2.0}, {3.0}, {4.0}};
  d.y = {5.0, 5.0, 5.0, 5.0};
  d.w = {1.0, 1.0, 1.0, 1.0};
  const auto tree = fit_tree(d.rows(), d.y, d.w, TreeParams{});
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].feature == -1);
  CHECK(tree.nodes[0].value == doctest::Approx(5.0));
}

TEST_CASE("doubling every weight leaves the fitted tree unchanged") {
  auto d = random_regression(50, 3, 17);
  TreeParams p;
  p.min_samples_leaf = 2;
  const auto t1 = fit_tree(d.rows(), d.y, d.w, p);
  for (auto& w : d.w) w *= 2.0;
  const auto t2 = fit_tree(d.rows(), d.y, d.w, p);
  CHECK(dump_tree(t1) == dump_tree(t2));
}

TEST_CASE("duplicating a row equals doubling its weight") {
  auto d = random_regression(25, 2, 18);
  TreeParams p;
  p.min_samples_leaf = 1;  // row-count limits would see the copies
  auto doubled = d;
  doubled.w[7] = 2.0;
  auto duplicated = d;
  duplicated.x.push_back(d.x[7]);
  duplicated.y.push_back(d.y[7]);
  duplicated.w.push_back(1.0);
  const auto t1 = fit_tree(doubled.rows(), doubled.y, doubled.w, p);
  const auto t2 = fit_tree(duplicated.rows(), duplicated.y, duplicated.w, p);
  CHECK(dump_tree(t1) == dump_tree(t2));
}

TEST_CASE("classification trees separate labeled blobs") {
  const auto train = blob_instances(200, 7);
  Dataset d;
  for (const auto& inst : train) {
    d.x.push_back(inst.features);
    d.y.push_back(static_cast<double>(inst.target_class));
    d.w.push_back(1.0);
  }
  TreeParams p;
  p.classification = true;
  const auto tree = fit_tree(d.rows(), d.y, d.w, p);
  int correct = 0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double score = tree.predict(d.x[i]);
    if ((score > 0.5 ? 1 : 0) == static_cast<int>(d.y[i])) ++correct;
  }
  CHECK(correct == 200);  // a fully grown tree memorizes its train set
}

TEST_CASE("tree input validation") {
  Dataset d = random_regression(10, 2, 20);
  CHECK_THROWS(fit_tree({}, {}, {}, TreeParams{}));
  auto bad_y = d.y;
  bad_y.pop_back();
  CHECK_THROWS(fit_tree(d.rows(), bad_y, d.w, TreeParams{}));
  auto bad_w = d.w;
  bad_w[0] = -1.0;
  CHECK_THROWS(fit_tree(d.rows(), d.y, bad_w, TreeParams{}));
  std::vector<double> zero_w(d.w.size(), 0.0);
  CHECK_THROWS(fit_tree(d.rows(), d.y, zero_w, TreeParams{}));
  auto ragged = d.x;
  ragged[3].pop_back();
  std::vector<const std::vector<double>*> rows;
  for (const auto& r : ragged) rows.push_back(&r);
  CHECK_THROWS(fit_tree(rows, d.y, d.w, TreeParams{}));
}

TEST_CASE("forest fits are deterministic in the seed") {
  const auto train = blob_instances(120, 8);
  auto cfg = default_config(ModelKind::random_forest, ModelMode::classifier, 42);
  cfg.tree_count = 12;
  const auto m1 = fit_model(train, cfg, PredictValue::close);
  const auto m2 = fit_model(train, cfg, PredictValue::close);
  CHECK(dump_model(m1) == dump_model(m2));

  cfg.seed = 43;
  const auto m3 = fit_model(train, cfg, PredictValue::close);
  CHECK(dump_model(m1) != dump_model(m3));
}

TEST_CASE("forest classifier separates blobs and scores stay in range") {
  const auto train = blob_instances(300, 9);
  const auto test = blob_instances(100, 10);
  auto cfg = default_config(ModelKind::random_forest, ModelMode::classifier, 1);
  cfg.tree_count = 30;
  const auto m = fit_model(train, cfg, PredictValue::close);
  int correct = 0;
  for (const auto& inst : test) {
    const double score = predict_score(m, inst.features);
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
    if (predict_direction(m, inst) == inst.target_class) ++correct;
  }
  CHECK(correct >= 95);
}

TEST_CASE("forest regressor tracks a smooth function") {
  std::vector<Instance> train;
  Rng rng(11);
  for (int i = 0; i < 400; ++i) {
    Instance inst;
    const double x = rng.next_double() * 6.0 - 3.0;
    inst.features = {x};
    inst.target_value = x * x;
    train.push_back(inst);
  }
  auto cfg = default_config(ModelKind::random_forest, ModelMode::regressor, 2);
  cfg.tree_count = 25;
  const auto m = fit_model(train, cfg, PredictValue::proc);
  double err = 0.0;
  for (double x = -2.5; x <= 2.5; x += 0.25) {
    const double got = predict_score(m, {x});
    err = std::max(err, std::abs(got - x * x));
  }
  CHECK(err < 1.0);
}

TEST_CASE("boosted regressor loss decreases monotonically stage by stage") {
  std::vector<Instance> train;
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    Instance inst;
    const double x = rng.next_double() * 4.0;
    inst.features = {x};
    inst.target_value = std::sin(x) + 0.05 * rng.next_normal();
    train.push_back(inst);
  }
  auto cfg = default_config(ModelKind::gradient_boosting, ModelMode::regressor, 3);
  cfg.tree_count = 60;
  const auto m = fit_model(train, cfg, PredictValue::proc);
  REQUIRE(m.train_loss_per_stage.size() == 60);
  for (std::size_t i = 1; i < m.train_loss_per_stage.size(); ++i)
    CHECK(m.train_loss_per_stage[i] <= m.train_loss_per_stage[i - 1] + 1e-12);
  CHECK(m.train_loss_per_stage.back() < m.train_loss_per_stage.front());
}

TEST_CASE("boosted regressor starts from the weighted train mean") {
  std::vector<Instance> train;
  for (int i = 0; i < 10; ++i) {
    Instance inst;
    inst.features = {static_cast<double>(i)};
    inst.target_value = static_cast<double>(i % 3);
    inst.weight = (i < 5) ? 2.0 : 1.0;
    train.push_back(inst);
  }
  double wsum = 0.0, wy = 0.0;
  for (const auto& inst : train) {
    wsum += inst.weight;
    wy += inst.weight * inst.target_value;
  }
  auto cfg = default_config(ModelKind::gradient_boosting, ModelMode::regressor, 4);
  cfg.tree_count = 0;  // prior only
  const auto m = fit_model(train, cfg, PredictValue::proc);
  CHECK(m.base_score == doctest::Approx(wy / wsum));
  CHECK(predict_score(m, {0.0}) == doctest::Approx(wy / wsum));
}

TEST_CASE("boosted classifier learns the blobs through the sigmoid link") {
  const auto train = blob_instances(300, 13);
  const auto test = blob_instances(100, 14);
  auto cfg = default_config(ModelKind::gradient_boosting, ModelMode::classifier, 5);
  cfg.tree_count = 40;
  const auto m = fit_model(train, cfg, PredictValue::close);
  REQUIRE(m.train_loss_per_stage.size() == 40);
  int correct = 0;
  for (const auto& inst : test) {
    const double score = predict_score(m, inst.features);
    CHECK(score > 0.0);
    CHECK(score < 1.0);
    if (predict_direction(m, inst) == inst.target_class) ++correct;
  }
  CHECK(correct >= 95);
}

TEST_CASE("a single-class training set still yields a sane classifier") {
  std::vector<Instance> train;
  Rng rng(15);
  for (int i = 0; i < 40; ++i) {
    Instance inst;
    inst.features = {rng.next_normal()};
    inst.target_class = 1;
    inst.target_value = 1.0;
    train.push_back(inst);
  }
  for (auto kind : {ModelKind::random_forest, ModelKind::gradient_boosting}) {
    auto cfg = default_config(kind, ModelMode::classifier, 6);
    cfg.tree_count = 10;
    const auto m = fit_model(train, cfg, PredictValue::close);
    const double score = predict_score(m, {0.0});
    CHECK(score > 0.5);  // everything it ever saw went up
    CHECK(score <= 1.0);
  }
}

TEST_CASE("direction calls compare against each instance's own threshold") {
  // Hand-built "model": boosting with zero stages predicts its base score
  // everywhere, so direction is decided purely by the threshold.
  std::vector<Instance> train;
  for (int i = 0; i < 4; ++i) {
    Instance inst;
    inst.features = {static_cast<double>(i)};
    inst.target_value = 2.0;
    train.push_back(inst);
  }
  auto cfg = default_config(ModelKind::gradient_boosting, ModelMode::regressor, 7);
  cfg.tree_count = 0;
  const auto m = fit_model(train, cfg, PredictValue::close);
  CHECK(m.base_score == doctest::Approx(2.0));

  Instance probe;
  probe.features = {0.0};
  probe.direction_threshold = 1.5;
  CHECK(predict_direction(m, probe) == 1);  // 2.0 > 1.5
  probe.direction_threshold = 2.0;
  CHECK(predict_direction(m, probe) == 0);  // ties break to decrease
  probe.direction_threshold = 2.5;
  CHECK(predict_direction(m, probe) == 0);
}

TEST_CASE("prediction rejects feature-count mismatches") {
  const auto train = blob_instances(50, 16);
  auto cfg = default_config(ModelKind::random_forest, ModelMode::classifier, 8);
  cfg.tree_count = 5;
  const auto m = fit_model(train, cfg, PredictValue::close);
  CHECK_THROWS(predict_score(m, {1.0}));  // trained on 3 features
  CHECK_THROWS(fit_model({}, cfg, PredictValue::close));
}

TEST_CASE("model dumps identify the configuration and every tree") {
  const auto train = blob_instances(60, 17);
  auto cfg = default_config(ModelKind::random_forest, ModelMode::classifier, 9);
  cfg.tree_count = 3;
  const auto m = fit_model(train, cfg, PredictValue::close);
  const auto dump = dump_model(m);
  CHECK(dump.find("random_forest") != std::string::npos);
  CHECK(dump.find("classifier") != std::string::npos);
  CHECK(m.trees.size() == 3);
}
