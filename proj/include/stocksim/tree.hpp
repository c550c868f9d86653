#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stocksim/mathutil.hpp"

namespace stocksim {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf payload: mean target, or p(increase) for classification
};

struct Tree {
  std::vector<TreeNode> nodes;

  double predict(const std::vector<double>& x) const;
};

struct TreeParams {
  bool classification = false;
  int max_depth = -1;           // -1 = unbounded
  int min_samples_leaf = 1;     // counted in rows, not weight
  int features_per_split = -1;  // -1 = consider every feature
};

// Greedy CART-style fit minimizing weighted squared error (regression) or
// weighted Gini impurity (classification). Thresholds are midpoints between
// consecutive distinct values, rows with x <= threshold go left, and ties
// between equally good splits resolve to the lowest feature index, then the
// lowest threshold. `rng` draws the per-split feature subsample when
// features_per_split is set; splits run over features in ascending index
// order either way, so fits are deterministic.
Tree fit_tree(const std::vector<const std::vector<double>*>& rows, const std::vector<double>& y,
              const std::vector<double>& w, const TreeParams& params, Rng* rng = nullptr);

// One node per line: id, feature, threshold, left, right, value.
std::string dump_tree(const Tree& t);

}  // namespace stocksim
