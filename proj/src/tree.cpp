#include "stocksim/tree.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace stocksim {

double Tree::predict(const std::vector<double>& x) const {
  if (nodes.empty()) throw std::invalid_argument("tree predict: empty tree");
  int id = 0;
  while (nodes[static_cast<std::size_t>(id)].feature >= 0) {
    const TreeNode& n = nodes[static_cast<std::size_t>(id)];
    if (static_cast<std::size_t>(n.feature) >= x.size())
      throw std::invalid_argument("tree predict: feature count mismatch");
    id = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(id)].value;
}

namespace {

struct GroupStats {
  double w = 0.0, wy = 0.0, wyy = 0.0, w1 = 0.0;

  void add(double weight, double target, bool classification) {
    w += weight;
    if (classification) {
      if (target > 0.5) w1 += weight;
    } else {
      wy += weight * target;
      wyy += weight * target * target;
    }
  }
  void remove(double weight, double target, bool classification) {
    w -= weight;
    if (classification) {
      if (target > 0.5) w1 -= weight;
    } else {
      wy -= weight * target;
      wyy -= weight * target * target;
    }
  }
};

// Weighted SSE for regression, weight-scaled Gini for classification; both
// are additive over children, so split gain = parent - left - right.
double impurity(const GroupStats& s, bool classification) {
  if (s.w <= 0.0) return 0.0;
  if (classification) {
    const double w0 = s.w - s.w1;
    return s.w - (w0 * w0 + s.w1 * s.w1) / s.w;
  }
  return std::max(s.wyy - s.wy * s.wy / s.w, 0.0);
}

struct Work {
  std::vector<std::size_t> idx;
  int depth;
  int parent;     // -1 for root
  bool is_left;
};

struct BestSplit {
  int feature = -1;
  double threshold = 0.0;
  double children_impurity = 0.0;
};

}  // namespace

Tree fit_tree(const std::vector<const std::vector<double>*>& rows, const std::vector<double>& y,
              const std::vector<double>& w, const TreeParams& params, Rng* rng) {
  if (rows.empty()) throw std::invalid_argument("fit_tree: empty matrix");
  if (y.size() != rows.size() || w.size() != rows.size())
    throw std::invalid_argument("fit_tree: target/weight length mismatch");
  const std::size_t f = rows[0]->size();
  double total_w = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i]->size() != f) throw std::invalid_argument("fit_tree: ragged matrix");
    if (w[i] < 0.0) throw std::invalid_argument("fit_tree: negative weight");
    total_w += w[i];
  }
  if (total_w <= 0.0) throw std::invalid_argument("fit_tree: all-zero weights");
  const std::size_t min_leaf =
      static_cast<std::size_t>(std::max(params.min_samples_leaf, 1));

  std::vector<std::size_t> all_features(f);
  for (std::size_t i = 0; i < f; ++i) all_features[i] = i;

  Tree tree;
  std::vector<Work> stack;
  {
    Work root;
    root.idx.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) root.idx[i] = i;
    root.depth = 0;
    root.parent = -1;
    root.is_left = false;
    stack.push_back(std::move(root));
  }

  std::vector<std::pair<double, std::size_t>> order;  // (feature value, row)
  std::vector<std::size_t> feats;

  while (!stack.empty()) {
    Work node = std::move(stack.back());
    stack.pop_back();

    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (node.parent >= 0) {
      TreeNode& p = tree.nodes[static_cast<std::size_t>(node.parent)];
      (node.is_left ? p.left : p.right) = id;
    }

    GroupStats total;
    for (std::size_t i : node.idx) total.add(w[i], y[i], params.classification);
    const double parent_imp = impurity(total, params.classification);

    auto make_leaf = [&] {
      TreeNode& n = tree.nodes[static_cast<std::size_t>(id)];
      n.feature = -1;
      n.value = params.classification ? (total.w > 0.0 ? total.w1 / total.w : 0.0)
                                      : (total.w > 0.0 ? total.wy / total.w : 0.0);
    };

    const bool depth_stop = params.max_depth >= 0 && node.depth >= params.max_depth;
    if (depth_stop || node.idx.size() < 2 * min_leaf || parent_imp <= 0.0) {
      make_leaf();
      continue;
    }

    // Candidate features, ascending so the tie rule is by construction.
    if (params.features_per_split > 0 &&
        static_cast<std::size_t>(params.features_per_split) < f) {
      if (rng == nullptr)
        throw std::invalid_argument("fit_tree: feature subsampling needs an rng");
      feats = all_features;
      const auto m = static_cast<std::size_t>(params.features_per_split);
      for (std::size_t i = 0; i < m; ++i)
        std::swap(feats[i], feats[i + rng->next_below(f - i)]);
      feats.resize(m);
      std::sort(feats.begin(), feats.end());
    } else {
      feats = all_features;
    }

    BestSplit best;
    double best_gain = 0.0;
    for (std::size_t feat : feats) {
      order.clear();
      for (std::size_t i : node.idx) order.emplace_back((*rows[i])[feat], i);
      std::sort(order.begin(), order.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      GroupStats left, right = total;
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        const std::size_t row = order[pos].second;
        left.add(w[row], y[row], params.classification);
        right.remove(w[row], y[row], params.classification);
        const double v = order[pos].first, nv = order[pos + 1].first;
        if (v == nv) continue;  // split only between distinct values
        if (pos + 1 < min_leaf || order.size() - pos - 1 < min_leaf) continue;
        const double child_imp = impurity(left, params.classification) +
                                 impurity(right, params.classification);
        const double gain = parent_imp - child_imp;
        if (gain > best_gain) {  // strict: first (lowest feature/threshold) wins ties
          double mid = v + (nv - v) / 2.0;
          if (!(mid < nv)) mid = v;  // keep the partition consistent with <=
          best.feature = static_cast<int>(feat);
          best.threshold = mid;
          best.children_impurity = child_imp;
          best_gain = gain;
        }
      }
    }

    if (best.feature < 0 || best_gain <= 1e-12 * parent_imp) {
      make_leaf();
      continue;
    }

    Work left_child, right_child;
    for (std::size_t i : node.idx)
      ((*rows[i])[static_cast<std::size_t>(best.feature)] <= best.threshold ? left_child
                                                                            : right_child)
          .idx.push_back(i);
    TreeNode& n = tree.nodes[static_cast<std::size_t>(id)];
    n.feature = best.feature;
    n.threshold = best.threshold;
    left_child.depth = right_child.depth = node.depth + 1;
    left_child.parent = right_child.parent = id;
    left_child.is_left = true;
    right_child.is_left = false;
    stack.push_back(std::move(right_child));  // left on top: children get DFS ids
    stack.push_back(std::move(left_child));
  }
  return tree;
}

std::string dump_tree(const Tree& t) {
  std::string out;
  char buf[160];
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TreeNode& n = t.nodes[i];
    std::snprintf(buf, sizeof(buf), "%zu %d %.17g %d %d %.17g\n", i, n.feature, n.threshold,
                  n.left, n.right, n.value);
    out += buf;
  }
  return out;
}

}  // namespace stocksim
