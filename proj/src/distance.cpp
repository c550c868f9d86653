#include "stocksim/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stocksim/stats.hpp"

namespace stocksim {

double dist_euclidean(const AlignedPair& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    const double d = p.a[i] - p.b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double dist_pearson(const AlignedPair& p) {
  return 1.0 - std::clamp(pearson_r(p.a, p.b), -1.0, 1.0);
}

double dist_dtw(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("dtw: empty side");
  const std::size_t n = a.size(), m = b.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t j = 0; j < m; ++j)
    prev[j] = std::abs(a[0] - b[j]) + (j ? prev[j - 1] : 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cur[0] = prev[0] + std::abs(a[i] - b[0]);
    for (std::size_t j = 1; j < m; ++j)
      cur[j] = std::abs(a[i] - b[j]) + std::min({prev[j], cur[j - 1], prev[j - 1]});
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

double dist_dtw(const AlignedPair& p) { return dist_dtw(p.a, p.b); }

double dist_mindist(const std::vector<int>& g, const std::vector<int>& h, const SaxCodec& codec,
                    std::size_t n) {
  if (!codec.fitted()) throw std::invalid_argument("mindist: codec not fitted");
  if (g.size() != h.size()) throw std::invalid_argument("mindist: word length mismatch");
  if (g.empty()) throw std::invalid_argument("mindist: empty words");
  const std::size_t w = g.size();
  double s = 0.0;
  for (std::size_t i = 0; i < w; ++i) {
    const int r = g[i], c = h[i];
    if (r < 0 || c < 0 || r >= codec.alphabet_size || c >= codec.alphabet_size)
      throw std::invalid_argument("mindist: symbol outside the codec alphabet");
    if (std::abs(r - c) <= 1) continue;
    const auto hi = static_cast<std::size_t>(std::max(r, c));
    const auto lo = static_cast<std::size_t>(std::min(r, c));
    const double cell = codec.breakpoints[hi - 1] - codec.breakpoints[lo];
    s += cell * cell;
  }
  return std::sqrt(static_cast<double>(n) / static_cast<double>(w)) * std::sqrt(s);
}

double dist_cointegration(const AlignedPair& p) { return engle_granger(p.a, p.b).pvalue; }

}  // namespace stocksim
