#include "stocksim/segment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stocksim/mathutil.hpp"

namespace stocksim {

std::vector<double> paa(const std::vector<double>& x, int w) {
  const std::size_t len = x.size();
  if (w < 1 || static_cast<std::size_t>(w) > len)
    throw std::invalid_argument("paa: segment count out of range [1, length]");
  const auto bins = static_cast<std::size_t>(w);
  if (bins == len) return x;

  // Work on an integer axis of len*bins units: sample j spans [j*bins, (j+1)*bins),
  // bin i spans [i*len, (i+1)*len), so overlaps are exact.
  std::vector<double> out(bins, 0.0);
  for (std::size_t j = 0; j < len; ++j) {
    const std::size_t lo = j * bins, hi = (j + 1) * bins;
    for (std::size_t i = lo / len; i * len < hi && i < bins; ++i) {
      const std::size_t a = std::max(lo, i * len), b = std::min(hi, (i + 1) * len);
      if (b > a) out[i] += x[j] * static_cast<double>(b - a);
    }
  }
  for (auto& v : out) v /= static_cast<double>(len);
  return out;
}

SaxCodec make_sax_codec(int alphabet_size) {
  if (alphabet_size < 2) throw std::invalid_argument("sax codec: alphabet size must be >= 2");
  SaxCodec c;
  c.alphabet_size = alphabet_size;
  c.breakpoints.reserve(static_cast<std::size_t>(alphabet_size) - 1);
  for (int j = 1; j < alphabet_size; ++j)
    c.breakpoints.push_back(normal_quantile(static_cast<double>(j) / alphabet_size));
  return c;
}

std::vector<int> sax_encode(const std::vector<double>& x, const SaxCodec& codec) {
  if (!codec.fitted()) throw std::invalid_argument("sax_encode: codec not fitted");
  std::vector<int> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto it = std::upper_bound(codec.breakpoints.begin(), codec.breakpoints.end(), x[i]);
    out[i] = static_cast<int>(it - codec.breakpoints.begin());
  }
  return out;
}

std::string symbols_to_letters(const std::vector<int>& symbols) {
  std::string s;
  s.reserve(symbols.size());
  for (int v : symbols) {
    if (v < 0 || v >= 26) throw std::invalid_argument("symbols_to_letters: symbol outside a..z");
    s += static_cast<char>('a' + v);
  }
  return s;
}

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenvectors come
// back as columns of v; a is destroyed (diagonal ends up holding eigenvalues).
void jacobi_eigen(std::vector<std::vector<double>>& a, std::vector<double>& eigenvalues,
                  std::vector<std::vector<double>>& v) {
  const std::size_t n = a.size();
  v.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
    }
  }
  eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

}  // namespace

PcaModel pca_fit(const std::vector<std::vector<double>>& rows, int n_components) {
  if (n_components < 1) throw std::invalid_argument("pca_fit: component count must be >= 1");
  if (rows.size() < 3) throw std::invalid_argument("pca_fit: need at least 3 train rows");
  const std::size_t f = rows[0].size();
  if (f < static_cast<std::size_t>(n_components))
    throw std::invalid_argument("pca_fit: fewer features than requested components");
  for (const auto& r : rows)
    if (r.size() != f) throw std::invalid_argument("pca_fit: ragged input matrix");

  PcaModel model;
  model.mean.assign(f, 0.0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < f; ++c) model.mean[c] += r[c];
  for (auto& m : model.mean) m /= static_cast<double>(rows.size());

  std::vector<std::vector<double>> cov(f, std::vector<double>(f, 0.0));
  for (const auto& r : rows)
    for (std::size_t i = 0; i < f; ++i) {
      const double di = r[i] - model.mean[i];
      for (std::size_t j = i; j < f; ++j) cov[i][j] += di * (r[j] - model.mean[j]);
    }
  const double denom = static_cast<double>(rows.size()) - 1.0;
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = i; j < f; ++j) cov[j][i] = cov[i][j] /= denom;

  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> v;
  jacobi_eigen(cov, eigenvalues, v);

  std::vector<std::size_t> order(f);
  for (std::size_t i = 0; i < f; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });

  double total = 0.0, top = std::max(eigenvalues[order[0]], 0.0);
  for (double e : eigenvalues) total += std::max(e, 0.0);
  int rank = 0;
  for (double e : eigenvalues)
    if (e > top * 1e-12 && e > 0.0) ++rank;
  if (rank < n_components)
    throw std::runtime_error("pca_fit: covariance rank " + std::to_string(rank) +
                             " is below the requested " + std::to_string(n_components) +
                             " components");

  model.components.assign(static_cast<std::size_t>(n_components), std::vector<double>(f));
  model.explained_variance_share.resize(static_cast<std::size_t>(n_components));
  for (int k = 0; k < n_components; ++k) {
    const std::size_t col = order[static_cast<std::size_t>(k)];
    auto& comp = model.components[static_cast<std::size_t>(k)];
    std::size_t arg = 0;
    for (std::size_t i = 0; i < f; ++i) {
      comp[i] = v[i][col];
      if (std::abs(comp[i]) > std::abs(comp[arg])) arg = i;
    }
    if (comp[arg] < 0.0)
      for (auto& c : comp) c = -c;
    model.explained_variance_share[static_cast<std::size_t>(k)] =
        total > 0.0 ? std::max(eigenvalues[col], 0.0) / total : 0.0;
  }
  return model;
}

std::vector<std::vector<double>> pca_apply(const PcaModel& model,
                                           const std::vector<std::vector<double>>& rows) {
  const std::size_t f = model.mean.size(), nc = model.components.size();
  std::vector<std::vector<double>> out(rows.size(), std::vector<double>(nc, 0.0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != f) throw std::invalid_argument("pca_apply: row width mismatch");
    for (std::size_t k = 0; k < nc; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < f; ++i) dot += (rows[r][i] - model.mean[i]) * model.components[k][i];
      out[r][k] = dot;
    }
  }
  return out;
}

}  // namespace stocksim
