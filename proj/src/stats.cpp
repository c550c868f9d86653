#include "stocksim/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stocksim/mathutil.hpp"

namespace stocksim {

namespace {

// Solve the symmetric positive-definite system G x = r in place
// (Gaussian elimination with partial pivoting; G is tiny here).
std::vector<double> solve(std::vector<std::vector<double>> g, std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(g[i][c]) > std::abs(g[piv][c])) piv = i;
    if (g[piv][c] == 0.0) throw std::runtime_error("least squares: singular design matrix");
    std::swap(g[piv], g[c]);
    std::swap(r[piv], r[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = g[i][c] / g[c][c];
      for (std::size_t j = c; j < n; ++j) g[i][j] -= f * g[c][j];
      r[i] -= f * r[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = r[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= g[i][j] * x[j];
    x[i] = s / g[i][i];
  }
  return x;
}

std::vector<std::vector<double>> gram(const std::vector<std::vector<double>>& cols) {
  const std::size_t k = cols.size();
  std::vector<std::vector<double>> g(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < cols[i].size(); ++t) s += cols[i][t] * cols[j][t];
      g[i][j] = g[j][i] = s;
    }
  return g;
}

}  // namespace

OlsResult ols(const std::vector<double>& y, const std::vector<std::vector<double>>& cols) {
  if (cols.empty()) throw std::invalid_argument("ols: no regressors");
  const std::size_t n = y.size();
  for (const auto& c : cols)
    if (c.size() != n) throw std::invalid_argument("ols: column length mismatch");
  if (n <= cols.size()) throw std::invalid_argument("ols: more regressors than observations");

  std::vector<double> xty(cols.size(), 0.0);
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t t = 0; t < n; ++t) xty[i] += cols[i][t] * y[t];

  OlsResult r;
  r.coef = solve(gram(cols), xty);
  r.residuals.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    double fit = 0.0;
    for (std::size_t i = 0; i < cols.size(); ++i) fit += r.coef[i] * cols[i][t];
    r.residuals[t] = y[t] - fit;
    r.rss += r.residuals[t] * r.residuals[t];
  }
  const double ybar = mean_of(y);
  double tss = 0.0;
  for (double v : y) tss += (v - ybar) * (v - ybar);
  r.rsquared = tss > 0.0 ? 1.0 - r.rss / tss : std::numeric_limits<double>::quiet_NaN();
  return r;
}

double pearson_r(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson_r: need two equal-length series of size >= 2");
  const double ma = mean_of(a), mb = mean_of(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    throw std::runtime_error("pearson_r: zero variance on one side");
  return sab / std::sqrt(saa * sbb);
}

double adf_tau_on_residuals(const std::vector<double>& e) {
  if (e.size() < 6) throw std::invalid_argument("adf: residual series too short");
  const std::size_t nd = e.size() - 1;     // first differences
  const std::size_t nobs = nd - 1;         // usable rows after one lag
  std::vector<double> xdiff(nd);
  for (std::size_t t = 0; t < nd; ++t) xdiff[t] = e[t + 1] - e[t];

  std::vector<double> y(xdiff.begin() + 1, xdiff.end());          // delta-e_t
  std::vector<double> lag_level(e.begin() + 1, e.end() - 1);      // e_{t-1}
  std::vector<double> lag_diff(xdiff.begin(), xdiff.end() - 1);   // delta-e_{t-1}

  auto fit = ols(y, {lag_level, lag_diff});
  const double sigma2 = fit.rss / static_cast<double>(nobs - 2);

  // Variance of the level coefficient = sigma^2 * [(X'X)^-1]_00; for the 2x2
  // gram matrix that's sigma^2 * g11 / det.
  auto g = gram({lag_level, lag_diff});
  const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (det <= 0.0) throw std::runtime_error("adf: singular regressor matrix");
  const double se = std::sqrt(sigma2 * g[1][1] / det);
  return fit.coef[0] / se;
}

double mackinnon_pvalue(double tau) {
  // Response-surface constants, two-variable case with a constant term.
  static constexpr double kTauMax = 0.92;
  static constexpr double kTauMin = -18.86;
  static constexpr double kTauStar = -2.62;
  static constexpr double kSmallP[] = {2.92, 1.5012, 0.039796};
  static constexpr double kLargeP[] = {2.1945, 0.64695, -0.29198, -0.042377};

  if (std::isinf(tau) && tau < 0.0) return 0.0;
  if (tau > kTauMax) return 1.0;
  if (tau < kTauMin) return 0.0;
  double z;
  if (tau <= kTauStar)
    z = kSmallP[0] + tau * (kSmallP[1] + tau * kSmallP[2]);
  else
    z = kLargeP[0] + tau * (kLargeP[1] + tau * (kLargeP[2] + tau * kLargeP[3]));
  return normal_cdf(z);
}

CointResult engle_granger(const std::vector<double>& target,
                          const std::vector<double>& candidate) {
  if (target.size() != candidate.size())
    throw std::invalid_argument("engle_granger: length mismatch");
  if (target.size() < 30)
    throw std::invalid_argument("engle_granger: need at least 30 aligned observations");
  if (pop_std(target) == 0.0 || pop_std(candidate) == 0.0)
    throw std::runtime_error("engle_granger: constant series makes the regression singular");

  std::vector<double> ones(target.size(), 1.0);
  auto step1 = ols(candidate, {target, ones});

  // A numerically exact linear relationship leaves no residual signal for the
  // unit-root stage; report it as maximal cointegration instead.
  const double eps = std::numeric_limits<double>::epsilon();
  if (step1.rsquared > 1.0 - 100.0 * std::sqrt(eps))
    return {-std::numeric_limits<double>::infinity(), 0.0};

  CointResult r;
  r.tau = adf_tau_on_residuals(step1.residuals);
  r.pvalue = mackinnon_pvalue(r.tau);
  return r;
}

}  // namespace stocksim
