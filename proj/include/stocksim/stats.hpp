#pragma once

#include <vector>

namespace stocksim {

// Least squares of y on the given columns (no implicit intercept; pass a
// column of ones to get one). Solved via normal equations, fine for the
// 2-3 column regressions used here.
struct OlsResult {
  std::vector<double> coef;
  std::vector<double> residuals;
  double rss = 0.0;
  double rsquared = 0.0;  // centered R^2
};

OlsResult ols(const std::vector<double>& y, const std::vector<std::vector<double>>& cols);

// Pearson correlation coefficient; throws if either side has zero variance.
double pearson_r(const std::vector<double>& a, const std::vector<double>& b);

// Augmented Dickey-Fuller t-statistic on a residual series: regression of
// delta-e_t on [e_{t-1}, delta-e_{t-1}] with no deterministic terms (lag
// order fixed at 1), returning the t-ratio of the level coefficient.
double adf_tau_on_residuals(const std::vector<double>& e);

// P-value for the two-variable cointegration tau statistic via the MacKinnon
// response-surface polynomials (constant-trend case).
double mackinnon_pvalue(double tau);

struct CointResult {
  double tau = 0.0;
  double pvalue = 1.0;
};

// Engle-Granger two-step cointegration test: candidate regressed on target
// with an intercept, then a unit-root test on the residuals. A numerically
// perfect first-stage fit short-circuits to the strongest possible result.
// Lower p-value = stronger evidence the pair is cointegrated.
CointResult engle_granger(const std::vector<double>& target,
                          const std::vector<double>& candidate);

}  // namespace stocksim
