#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace stocksim {

// Piecewise aggregate approximation: the series is cut into w equal-width
// intervals (fractional boundaries split a sample proportionally) and each
// interval is replaced by its mean. w == length is the identity.
std::vector<double> paa(const std::vector<double>& x, int w);

// Symbol codec over standard-normal quantile breakpoints. Symbols are the
// indices 0..a-1; rendering as letters ('a', 'b', ...) is for reports only.
struct SaxCodec {
  int alphabet_size = 0;
  std::vector<double> breakpoints;  // beta_j = Phi^-1(j/a), strictly increasing

  bool fitted() const { return alphabet_size >= 2 && !breakpoints.empty(); }
};

SaxCodec make_sax_codec(int alphabet_size);

// symbol[i] = count of breakpoints <= value[i]. Input is expected to be
// z-normalized upstream; output length equals input length.
std::vector<int> sax_encode(const std::vector<double>& x, const SaxCodec& codec);

std::string symbols_to_letters(const std::vector<int>& symbols);

// Principal components of the train data's covariance, used to project any
// matrix with the same columns down to `components` dimensions.
struct PcaModel {
  std::vector<double> mean;                       // per-feature train mean
  std::vector<std::vector<double>> components;    // n_components rows x features
  std::vector<double> explained_variance_share;   // eigenvalue / total variance
};

// Eigendecomposition of the sample covariance; components are returned in
// eigenvalue-descending order with the largest-magnitude loading made
// positive so repeated fits agree exactly. Throws if the covariance rank is
// below the requested component count (message names the rank).
PcaModel pca_fit(const std::vector<std::vector<double>>& rows, int n_components = 3);

std::vector<std::vector<double>> pca_apply(const PcaModel& model,
                                           const std::vector<std::vector<double>>& rows);

}  // namespace stocksim
