#pragma once

#include <vector>

#include "stocksim/align.hpp"
#include "stocksim/segment.hpp"

namespace stocksim {

// sqrt of the summed squared pointwise differences.
double dist_euclidean(const AlignedPair& p);

// 1 - Pearson correlation: co-moving pairs score near 0, anti-correlated
// pairs near 2. Throws if either side is constant.
double dist_pearson(const AlignedPair& p);

// Dynamic time warping with |a_i - b_j| local cost and steps down/right/
// diagonal; lengths may differ. Never exceeds the no-warp diagonal cost
// sum |a_i - b_i| for equal-length inputs.
double dist_dtw(const std::vector<double>& a, const std::vector<double>& b);
double dist_dtw(const AlignedPair& p);

// Symbol-space lower bound of the Euclidean distance: adjacent symbols
// contribute zero, otherwise the gap between the breakpoints bracketing the
// two symbols. n is the pre-compression length (n == w when words keep the
// original length).
double dist_mindist(const std::vector<int>& g, const std::vector<int>& h, const SaxCodec& codec,
                    std::size_t n);

// Engle-Granger p-value as a distance: candidate regressed on target, so the
// measure is deliberately not symmetric.
double dist_cointegration(const AlignedPair& p);

}  // namespace stocksim
