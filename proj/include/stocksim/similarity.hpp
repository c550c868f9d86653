#pragma once

#include <map>
#include <string>
#include <vector>

#include "stocksim/align.hpp"
#include "stocksim/bar.hpp"
#include "stocksim/market_data.hpp"

namespace stocksim {

enum class SimilarityFn { euclidean, pearson, dtw, mindist, cointegration };
enum class Fixer { time_join, delayed_time_join, padding, pip };
enum class ValueField { close, proc };

SimilarityFn similarity_fn_from_string(const std::string& s);
Fixer fixer_from_string(const std::string& s);
ValueField value_field_from_string(const std::string& s);
std::string to_string(SimilarityFn v);
std::string to_string(Fixer v);
std::string to_string(ValueField v);

struct SimilarityConfig {
  SimilarityFn function = SimilarityFn::euclidean;
  ValueField value_field = ValueField::close;
  Fixer fixer = Fixer::time_join;
  int delay = 1;             // observations the candidate is pulled back (delayed join)
  double pip_fraction = 0.10;
  int k = 10;                // peers to keep
  int sax_alphabet = 8;      // codec for the symbolic distance
  int proc_span = 1;
};

struct ScoredPeer {
  std::string symbol;
  double distance = 0.0;
};

struct SkippedPeer {
  std::string symbol;
  std::string reason;
};

struct RankedPeers {
  std::string target;
  std::vector<ScoredPeer> peers;    // ascending distance; ties broken by symbol
  std::vector<SkippedPeer> skipped; // candidates that failed alignment or scoring
  bool shortfall = false;           // fewer than k candidates could be scored
  SimilarityConfig config;
};

// The series a similarity function actually sees: closes z-normalized with
// statistics over the given range, or raw rate-of-change values (treated as
// already scale-free). Only bars inside `range` are used.
ValueSeries similarity_values(const StockSeries& s, const DateRange& range,
                              ValueField field, int proc_span = 1);

// Score every other symbol against the target on train-range data and keep
// the k closest. Candidates that cannot be aligned or scored are recorded
// with the reason instead of aborting the ranking.
RankedPeers rank_top_k(const std::string& target, const Universe& universe,
                       const SimilarityConfig& config, const DateRange& train_range);

// weight(symbol) = 1 / (1 + distance); the target itself weighs 1.
std::map<std::string, double> instance_weights(const RankedPeers& ranked);

}  // namespace stocksim
