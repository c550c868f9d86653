#include "stocksim/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stocksim/distance.hpp"
#include "stocksim/indicators.hpp"
#include "stocksim/normalize.hpp"
#include "stocksim/segment.hpp"

namespace stocksim {

SimilarityFn similarity_fn_from_string(const std::string& s) {
  if (s == "euclidean") return SimilarityFn::euclidean;
  if (s == "pearson") return SimilarityFn::pearson;
  if (s == "dtw") return SimilarityFn::dtw;
  if (s == "mindist") return SimilarityFn::mindist;
  if (s == "cointegration") return SimilarityFn::cointegration;
  throw std::invalid_argument("unknown similarity function: " + s);
}

Fixer fixer_from_string(const std::string& s) {
  if (s == "time_join") return Fixer::time_join;
  if (s == "delayed_time_join") return Fixer::delayed_time_join;
  if (s == "padding") return Fixer::padding;
  if (s == "pip") return Fixer::pip;
  throw std::invalid_argument("unknown length fixer: " + s);
}

ValueField value_field_from_string(const std::string& s) {
  if (s == "close") return ValueField::close;
  if (s == "proc") return ValueField::proc;
  throw std::invalid_argument("unknown similarity value field: " + s);
}

std::string to_string(SimilarityFn v) {
  switch (v) {
    case SimilarityFn::euclidean: return "euclidean";
    case SimilarityFn::pearson: return "pearson";
    case SimilarityFn::dtw: return "dtw";
    case SimilarityFn::mindist: return "mindist";
    default: return "cointegration";
  }
}

std::string to_string(Fixer v) {
  switch (v) {
    case Fixer::time_join: return "time_join";
    case Fixer::delayed_time_join: return "delayed_time_join";
    case Fixer::padding: return "padding";
    default: return "pip";
  }
}

std::string to_string(ValueField v) { return v == ValueField::close ? "close" : "proc"; }

ValueSeries similarity_values(const StockSeries& s, const DateRange& range, ValueField field,
                              int proc_span) {
  auto [lo, hi] = index_range(s, range);
  std::vector<double> closes;
  closes.reserve(hi - lo + 1);
  for (std::size_t i = lo; i <= hi; ++i) closes.push_back(s.bars[i].close);

  ValueSeries v;
  if (field == ValueField::close) {
    v.values = apply_z(closes, fit_z(closes));
    for (std::size_t i = lo; i <= hi; ++i) v.dates.push_back(s.bars[i].date);
  } else {
    const auto span = static_cast<std::size_t>(proc_span);
    if (closes.size() <= span)
      throw std::runtime_error("similarity values: range shorter than the rate-of-change span");
    v.values = proc(closes, proc_span);
    for (std::size_t i = lo + span; i <= hi; ++i) v.dates.push_back(s.bars[i].date);
  }
  return v;
}

namespace {

AlignedPair apply_fixer(const ValueSeries& x, const ValueSeries& y,
                        const SimilarityConfig& config) {
  switch (config.fixer) {
    case Fixer::time_join: return time_join(x, y);
    case Fixer::delayed_time_join: return delayed_time_join(x, y, config.delay);
    case Fixer::padding: return pad_align(x, y);
    default: return pip_align(x, y, config.pip_fraction);
  }
}

double score_pair(const AlignedPair& p, const SimilarityConfig& config, const SaxCodec& codec) {
  switch (config.function) {
    case SimilarityFn::euclidean: return dist_euclidean(p);
    case SimilarityFn::pearson: return dist_pearson(p);
    case SimilarityFn::dtw: return dist_dtw(p);
    case SimilarityFn::mindist:
      // Words keep the aligned length, so the length correction factor is 1.
      return dist_mindist(sax_encode(p.a, codec), sax_encode(p.b, codec), codec, p.a.size());
    default: return dist_cointegration(p);
  }
}

}  // namespace

RankedPeers rank_top_k(const std::string& target, const Universe& universe,
                       const SimilarityConfig& config, const DateRange& train_range) {
  if (config.k < 1) throw std::invalid_argument("rank_top_k: k must be >= 1");
  RankedPeers out;
  out.target = target;
  out.config = config;

  const ValueSeries tv =
      similarity_values(universe.series(target), train_range, config.value_field, config.proc_span);
  const SaxCodec codec = make_sax_codec(config.sax_alphabet);

  for (const auto& [symbol, series] : universe.series_by_symbol) {
    if (symbol == target) continue;
    try {
      const ValueSeries cv =
          similarity_values(series, train_range, config.value_field, config.proc_span);
      const double d = score_pair(apply_fixer(tv, cv, config), config, codec);
      if (!std::isfinite(d)) throw std::runtime_error("non-finite distance");
      out.peers.push_back({symbol, d});
    } catch (const std::exception& e) {
      out.skipped.push_back({symbol, e.what()});
    }
  }

  std::sort(out.peers.begin(), out.peers.end(), [](const ScoredPeer& a, const ScoredPeer& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.symbol < b.symbol;
  });
  if (out.peers.size() > static_cast<std::size_t>(config.k))
    out.peers.resize(static_cast<std::size_t>(config.k));
  else if (out.peers.size() < static_cast<std::size_t>(config.k))
    out.shortfall = true;
  return out;
}

std::map<std::string, double> instance_weights(const RankedPeers& ranked) {
  std::map<std::string, double> w;
  w[ranked.target] = 1.0;
  for (const auto& p : ranked.peers) {
    if (!(p.distance >= 0.0) || !std::isfinite(p.distance))
      throw std::invalid_argument("instance_weights: distances must be finite and non-negative");
    w[p.symbol] = 1.0 / (1.0 + p.distance);
  }
  return w;
}

}  // namespace stocksim
