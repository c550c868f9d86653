#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stocksim/bar.hpp"

namespace stocksim {

/// Column-name mapping for the input CSV. Defaults match the documented
/// layout `date,open,high,low,close,volume,symbol`.
struct CsvSchema {
  std::string date = "date";
  std::string open = "open";
  std::string high = "high";
  std::string low = "low";
  std::string close = "close";
  std::string volume = "volume";
  std::string symbol = "symbol";
};

/// Load a multi-symbol daily OHLCV file. Rows that fail the Bar sanity
/// checks (high < max(open, close), non-positive prices, negative volume,
/// unparsable fields) are dropped and counted in Universe::dropped_row_count.
/// Every series is validated (sorted, deduplicated) before return.
///
/// @param targets requested target symbols; empty means "all symbols".
/// @throws std::runtime_error on unreadable file, missing mapped column, or
///         zero valid rows for a requested target.
Universe parse_bars_csv(const std::string& path, const CsvSchema& schema = {},
                        const std::vector<std::string>& targets = {});

/// Sort by date, collapse duplicate dates (keep the last-read bar), drop
/// non-positive prices. Idempotent.
/// @throws std::runtime_error if fewer than 2 bars remain.
void validate_series(StockSeries& s);

/// Split the series timeline into n+1 equal-width segments; fold i trains on
/// segment i and tests on the first half of segment i+1.
/// @throws std::invalid_argument if n < 1 or the series is too short
///         (length < 2*(n+1)).
std::vector<FoldPlan> partition_folds(const StockSeries& s, int n);

/// Index positions [lo, hi] (inclusive) of the bars inside `range`.
/// @throws std::runtime_error if no bar falls inside the range.
std::pair<std::size_t, std::size_t> index_range(const StockSeries& s, const DateRange& range);

}  // namespace stocksim
