#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace stocksim {

/// Calendar date packed as YYYYMMDD; ordering matches calendar order.
/// Horizons are counted in trading points (row offsets), so no calendar
/// arithmetic is needed beyond comparison.
class Date {
 public:
  Date() = default;

  static Date from_string(const std::string& iso);  // "YYYY-MM-DD"
  static Date from_ymd(int year, int month, int day);

  std::string to_string() const;
  int packed() const { return v_; }
  bool valid() const { return v_ != 0; }

  auto operator<=>(const Date&) const = default;

 private:
  int v_ = 0;
};

struct Bar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double volume = 0.0;
};

/// Inclusive date interval.
struct DateRange {
  Date first;
  Date last;
  bool contains(Date d) const { return first <= d && d <= last; }
};

struct StockSeries {
  std::string symbol;
  std::vector<Bar> bars;  // strictly increasing dates after validation
};

/// One walk-forward fold: train on one segment, test on the first half of
/// the next one.
struct FoldPlan {
  int fold_index = 0;  // 1-based
  DateRange train_range;
  DateRange test_range;
};

struct Universe {
  std::map<std::string, StockSeries> series_by_symbol;
  std::vector<std::string> target_symbols;
  std::size_t dropped_row_count = 0;

  const StockSeries& series(const std::string& symbol) const;
  bool has(const std::string& symbol) const {
    return series_by_symbol.count(symbol) != 0;
  }
};

}  // namespace stocksim
