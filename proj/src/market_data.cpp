#include "stocksim/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace stocksim {

Date Date::from_string(const std::string& iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
    throw std::invalid_argument("Date: expected YYYY-MM-DD, got '" + iso + "'");
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (!std::isdigit(static_cast<unsigned char>(iso[i])))
      throw std::invalid_argument("Date: expected YYYY-MM-DD, got '" + iso + "'");
  int y = std::stoi(iso.substr(0, 4));
  int m = std::stoi(iso.substr(5, 2));
  int d = std::stoi(iso.substr(8, 2));
  return from_ymd(y, m, d);
}

Date Date::from_ymd(int year, int month, int day) {
  if (year < 1 || month < 1 || month > 12 || day < 1 || day > 31)
    throw std::invalid_argument("Date: out-of-range calendar components");
  Date r;
  r.v_ = year * 10000 + month * 100 + day;
  return r;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", v_ / 10000, (v_ / 100) % 100, v_ % 100);
  return buf;
}

const StockSeries& Universe::series(const std::string& symbol) const {
  auto it = series_by_symbol.find(symbol);
  if (it == series_by_symbol.end())
    throw std::runtime_error("unknown symbol: " + symbol);
  return it->second;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool bar_sane(const Bar& b) {
  if (!(b.open > 0.0 && b.close > 0.0 && b.high > 0.0 && b.low > 0.0)) return false;
  if (b.high < std::max(b.open, b.close)) return false;
  if (b.low > std::min(b.open, b.close)) return false;
  return b.volume >= 0.0;
}

}  // namespace

Universe parse_bars_csv(const std::string& path, const CsvSchema& schema,
                        const std::vector<std::string>& targets) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty data file: " + path);
  auto header = split_csv_line(line);
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;

  auto need = [&](const std::string& name) {
    auto it = col.find(name);
    if (it == col.end())
      throw std::runtime_error("missing column '" + name + "' in " + path);
    return it->second;
  };
  const std::size_t c_date = need(schema.date), c_open = need(schema.open),
                    c_high = need(schema.high), c_low = need(schema.low),
                    c_close = need(schema.close), c_vol = need(schema.volume),
                    c_sym = need(schema.symbol);
  const std::size_t c_max = std::max({c_date, c_open, c_high, c_low, c_close, c_vol, c_sym});

  Universe u;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto f = split_csv_line(line);
    if (f.size() <= c_max) {
      ++u.dropped_row_count;
      continue;
    }
    Bar b;
    try {
      b.date = Date::from_string(f[c_date]);
    } catch (const std::invalid_argument&) {
      ++u.dropped_row_count;
      continue;
    }
    if (!parse_double(f[c_open], b.open) || !parse_double(f[c_high], b.high) ||
        !parse_double(f[c_low], b.low) || !parse_double(f[c_close], b.close) ||
        !parse_double(f[c_vol], b.volume) || !bar_sane(b)) {
      ++u.dropped_row_count;
      continue;
    }
    auto& s = u.series_by_symbol[f[c_sym]];
    s.symbol = f[c_sym];
    s.bars.push_back(b);
  }

  for (auto it = u.series_by_symbol.begin(); it != u.series_by_symbol.end();) {
    try {
      validate_series(it->second);
      ++it;
    } catch (const std::runtime_error&) {
      it = u.series_by_symbol.erase(it);  // too short to ever be usable
    }
  }

  if (targets.empty()) {
    for (const auto& [sym, _] : u.series_by_symbol) u.target_symbols.push_back(sym);
  } else {
    for (const auto& t : targets) {
      if (!u.has(t))
        throw std::runtime_error("zero valid rows for requested target symbol: " + t);
      u.target_symbols.push_back(t);
    }
  }
  return u;
}

void validate_series(StockSeries& s) {
  std::stable_sort(s.bars.begin(), s.bars.end(),
                   [](const Bar& a, const Bar& b) { return a.date < b.date; });
  std::vector<Bar> kept;
  kept.reserve(s.bars.size());
  for (const auto& b : s.bars) {
    if (!(b.close > 0.0 && b.open > 0.0)) continue;
    if (!kept.empty() && kept.back().date == b.date)
      kept.back() = b;  // duplicate date: keep the later-read bar
    else
      kept.push_back(b);
  }
  s.bars = std::move(kept);
  if (s.bars.size() < 2)
    throw std::runtime_error("series '" + s.symbol + "' has fewer than 2 valid bars");
}

std::vector<FoldPlan> partition_folds(const StockSeries& s, int n) {
  if (n < 1) throw std::invalid_argument("partition_folds: fold count must be >= 1");
  const std::size_t len = s.bars.size();
  if (len < 2 * static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("partition_folds: series too short for " + std::to_string(n) +
                                " folds (length " + std::to_string(len) + ")");
  const std::size_t seg = len / static_cast<std::size_t>(n + 1);
  const std::size_t half = seg / 2;  // >= 1 because seg >= 2

  std::vector<FoldPlan> folds;
  folds.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const std::size_t train_lo = static_cast<std::size_t>(i - 1) * seg;
    const std::size_t train_hi = train_lo + seg - 1;
    const std::size_t test_lo = train_hi + 1;
    const std::size_t test_hi = test_lo + half - 1;
    FoldPlan f;
    f.fold_index = i;
    f.train_range = {s.bars[train_lo].date, s.bars[train_hi].date};
    f.test_range = {s.bars[test_lo].date, s.bars[test_hi].date};
    folds.push_back(f);
  }
  return folds;
}

std::pair<std::size_t, std::size_t> index_range(const StockSeries& s, const DateRange& range) {
  auto lo = std::lower_bound(s.bars.begin(), s.bars.end(), range.first,
                             [](const Bar& b, Date d) { return b.date < d; });
  auto hi = std::upper_bound(s.bars.begin(), s.bars.end(), range.last,
                             [](Date d, const Bar& b) { return d < b.date; });
  if (lo >= hi) throw std::runtime_error("no bars inside requested date range");
  return {static_cast<std::size_t>(lo - s.bars.begin()),
          static_cast<std::size_t>(hi - s.bars.begin()) - 1};
}

}  // namespace stocksim
