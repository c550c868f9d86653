#include "stocksim/align.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace stocksim {

namespace {

AlignedPair join_sorted(const ValueSeries& x, const ValueSeries& y) {
  AlignedPair p;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x.dates[i] < y.dates[j]) {
      ++i;
    } else if (y.dates[j] < x.dates[i]) {
      ++j;
    } else {
      p.dates.push_back(x.dates[i]);
      p.a.push_back(x.values[i]);
      p.b.push_back(y.values[j]);
      ++i;
      ++j;
    }
  }
  if (p.dates.size() < 2) throw std::runtime_error("time join: fewer than 2 shared dates");
  return p;
}

}  // namespace

AlignedPair time_join(const ValueSeries& x, const ValueSeries& y) {
  if (x.size() == 0 || y.size() == 0) throw std::invalid_argument("time join: empty series");
  return join_sorted(x, y);
}

AlignedPair delayed_time_join(const ValueSeries& x, const ValueSeries& y, int t) {
  if (t < 1) throw std::invalid_argument("delayed time join: delay must be >= 1");
  if (x.size() == 0 || y.size() == 0) throw std::invalid_argument("delayed time join: empty series");
  const auto shift = static_cast<std::size_t>(t);
  if (y.size() <= shift)
    throw std::runtime_error("delayed time join: candidate shorter than the delay");
  ValueSeries shifted;
  shifted.dates.assign(y.dates.begin(), y.dates.end() - static_cast<std::ptrdiff_t>(shift));
  shifted.values.assign(y.values.begin() + static_cast<std::ptrdiff_t>(shift), y.values.end());
  return join_sorted(x, shifted);
}

AlignedPair pad_align(const ValueSeries& x, const ValueSeries& y) {
  if (x.size() == 0 || y.size() == 0) throw std::invalid_argument("pad align: empty series");
  AlignedPair p;
  const std::size_t n = std::max(x.size(), y.size());
  p.dates = x.size() >= y.size() ? x.dates : y.dates;
  p.a.reserve(n);
  p.b.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pad_x = n - x.size(), pad_y = n - y.size();
    p.a.push_back(i < pad_x ? x.values.front() : x.values[i - pad_x]);
    p.b.push_back(i < pad_y ? y.values.front() : y.values[i - pad_y]);
  }
  return p;
}

std::vector<std::size_t> pip_select(const std::vector<double>& x, std::size_t m) {
  if (m < 2 || m > x.size())
    throw std::invalid_argument("pip_select: point count out of range [2, length]");
  std::vector<std::size_t> sel = {0, x.size() - 1};
  while (sel.size() < m) {
    double best_dist = -1.0;
    std::size_t best_idx = 0, insert_at = 0;
    for (std::size_t s = 0; s + 1 < sel.size(); ++s) {
      const std::size_t l = sel[s], r = sel[s + 1];
      for (std::size_t p = l + 1; p < r; ++p) {
        const double chord =
            x[l] + (x[r] - x[l]) * static_cast<double>(p - l) / static_cast<double>(r - l);
        const double d = std::abs(x[p] - chord);
        if (d > best_dist) {  // strict: ties keep the earliest index
          best_dist = d;
          best_idx = p;
          insert_at = s + 1;
        }
      }
    }
    sel.insert(sel.begin() + static_cast<std::ptrdiff_t>(insert_at), best_idx);
  }
  return sel;
}

AlignedPair pip_align(const ValueSeries& x, const ValueSeries& y, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("pip_align: fraction must be in (0, 1]");
  if (x.size() < 20 || y.size() < 20)
    throw std::runtime_error("pip_align: both series must have at least 20 points");

  auto pick_dates = [&](const ValueSeries& s) {
    auto m = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(s.size())));
    m = std::max<std::size_t>(m, 2);
    std::vector<Date> dates;
    for (std::size_t idx : pip_select(s.values, m)) dates.push_back(s.dates[idx]);
    return dates;
  };

  std::set<Date> union_dates;
  for (Date d : pick_dates(x)) union_dates.insert(d);
  for (Date d : pick_dates(y)) union_dates.insert(d);

  AlignedPair p;
  auto sample = [](const ValueSeries& s, Date d, double& out) {
    // Last observation at or before d; false when d precedes the series.
    auto it = std::upper_bound(s.dates.begin(), s.dates.end(), d);
    if (it == s.dates.begin()) return false;
    out = s.values[static_cast<std::size_t>(it - s.dates.begin()) - 1];
    return true;
  };
  for (Date d : union_dates) {
    double va, vb;
    if (sample(x, d, va) && sample(y, d, vb)) {
      p.dates.push_back(d);
      p.a.push_back(va);
      p.b.push_back(vb);
    }
  }
  if (p.dates.size() < 2) throw std::runtime_error("pip_align: fewer than 2 usable union dates");
  return p;
}

}  // namespace stocksim
