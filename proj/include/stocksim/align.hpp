#pragma once

#include <cstddef>
#include <vector>

#include "stocksim/bar.hpp"

namespace stocksim {

// One value per date, dates strictly increasing; the unit the length fixers
// and distance functions operate on (closes or rate-of-change values).
struct ValueSeries {
  std::vector<Date> dates;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

// Two series brought to a shared length so a distance can be computed.
struct AlignedPair {
  std::vector<Date> dates;
  std::vector<double> a;  // target side
  std::vector<double> b;  // candidate side
};

// Inner join on dates; errors if fewer than 2 dates are shared.
AlignedPair time_join(const ValueSeries& x, const ValueSeries& y);

// The candidate's values are pulled back t observations against its own dates
// (value at its (i+t)-th point paired with its i-th date) before the inner
// join, so a low distance means y leads x by t points.
AlignedPair delayed_time_join(const ValueSeries& x, const ValueSeries& y, int t);

// The shorter series is front-padded with copies of its first value until the
// lengths match; pairing is positional (tails aligned). Dates come from the
// longer side.
AlignedPair pad_align(const ValueSeries& x, const ValueSeries& y);

// Greedy perceptually-important-point selection: endpoints first, then
// repeatedly the point with maximum vertical distance to the chord between
// its adjacent already-selected points (ties -> earliest index), until m
// points are chosen. Returned indices are sorted ascending.
std::vector<std::size_t> pip_select(const std::vector<double>& x, std::size_t m);

// Each series is reduced to ceil(fraction*length) important points (at least
// 2); both are then sampled on the union of the selected dates, filling dates
// one side never selected by carrying its last prior observation forward.
// Union dates before a series' first observation are dropped.
AlignedPair pip_align(const ValueSeries& x, const ValueSeries& y, double fraction = 0.10);

}  // namespace stocksim
