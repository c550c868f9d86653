#include "stocksim/normalize.hpp"

#include <stdexcept>

#include "stocksim/mathutil.hpp"

namespace stocksim {

ZStats fit_z(const std::vector<double>& xs) {
  ZStats s;
  s.mean = mean_of(xs);
  s.std = pop_std(xs, s.mean);
  // A constant sample must report std exactly 0 (the degenerate marker), even
  // when its mean is not exactly representable and pop_std rounds to ~1e-16.
  bool flat = true;
  for (double x : xs) flat = flat && x == xs.front();
  if (flat) s.std = 0.0;
  return s;
}

double apply_z(double x, const ZStats& s) {
  return s.std == 0.0 ? 0.0 : (x - s.mean) / s.std;
}

std::vector<double> apply_z(const std::vector<double>& xs, const ZStats& s) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = apply_z(xs[i], s);
  return out;
}

std::vector<ZStats> fit_columns(const std::vector<std::vector<double>>& rows,
                                std::size_t fit_rows) {
  if (fit_rows == 0 || fit_rows > rows.size())
    throw std::invalid_argument("fit_columns: fit row count out of range");
  const std::size_t cols = rows[0].size();
  for (const auto& row : rows)
    if (row.size() != cols) throw std::invalid_argument("fit_columns: ragged matrix");
  std::vector<ZStats> stats(cols);
  std::vector<double> col(fit_rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < fit_rows; ++r) col[r] = rows[r][c];
    stats[c] = fit_z(col);
  }
  return stats;
}

void apply_columns(std::vector<std::vector<double>>& rows, const std::vector<ZStats>& stats) {
  for (auto& row : rows) {
    if (row.size() != stats.size())
      throw std::invalid_argument("apply_columns: row width does not match fitted stats");
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = apply_z(row[c], stats[c]);
  }
}

}  // namespace stocksim
