#pragma once

#include <cstddef>
#include <vector>

namespace stocksim {

// Mean / population standard deviation fitted on one sample; the fitted pair
// is then applied unchanged to other data so no information leaks from it.
struct ZStats {
  double mean = 0.0;
  double std = 0.0;  // population std; 0 marks a constant fit sample
};

ZStats fit_z(const std::vector<double>& xs);

// (x - mean) / std; a zero-std fit maps everything to 0.
std::vector<double> apply_z(const std::vector<double>& xs, const ZStats& s);
double apply_z(double x, const ZStats& s);

// Column-wise z statistics over a row-major matrix, fitted on rows
// [0, fit_rows). apply_columns transforms every row with the fitted stats.
std::vector<ZStats> fit_columns(const std::vector<std::vector<double>>& rows,
                                std::size_t fit_rows);
void apply_columns(std::vector<std::vector<double>>& rows, const std::vector<ZStats>& stats);

}  // namespace stocksim
