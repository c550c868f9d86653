#pragma once

#include <string>
#include <vector>

namespace stocksim {

struct ReportTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

ReportTable read_csv_table(const std::string& path);

// Group the backtest CSV by the named key columns and average the metric
// columns (accuracy, f1_macro, profit, sharpe) over successful rows (rows
// with an error_tag are counted separately, not averaged). Returns CSV text:
// group columns, n, n_error, then the four means; groups sorted by key.
std::string aggregate_report(const ReportTable& table,
                             const std::vector<std::string>& group_by);

}  // namespace stocksim
