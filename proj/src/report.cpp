#include "stocksim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

namespace stocksim {

namespace {

std::vector<std::string> split_line(const std::string& line) {
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

}  // namespace

ReportTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report: " + path);
  ReportTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty report: " + path);
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split_line(line);
    if (row.size() != t.header.size())
      throw std::runtime_error("ragged report row in " + path);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string aggregate_report(const ReportTable& table,
                             const std::vector<std::string>& group_by) {
  if (group_by.empty()) throw std::invalid_argument("aggregate_report: no group columns");
  auto column_index = [&](const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end())
      throw std::runtime_error("report has no column '" + name + "'");
    return static_cast<std::size_t>(it - table.header.begin());
  };

  std::vector<std::size_t> key_cols;
  for (const auto& name : group_by) key_cols.push_back(column_index(name));
  const std::vector<std::string> metric_names = {"accuracy", "f1_macro", "profit", "sharpe"};
  std::vector<std::size_t> metric_cols;
  for (const auto& name : metric_names) metric_cols.push_back(column_index(name));
  const std::size_t error_col = column_index("error_tag");

  struct Bucket {
    std::size_t n = 0, n_error = 0;
    double sums[4] = {0, 0, 0, 0};
  };
  std::map<std::vector<std::string>, Bucket> buckets;
  for (const auto& row : table.rows) {
    std::vector<std::string> key;
    key.reserve(key_cols.size());
    for (std::size_t c : key_cols) key.push_back(row[c]);
    Bucket& b = buckets[key];
    if (!row[error_col].empty()) {
      ++b.n_error;
      continue;
    }
    ++b.n;
    for (std::size_t i = 0; i < metric_cols.size(); ++i)
      b.sums[i] += std::strtod(row[metric_cols[i]].c_str(), nullptr);
  }

  std::string out;
  for (const auto& name : group_by) out += name + ',';
  out += "n,n_error,accuracy,f1_macro,profit,sharpe\n";
  char buf[40];
  for (const auto& [key, b] : buckets) {
    for (const auto& part : key) out += part + ',';
    out += std::to_string(b.n) + ',' + std::to_string(b.n_error);
    for (double sum : b.sums) {
      std::snprintf(buf, sizeof(buf), "%.10g", b.n > 0 ? sum / static_cast<double>(b.n) : 0.0);
      out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace stocksim
