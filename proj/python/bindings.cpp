// Python bindings for the main toolkit operations.  The heavy lifting stays
// in the C++ core; this layer only converts between python and C++ types.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "stocksim/align.hpp"
#include "stocksim/distance.hpp"
#include "stocksim/grid.hpp"
#include "stocksim/grid_config.hpp"
#include "stocksim/market_data.hpp"
#include "stocksim/normalize.hpp"
#include "stocksim/report.hpp"
#include "stocksim/segment.hpp"
#include "stocksim/similarity.hpp"
#include "stocksim/stats.hpp"

namespace py = pybind11;

namespace {

std::string sax_word(const std::vector<double>& values, int alphabet, int word) {
  const auto z = stocksim::apply_z(values, stocksim::fit_z(values));
  const auto codec = stocksim::make_sax_codec(alphabet);
  const int w = word > 0 ? word : static_cast<int>(z.size());
  return stocksim::symbols_to_letters(stocksim::sax_encode(stocksim::paa(z, w), codec));
}

double mindist_words(const std::vector<double>& a, const std::vector<double>& b, int alphabet,
                     int word) {
  if (a.size() != b.size())
    throw std::runtime_error("mindist: series must have equal length");
  const auto codec = stocksim::make_sax_codec(alphabet);
  const int w = word > 0 ? word : static_cast<int>(a.size());
  const auto ga = stocksim::sax_encode(stocksim::paa(stocksim::apply_z(a, stocksim::fit_z(a)), w),
                                       codec);
  const auto gb = stocksim::sax_encode(stocksim::paa(stocksim::apply_z(b, stocksim::fit_z(b)), w),
                                       codec);
  return stocksim::dist_mindist(ga, gb, codec, a.size());
}

py::list rank_similar(const std::string& data_csv, const std::string& target,
                      const std::string& function, const std::string& value,
                      const std::string& fixer, int k, const std::string& first,
                      const std::string& last, int delay, double pip_fraction) {
  const auto universe = stocksim::parse_bars_csv(data_csv);
  const auto& series = universe.series(target);

  stocksim::SimilarityConfig config;
  config.function = stocksim::similarity_fn_from_string(function);
  config.value_field = stocksim::value_field_from_string(value);
  config.fixer = stocksim::fixer_from_string(fixer);
  config.k = k;
  config.delay = delay;
  config.pip_fraction = pip_fraction;

  stocksim::DateRange range{series.bars.front().date, series.bars.back().date};
  if (!first.empty()) range.first = stocksim::Date::from_string(first);
  if (!last.empty()) range.last = stocksim::Date::from_string(last);

  const auto ranked = stocksim::rank_top_k(target, universe, config, range);
  py::list out;
  for (const auto& peer : ranked.peers) {
    py::dict d;
    d["symbol"] = peer.symbol;
    d["distance"] = peer.distance;
    out.append(d);
  }
  return out;
}

py::dict run_backtest(const std::string& data_csv, const std::string& config_path,
                      const std::string& out_csv, py::object seed, py::object jobs) {
  auto grid = stocksim::parse_grid_config(config_path);
  if (!seed.is_none()) grid.seed = seed.cast<std::uint64_t>();
  if (!jobs.is_none()) grid.jobs = jobs.cast<int>();
  const auto universe = stocksim::parse_bars_csv(data_csv, {}, grid.targets);
  const auto rows = stocksim::run_grid(universe, grid);
  stocksim::write_report(rows, out_csv);
  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.error_tag.empty()) ++failed;
  py::dict summary;
  summary["rows"] = rows.size();
  summary["errors"] = failed;
  summary["out"] = out_csv;
  return summary;
}

std::string aggregate(const std::string& in_csv, const std::vector<std::string>& group_by) {
  return stocksim::aggregate_report(stocksim::read_csv_table(in_csv), group_by);
}

}  // namespace

PYBIND11_MODULE(_stocksim, m) {
  m.doc() = "Stock-similarity backtesting toolkit (C++ core)";

  m.def("paa", &stocksim::paa, py::arg("values"), py::arg("bins"),
        "Piecewise aggregate approximation of a series");
  m.def("sax", &sax_word, py::arg("values"), py::arg("alphabet") = 8, py::arg("word") = 0,
        "Symbolic (letter) encoding of a z-normalized series; word=0 keeps full length");
  m.def("dtw", py::overload_cast<const std::vector<double>&, const std::vector<double>&>(
                   &stocksim::dist_dtw),
        py::arg("a"), py::arg("b"), "Dynamic time warping distance (absolute local cost)");
  m.def(
      "euclidean",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        if (a.size() != b.size())
          throw std::runtime_error("euclidean: series must have equal length");
        return stocksim::dist_euclidean(stocksim::AlignedPair{{}, a, b});
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "pearson_distance",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        if (a.size() != b.size())
          throw std::runtime_error("pearson_distance: series must have equal length");
        return stocksim::dist_pearson(stocksim::AlignedPair{{}, a, b});
      },
      py::arg("a"), py::arg("b"), "1 - Pearson correlation");
  m.def("mindist", &mindist_words, py::arg("a"), py::arg("b"), py::arg("alphabet") = 8,
        py::arg("word") = 0,
        "Symbolic lower-bound distance between two equal-length series");
  m.def(
      "engle_granger",
      [](const std::vector<double>& target, const std::vector<double>& candidate) {
        const auto r = stocksim::engle_granger(target, candidate);
        py::dict d;
        d["tau"] = r.tau;
        d["pvalue"] = r.pvalue;
        return d;
      },
      py::arg("target"), py::arg("candidate"),
      "Two-step cointegration test; lower p-value = stronger linkage");
  m.def(
      "pip",
      [](const std::vector<double>& values, int count) {
        const auto idx = stocksim::pip_select(values, static_cast<std::size_t>(count));
        return std::vector<std::size_t>(idx.begin(), idx.end());
      },
      py::arg("values"), py::arg("count"),
      "Indices of the most perceptually important points, ascending");
  m.def("rank_similar", &rank_similar, py::arg("data_csv"), py::arg("target"),
        py::arg("function") = "euclidean", py::arg("value") = "close",
        py::arg("fixer") = "time_join", py::arg("k") = 10, py::arg("first") = "",
        py::arg("last") = "", py::arg("delay") = 1, py::arg("pip_fraction") = 0.10,
        "Rank the k most similar stocks to a target over a date range");
  m.def("run_backtest", &run_backtest, py::arg("data_csv"), py::arg("config"),
        py::arg("out_csv"), py::arg("seed") = py::none(), py::arg("jobs") = py::none(),
        "Run the experiment grid described by a config file and write the results CSV");
  m.def("aggregate", &aggregate, py::arg("in_csv"), py::arg("group_by"),
        "Aggregate a results CSV by key columns; returns CSV text");
}
