#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stocksim/grid.hpp"
#include "stocksim/grid_config.hpp"
#include "stocksim/market_data.hpp"
#include "stocksim/report.hpp"
#include "stocksim/similarity.hpp"

namespace {

int cmd_similar(const std::string& data_path, const std::string& target,
                const std::string& function, const std::string& value, const std::string& fixer,
                int k, int delay, double pip_fraction, const std::string& first,
                const std::string& last) {
  const auto universe = stocksim::parse_bars_csv(data_path);
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
  std::printf("symbol,distance,rank\n");
  for (std::size_t i = 0; i < ranked.peers.size(); ++i)
    std::printf("%s,%.10g,%zu\n", ranked.peers[i].symbol.c_str(), ranked.peers[i].distance,
                i + 1);
  if (ranked.shortfall)
    std::fprintf(stderr, "note: only %zu of %d requested peers could be scored\n",
                 ranked.peers.size(), config.k);
  for (const auto& skip : ranked.skipped)
    std::fprintf(stderr, "skipped %s: %s\n", skip.symbol.c_str(), skip.reason.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stock-similarity backtesting toolkit"};
  app.require_subcommand(1);

  // similar: rank the most similar stocks for one target.
  auto* similar = app.add_subcommand("similar", "Rank the top-k most similar stocks");
  std::string s_data, s_target, s_function = "euclidean", s_value = "close",
              s_fixer = "time_join", s_first, s_last;
  int s_k = 10, s_delay = 1;
  double s_pip = 0.10;
  similar->add_option("--data", s_data, "OHLCV CSV file")->required();
  similar->add_option("--target", s_target, "target symbol")->required();
  similar->add_option("--function", s_function,
                      "euclidean|pearson|dtw|mindist|cointegration");
  similar->add_option("--value", s_value, "close|proc");
  similar->add_option("--fixer", s_fixer, "time_join|delayed_time_join|padding|pip");
  similar->add_option("--k", s_k, "peers to keep");
  similar->add_option("--delay", s_delay, "delay for delayed_time_join");
  similar->add_option("--pip-fraction", s_pip, "fraction of points kept by the pip fixer");
  similar->add_option("--train-first", s_first, "first date (YYYY-MM-DD) of the scoring range");
  similar->add_option("--train-last", s_last, "last date (YYYY-MM-DD) of the scoring range");

  // backtest: run a configured experiment grid.
  auto* backtest = app.add_subcommand("backtest", "Run the experiment grid");
  std::string b_data, b_config, b_out;
  std::uint64_t b_seed = 0;
  int b_jobs = 0;
  bool b_seed_set = false, b_jobs_set = false;
  backtest->add_option("--data", b_data, "OHLCV CSV file")->required();
  backtest->add_option("--config", b_config, "grid config file (key = value lines)")->required();
  backtest->add_option("--out", b_out, "output CSV path")->required();
  backtest->add_option("--seed", b_seed, "master seed (overrides the config file)")
      ->each([&](const std::string&) { b_seed_set = true; });
  backtest->add_option("--jobs", b_jobs, "parallel workers (overrides the config file)")
      ->each([&](const std::string&) { b_jobs_set = true; });

  // report: aggregate a results CSV.
  auto* report = app.add_subcommand("report", "Aggregate a results CSV by key columns");
  std::string r_in, r_group;
  report->add_option("--in", r_in, "results CSV from `backtest`")->required();
  report->add_option("--group-by", r_group, "comma-separated key columns")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (similar->parsed())
      return cmd_similar(s_data, s_target, s_function, s_value, s_fixer, s_k, s_delay, s_pip,
                         s_first, s_last);

    if (backtest->parsed()) {
      auto grid = stocksim::parse_grid_config(b_config);
      if (b_seed_set) grid.seed = b_seed;
      if (b_jobs_set) grid.jobs = b_jobs;
      const auto universe = stocksim::parse_bars_csv(b_data, {}, grid.targets);
      const auto rows = stocksim::run_grid(universe, grid);
      stocksim::write_report(rows, b_out);
      std::size_t failed = 0;
      for (const auto& r : rows)
        if (!r.error_tag.empty()) ++failed;
      std::fprintf(stderr, "wrote %zu rows (%zu with errors) to %s\n", rows.size(), failed,
                   b_out.c_str());
      return 0;
    }

    if (report->parsed()) {
      std::vector<std::string> cols;
      std::string cur;
      for (char c : r_group) {
        if (c == ',') {
          if (!cur.empty()) cols.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!cur.empty()) cols.push_back(cur);
      const auto table = stocksim::read_csv_table(r_in);
      std::fputs(stocksim::aggregate_report(table, cols).c_str(), stdout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
