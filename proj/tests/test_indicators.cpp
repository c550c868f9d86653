#include <cmath>
#include <vector>

#include "doctest.h"
#include "stocksim/indicators.hpp"
#include "stocksim/mathutil.hpp"

using namespace stocksim;

namespace {

// Independent oracle: exponential smoothing written as the explicit weighted
// sum a*sum((1-a)^i * x[t-i]) + (1-a)^t * x[0] instead of the recursion.
double ema_oracle_at(const std::vector<double>& x, int span, std::size_t t) {
  const double a = 2.0 / (span + 1.0);
  double acc = std::pow(1.0 - a, static_cast<double>(t)) * x[0];
  for (std::size_t i = 1; i <= t; ++i)
    acc += a * std::pow(1.0 - a, static_cast<double>(t - i)) * x[i];
  return acc;
}

}  // namespace

TEST_CASE("rate of change matches hand-computed forward returns") {
  const std::vector<double> closes{100.0, 110.0, 121.0};
  const auto r1 = proc(closes, 1);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0] == doctest::Approx(0.10));
  CHECK(r1[1] == doctest::Approx(0.10));

  const auto r2 = proc(closes, 2);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == doctest::Approx(0.21));

  CHECK_THROWS(proc(closes, 0));
  CHECK_THROWS(proc(closes, 3));
  CHECK_THROWS(proc({100.0}, 1));
}

TEST_CASE("rsi hand cases: monotone moves and flat windows") {
  // Strictly rising closes: no losses anywhere, so RSI pegs at 100.
  std::vector<double> up;
  for (int t = 0; t < 20; ++t) up.push_back(100.0 + t);
  for (double v : rsi(up, 14)) CHECK(v == doctest::Approx(100.0));

  // Strictly falling closes: no gains, RSI pegs at 0.
  std::vector<double> down;
  for (int t = 0; t < 20; ++t) down.push_back(100.0 - t);
  for (double v : rsi(down, 14)) CHECK(v == doctest::Approx(0.0));

  // Flat closes: no movement at all reads as neutral.
  std::vector<double> flat(20, 50.0);
  for (double v : rsi(flat, 14)) CHECK(v == doctest::Approx(50.0));

  CHECK(rsi(up, 14).size() == up.size() - 14);
  CHECK_THROWS(rsi(std::vector<double>(10, 1.0), 14));
  CHECK_THROWS(rsi(up, 0));
}

TEST_CASE("rsi matches a hand-computed mixed window") {
  // Window of 4 diffs: +2, -1, +3, -2  =>  avg gain 5/4, avg loss 3/4,
  // RS = 5/3, RSI = 100 - 100/(1 + 5/3) = 62.5.
  const std::vector<double> x{10.0, 12.0, 11.0, 14.0, 12.0};
  const auto r = rsi(x, 4);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(62.5));
}

TEST_CASE("ema recursion equals the explicit weighted-sum oracle") {
  Rng rng(77);
  std::vector<double> x;
  for (int t = 0; t < 40; ++t) x.push_back(50.0 + 5.0 * rng.next_normal());
  for (int span : {3, 12, 26}) {
    const auto e = ema(x, span);
    REQUIRE(e.size() == x.size());
    CHECK(e[0] == doctest::Approx(x[0]));
    for (std::size_t t = 0; t < x.size(); t += 7)
      CHECK(e[t] == doctest::Approx(ema_oracle_at(x, span, t)).epsilon(1e-12));
  }
}

TEST_CASE("macd histogram is the signal-line residual of the ema spread") {
  Rng rng(78);
  std::vector<double> x;
  double p = 100.0;
  for (int t = 0; t < 120; ++t) {
    p *= std::exp(0.01 * rng.next_normal());
    x.push_back(p);
  }
  const auto hist = macd_histogram(x, 12, 26, 9);
  REQUIRE(hist.size() == x.size());

  // Oracle: rebuild from first principles with the weighted-sum form.
  std::vector<double> line;
  for (std::size_t t = 0; t < x.size(); ++t)
    line.push_back(ema_oracle_at(x, 12, t) - ema_oracle_at(x, 26, t));
  for (std::size_t t = 0; t < x.size(); t += 11) {
    const double expect = line[t] - ema_oracle_at(line, 9, t);
    CHECK(hist[t] == doctest::Approx(expect).epsilon(1e-9));
  }

  CHECK_THROWS(macd_histogram(x, 26, 12, 9));
  CHECK_THROWS(macd_histogram(x, 12, 12, 9));
}

TEST_CASE("a constant series has zero macd histogram everywhere") {
  const std::vector<double> flat(60, 42.0);
  for (double v : macd_histogram(flat, 12, 26, 9)) CHECK(v == doctest::Approx(0.0));
}
