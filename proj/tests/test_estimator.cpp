//------------------------------------------------------------------------------
//
//   Copyright 2026 The bimodal-auctions Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bimodal/estimator.hpp"
#include "bimodal/rng.hpp"

using namespace bimodal;

namespace {

const Mechanism kSecondPrice = [](const Bids& b) { return second_price(b); };

Mechanism draw_mech(int k, double c) {
  const DrawParams params(k, c);
  return [params](const Bids& b) { return draw_auction(params, b); };
}

}  // namespace

TEST_CASE("degenerate sampler gives an exact estimate") {
  const MixtureSampler constant(2, 0.0, Interval{0.5, 0.5},
                                Interval{0.5, 0.5}, 1);
  const EstimatorResult r = estimate_profit(kSecondPrice, constant, 5000, 1);
  CHECK(r.mean == 0.5);
  CHECK(r.std_error == 0.0);
  CHECK(r.iters == 5000);
}

TEST_CASE("matches the closed-form second order statistic") {
  // all-high sampler on [0.6, 1]: E[second highest of 4] = 0.6 + 0.4 * 3/5
  const MixtureSampler s(4, 1.0, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 3);
  const EstimatorResult r = estimate_profit(kSecondPrice, s, 100000, 3);
  CHECK(std::abs(r.mean - 0.84) <= 3.0 * r.std_error);
  CHECK(r.std_error > 0.0);
  CHECK(r.std_error < 1e-2);
}

TEST_CASE("k = 1 draw estimate equals the second-price estimate") {
  const MixtureSampler s(5, 0.1, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 17);
  const EstimatorResult draw = estimate_profit(draw_mech(1, 0.37), s, 20000, 17);
  const EstimatorResult sp = estimate_profit(kSecondPrice, s, 20000, 17);
  CHECK(draw.mean == sp.mean);
  CHECK(draw.std_error == sp.std_error);
}

TEST_CASE("estimates are reproducible and worker-count independent") {
  const MixtureSampler s(5, 0.1, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 23);
  const EstimatorResult a = estimate_profit(draw_mech(2, 0.4), s, 30000, 23, 1);
  const EstimatorResult b = estimate_profit(draw_mech(2, 0.4), s, 30000, 23, 1);
  const EstimatorResult c = estimate_profit(draw_mech(2, 0.4), s, 30000, 23, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean == c.mean);
  CHECK(a.std_error == c.std_error);
}

TEST_CASE("single-cell grid returns that cell") {
  const MixtureSampler s(5, 0.1, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 29);
  const EstimatorResult best = grid_search_draw(s, {2}, {0.4}, 5000, 29);
  CHECK(*best.best_k == 2);
  CHECK(*best.best_c == 0.4);
  const EstimatorResult direct =
      estimate_profit(draw_mech(2, 0.4), s, 5000, rng::derive(29, 0));
  CHECK(best.mean == direct.mean);
}

TEST_CASE("grid argmax agrees with independent re-evaluation") {
  const MixtureSampler s(5, 0.1, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 31);
  const std::vector<int> ks = {1, 2, 3, 4};
  const std::vector<double> cs = {0.0, 0.25, 0.5, 0.75, 1.0};
  const EstimatorResult best = grid_search_draw(s, ks, cs, 5000, 31);

  double max_mean = -1.0;
  int arg_k = 0;
  double arg_c = 0.0;
  std::size_t cell = 0;
  for (int k : ks) {
    for (double c : cs) {
      const EstimatorResult fit =
          estimate_profit(draw_mech(k, c), s, 5000, rng::derive(31, cell));
      if (fit.mean > max_mean) {
        max_mean = fit.mean;
        arg_k = k;
        arg_c = c;
      }
      ++cell;
    }
  }
  CHECK(best.mean == max_mean);
  CHECK(*best.best_k == arg_k);
  CHECK(*best.best_c == arg_c);
}

TEST_CASE("tuned draw dominates the plain second-price cell") {
  // coarse grid, c step 0.05: the k=1 cells are second-price auctions, so
  // the argmax is at least the second-price estimate on the same seeds.
  const MixtureSampler s(5, 0.02, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 37);
  std::vector<double> cs;
  for (double c = 0.0; c < 1.0 - 1e-12; c += 0.05) cs.push_back(c);
  cs.push_back(1.0);
  const EstimatorResult best =
      grid_search_draw(s, {1, 2, 3, 4}, cs, 10000, 37);
  const EstimatorResult sp =
      estimate_profit(kSecondPrice, s, 10000, rng::derive(37, 0));
  CHECK(best.mean >= sp.mean);
}

TEST_CASE("grid errors") {
  const MixtureSampler s(5, 0.1, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 41);
  CHECK_THROWS_AS(grid_search_draw(s, {}, {0.4}, 100, 41),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_search_draw(s, {1}, {}, 100, 41),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_search_draw(s, {5}, {0.4}, 100, 41),
                  std::invalid_argument);
}

TEST_CASE("reserve search on the two-segment grid") {
  const BimodalSpec spec(0.2, 0.6, 0.0, 0.9, 0.1);
  SUBCASE("no high valuations: the best reserve stays in the low mode") {
    const MixtureSampler s(5, 0.0, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 43);
    const EstimatorResult best = grid_search_reserve(s, spec, 8000, 43, 0.02);
    CHECK(*best.best_reserve <= spec.a);
  }
  SUBCASE("singleton grid") {
    const MixtureSampler s(5, 0.1, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 47);
    const EstimatorResult best =
        grid_search_reserve(s, std::vector<double>{0.0}, 8000, 47);
    CHECK(*best.best_reserve == 0.0);
    const EstimatorResult sp =
        estimate_profit(kSecondPrice, s, 8000, rng::derive(47, 0));
    CHECK(best.mean == sp.mean);
  }
  SUBCASE("full grid dominates the zero-reserve cell") {
    const MixtureSampler s(5, 0.1, Interval{0.0, 0.2}, Interval{0.6, 1.0}, 53);
    const EstimatorResult best = grid_search_reserve(s, spec, 8000, 53, 0.02);
    const Mechanism zero = [](const Bids& b) { return second_price(b, 0.0); };
    const EstimatorResult at_zero =
        estimate_profit(zero, s, 8000, rng::derive(53, 0));
    CHECK(best.mean >= at_zero.mean);
  }
}

TEST_CASE("reserve grid layout") {
  const BimodalSpec spec(0.2, 0.6, 0.0, 0.9, 0.1);
  const std::vector<double> grid = reserve_grid(spec, 0.1);
  // {0, 0.1, 0.2} then {0.6, 0.7, 0.8, 0.9, 1.0}
  REQUIRE(grid.size() == 8);
  CHECK(grid[0] == 0.0);
  CHECK(grid[2] == 0.2);
  CHECK(grid[3] == 0.6);
  CHECK(grid.back() == 1.0);
}
