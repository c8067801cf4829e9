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

#include "bimodal/estimator.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bimodal/rng.hpp"

namespace bimodal {
namespace {

// Iterations are grouped into fixed-size shards; workers pull shards from a
// shared counter and write partial sums into per-shard slots, which are then
// reduced in shard order.  The result never depends on the worker count.
constexpr std::int64_t kShardSize = 8192;

struct Partial {
  double sum = 0.0;
  double sum_sq = 0.0;
};

Partial run_shard(const Mechanism& mechanism, const MixtureSampler& sampler,
                  std::int64_t begin, std::int64_t end) {
  Partial part;
  Eigen::VectorXd profile;
  for (std::int64_t t = begin; t < end; ++t) {
    sample_profile_into(sampler, static_cast<std::uint64_t>(t), profile);
    const double revenue =
        mechanism(Bids(profile)).revenue();
    part.sum += revenue;
    part.sum_sq += revenue * revenue;
  }
  return part;
}

}  // namespace

EstimatorResult estimate_profit(const Mechanism& mechanism,
                                const MixtureSampler& sampler,
                                std::int64_t iters, std::uint64_t seed,
                                int workers) {
  if (iters < 1) throw std::invalid_argument("estimate_profit: iters >= 1");
  const MixtureSampler seeded = sampler.with_seed(seed);
  const std::int64_t shards = (iters + kShardSize - 1) / kShardSize;
  std::vector<Partial> partials(static_cast<std::size_t>(shards));

  if (workers <= 1 || shards == 1) {
    for (std::int64_t s = 0; s < shards; ++s) {
      partials[static_cast<std::size_t>(s)] =
          run_shard(mechanism, seeded, s * kShardSize,
                    std::min(iters, (s + 1) * kShardSize));
    }
  } else {
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::int64_t s = next.fetch_add(1);
        if (s >= shards) return;
        partials[static_cast<std::size_t>(s)] =
            run_shard(mechanism, seeded, s * kShardSize,
                      std::min(iters, (s + 1) * kShardSize));
      }
    };
    const int count = static_cast<int>(
        std::min<std::int64_t>(workers, shards));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  double sum = 0.0, sum_sq = 0.0;
  for (const Partial& part : partials) {
    sum += part.sum;
    sum_sq += part.sum_sq;
  }
  EstimatorResult result;
  result.iters = iters;
  result.mean = sum / static_cast<double>(iters);
  if (iters > 1) {
    const double var =
        std::max(0.0, (sum_sq - static_cast<double>(iters) * result.mean *
                                    result.mean) /
                          static_cast<double>(iters - 1));
    result.std_error = std::sqrt(var / static_cast<double>(iters));
  }
  return result;
}

EstimatorResult grid_search_draw(const MixtureSampler& sampler,
                                 const std::vector<int>& k_range,
                                 const std::vector<double>& c_grid,
                                 std::int64_t iters, std::uint64_t seed,
                                 int workers) {
  if (k_range.empty() || c_grid.empty()) {
    throw std::invalid_argument("grid_search_draw: empty grid");
  }
  for (int k : k_range) {
    if (k < 1 || k > sampler.n - 1) {
      throw std::invalid_argument(
          "grid_search_draw: k_range must lie in {1, ..., n-1}");
    }
  }

  struct Cell {
    int k;
    double c;
    EstimatorResult fit;
  };
  std::vector<Cell> cells;
  cells.reserve(k_range.size() * c_grid.size());
  for (int k : k_range) {
    for (double c : c_grid) cells.push_back({k, c, {}});
  }

  auto eval_cell = [&](std::size_t idx) {
    Cell& cell = cells[idx];
    const DrawParams params(cell.k, cell.c);
    const Mechanism mech = [params](const Bids& b) {
      return draw_auction(params, b);
    };
    cell.fit = estimate_profit(mech, sampler, iters,
                               rng::derive(seed, idx), /*workers=*/1);
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) eval_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        eval_cell(i);
      }
    };
    const int count = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(workers), cells.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  // Cells are laid out k-major with c ascending, so a strict comparison
  // keeps the smallest k, then the smallest c, on ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].fit.mean > cells[best].fit.mean) best = i;
  }
  EstimatorResult result = cells[best].fit;
  result.best_k = cells[best].k;
  result.best_c = cells[best].c;
  return result;
}

std::vector<double> reserve_grid(const BimodalSpec& spec, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("reserve_grid: step > 0");
  std::vector<double> grid;
  for (double v = 0.0; v < spec.a - 1e-12; v += step) grid.push_back(v);
  grid.push_back(spec.a);
  for (double v = spec.b; v < 1.0 - 1e-12; v += step) grid.push_back(v);
  grid.push_back(1.0);
  return grid;
}

EstimatorResult grid_search_reserve(const MixtureSampler& sampler,
                                    const BimodalSpec& spec,
                                    std::int64_t iters, std::uint64_t seed,
                                    double step, int workers) {
  return grid_search_reserve(sampler, reserve_grid(spec, step), iters, seed,
                             workers);
}

EstimatorResult grid_search_reserve(const MixtureSampler& sampler,
                                    const std::vector<double>& grid,
                                    std::int64_t iters, std::uint64_t seed,
                                    int workers) {
  if (grid.empty()) {
    throw std::invalid_argument("grid_search_reserve: empty grid");
  }
  std::vector<EstimatorResult> fits(grid.size());

  auto eval_cell = [&](std::size_t idx) {
    const double reserve = grid[idx];
    const Mechanism mech = [reserve](const Bids& b) {
      return second_price(b, reserve);
    };
    fits[idx] = estimate_profit(mech, sampler, iters, rng::derive(seed, idx),
                                /*workers=*/1);
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) eval_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= grid.size()) return;
        eval_cell(i);
      }
    };
    const int count = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(workers), grid.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (fits[i].mean > fits[best].mean) best = i;
  }
  EstimatorResult result = fits[best];
  result.best_reserve = grid[best];
  return result;
}

}  // namespace bimodal
