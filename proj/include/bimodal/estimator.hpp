#pragma once
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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bimodal/auction.hpp"
#include "bimodal/prior.hpp"

namespace bimodal {

/// A frozen-parameter auction rule.
using Mechanism = std::function<Outcome(const Bids&)>;

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t iters = 0;
  std::optional<int> best_k;
  std::optional<double> best_c;
  std::optional<double> best_reserve;
};

/// Monte Carlo estimate of the seller's expected profit under truthful
/// bidding: the mechanism runs on `iters` freshly sampled profiles and the
/// per-iteration revenue (total expected payment) is averaged.
///
/// Iteration t draws profile t of the sampler re-seeded with `seed`, so for
/// a fixed seed the estimate is bit-identical across runs and across worker
/// counts (iterations are reduced in fixed shard order regardless of which
/// thread computed them).
EstimatorResult estimate_profit(const Mechanism& mechanism,
                                const MixtureSampler& sampler,
                                std::int64_t iters, std::uint64_t seed,
                                int workers = 1);

/// Exhaustive grid search over Draw-auction parameters.  Every (k, c) cell
/// gets its own derived seed stream; ties are broken by smaller k, then
/// smaller c.  k_range must be a subset of {1, ..., n-1} and both grids
/// nonempty.
EstimatorResult grid_search_draw(const MixtureSampler& sampler,
                                 const std::vector<int>& k_range,
                                 const std::vector<double>& c_grid,
                                 std::int64_t iters, std::uint64_t seed,
                                 int workers = 1);

/// Reserve grid for the second-price auction with a minimum price: the
/// two-segment grid {0, step, ..., a} and {b, b+step, ..., 1}.  Ties break
/// toward the smaller reserve.
EstimatorResult grid_search_reserve(const MixtureSampler& sampler,
                                    const BimodalSpec& spec,
                                    std::int64_t iters, std::uint64_t seed,
                                    double step = 0.005, int workers = 1);

/// Same search over an explicit reserve grid.
EstimatorResult grid_search_reserve(const MixtureSampler& sampler,
                                    const std::vector<double>& grid,
                                    std::int64_t iters, std::uint64_t seed,
                                    int workers = 1);

/// The two-segment reserve grid itself (exposed for tests and the CLI).
std::vector<double> reserve_grid(const BimodalSpec& spec, double step);

}  // namespace bimodal
