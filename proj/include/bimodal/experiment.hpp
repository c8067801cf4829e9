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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bimodal/estimator.hpp"
#include "bimodal/myerson.hpp"
#include "bimodal/prior.hpp"

namespace bimodal {

/// Perturbed supports for the robustness analysis: the low mode (0,a) is
/// re-placed on every ((j-1)/i * a, j/i * a) for i = 1..5, j = 1..i, in
/// (i, j) order.  The formula yields 15 intervals, the first being the
/// original (0, a).
struct ScenarioSet {
  std::vector<Interval> intervals;
  int count() const { return static_cast<int>(intervals.size()); }
};

ScenarioSet robustness_scenarios(double a);

struct GridSpec {
  double c_step = 0.01;
  double vstar_step = 0.005;
  std::vector<int> k_range;  ///< empty = all of {1, ..., n-1}
};

struct ExperimentConfig {
  BimodalSpec spec;
  int n = 5;
  double p = 0.02;  ///< per-buyer high-mode probability; np = n * p
  std::int64_t iters = 100000;
  std::uint64_t seed = 42;
  std::vector<std::string> mechanisms = {"second-price",
                                         "second-price-reserve", "myerson",
                                         "draw"};
  GridSpec grids;
  int workers = 1;
};

enum class ExperimentMode { kOriginal, kRobustness };

/// One CSV row: estimate of a mechanism under one configuration, expressed
/// also as a percentage of the Draw auction's estimate (draw row = 100).
struct TableRow {
  double np, a, b;
  int n;
  std::string mech;
  double mean, std_error, pct_of_draw;
  std::optional<int> k;
  std::optional<double> c;
  std::optional<double> reserve;
  std::string mode;
};

/// Tuned mechanism parameters for one prior: the revenue-maximizing Draw
/// pair (k, c), the best second-price reserve, and the closed-form optimal
/// thresholds.
struct TunedParams {
  int k = 1;
  double c = 0.0;
  double reserve = 0.0;
  MyersonParams myerson{};
  EstimatorResult draw_fit{};
  EstimatorResult reserve_fit{};
};

TunedParams tune_parameters(const ExperimentConfig& config);

/// Original mode: tune on config.spec, estimate every mechanism on fresh
/// common-random profiles.  Robustness mode: freeze the tuned parameters
/// and average each mechanism's estimate across the perturbed scenarios
/// (low mode moved, high mode and all parameters unchanged).
std::vector<TableRow> run_experiment(const ExperimentConfig& config,
                                     ExperimentMode mode);
std::vector<TableRow> run_experiment(const ExperimentConfig& config,
                                     ExperimentMode mode,
                                     const TunedParams& tuned);

std::string csv_header();
void write_csv(std::ostream& os, const std::vector<TableRow>& rows);

/// Everything reproduce-tables emits for one parameter sweep.
struct TableSet {
  std::vector<TableRow> efficiency;  ///< draw + myerson rows, original mode
  std::vector<TableRow> original;    ///< all mechanisms, original mode
  std::vector<TableRow> robustness;  ///< all mechanisms, robustness mode
  int scenario_count = 0;            ///< robustness scenarios per config
};

struct SweepOptions {
  int n = 5;
  std::int64_t iters = 100000;
  std::uint64_t seed = 42;
  double c_step = 0.01;
  double vstar_step = 0.005;
  int workers = 1;
};

/// Runs the full sweep np in {0.1,...,0.5} x a in {0.2,0.4} x b in
/// {0.6,0.8} (20 configurations) in both modes.
TableSet run_table_sweep(const SweepOptions& options);

}  // namespace bimodal
