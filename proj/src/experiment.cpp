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

#include "bimodal/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "bimodal/rng.hpp"

namespace bimodal {
namespace {

// Seed salts for the independent phases of one experiment.
constexpr std::uint64_t kSaltTuneDraw = 0x01;
constexpr std::uint64_t kSaltTuneReserve = 0x02;
constexpr std::uint64_t kSaltEvaluate = 0x03;
constexpr std::uint64_t kSaltScenario = 0x04;

std::vector<double> c_grid(double step) {
  std::vector<double> grid;
  for (double c = 0.0; c < 1.0 - 1e-12; c += step) grid.push_back(c);
  grid.push_back(1.0);
  return grid;
}

std::vector<int> full_k_range(int n) {
  std::vector<int> ks(static_cast<std::size_t>(n - 1));
  std::iota(ks.begin(), ks.end(), 1);
  return ks;
}

Mechanism make_mechanism(const std::string& name, const TunedParams& tuned) {
  if (name == "second-price") {
    return [](const Bids& b) { return second_price(b, 0.0); };
  }
  if (name == "second-price-reserve") {
    const double reserve = tuned.reserve;
    return [reserve](const Bids& b) { return second_price(b, reserve); };
  }
  if (name == "draw") {
    const DrawParams params(tuned.k, tuned.c);
    return [params](const Bids& b) { return draw_auction(params, b); };
  }
  if (name == "myerson") {
    const MyersonParams params = tuned.myerson;
    return [params](const Bids& b) { return myerson_allocate(params, b); };
  }
  throw std::invalid_argument("unknown mechanism: " + name);
}

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

ScenarioSet robustness_scenarios(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw std::invalid_argument("robustness_scenarios: need 0 < a < 1");
  }
  ScenarioSet set;
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= i; ++j) {
      set.intervals.push_back(
          Interval{(j - 1) * a / i, j * a / i});
    }
  }
  return set;
}

TunedParams tune_parameters(const ExperimentConfig& config) {
  const MixtureSampler sampler = sampler_for(config.spec, config.n, config.p,
                                             config.seed);
  TunedParams tuned;
  const std::vector<int> ks = config.grids.k_range.empty()
                                  ? full_k_range(config.n)
                                  : config.grids.k_range;
  tuned.draw_fit = grid_search_draw(sampler, ks, c_grid(config.grids.c_step),
                                    config.iters,
                                    rng::derive(config.seed, kSaltTuneDraw),
                                    config.workers);
  tuned.k = *tuned.draw_fit.best_k;
  tuned.c = *tuned.draw_fit.best_c;
  tuned.reserve_fit = grid_search_reserve(
      sampler, config.spec, config.iters,
      rng::derive(config.seed, kSaltTuneReserve), config.grids.vstar_step,
      config.workers);
  tuned.reserve = *tuned.reserve_fit.best_reserve;
  tuned.myerson = myerson_params(config.spec);
  return tuned;
}

std::vector<TableRow> run_experiment(const ExperimentConfig& config,
                                     ExperimentMode mode) {
  return run_experiment(config, mode, tune_parameters(config));
}

std::vector<TableRow> run_experiment(const ExperimentConfig& config,
                                     ExperimentMode mode,
                                     const TunedParams& tuned) {
  const double np = config.n * config.p;
  std::vector<TableRow> rows;
  rows.reserve(config.mechanisms.size());

  std::vector<EstimatorResult> fits(config.mechanisms.size());
  if (mode == ExperimentMode::kOriginal) {
    // Common random profiles across mechanisms: one evaluation seed.
    const std::uint64_t eval_seed = rng::derive(config.seed, kSaltEvaluate);
    const MixtureSampler sampler =
        sampler_for(config.spec, config.n, config.p, config.seed);
    for (std::size_t i = 0; i < config.mechanisms.size(); ++i) {
      fits[i] = estimate_profit(make_mechanism(config.mechanisms[i], tuned),
                                sampler, config.iters, eval_seed,
                                config.workers);
    }
  } else {
    // Frozen parameters, perturbed low mode; scenario-averaged estimates.
    const ScenarioSet scenarios = robustness_scenarios(config.spec.a);
    const std::uint64_t base_seed = rng::derive(config.seed, kSaltScenario);
    for (std::size_t i = 0; i < config.mechanisms.size(); ++i) {
      const Mechanism mech = make_mechanism(config.mechanisms[i], tuned);
      double mean_sum = 0.0, var_sum = 0.0;
      for (int s = 0; s < scenarios.count(); ++s) {
        const MixtureSampler sampler(
            config.n, config.p, scenarios.intervals[static_cast<std::size_t>(s)],
            Interval{config.spec.b, 1.0}, config.seed);
        const EstimatorResult fit = estimate_profit(
            mech, sampler, config.iters,
            rng::derive(base_seed, static_cast<std::uint64_t>(s)),
            config.workers);
        mean_sum += fit.mean;
        var_sum += fit.std_error * fit.std_error;
      }
      fits[i].mean = mean_sum / scenarios.count();
      fits[i].std_error = std::sqrt(var_sum) / scenarios.count();
      fits[i].iters = config.iters * scenarios.count();
    }
  }

  double draw_mean = 0.0;
  for (std::size_t i = 0; i < config.mechanisms.size(); ++i) {
    if (config.mechanisms[i] == "draw") draw_mean = fits[i].mean;
  }

  for (std::size_t i = 0; i < config.mechanisms.size(); ++i) {
    const std::string& mech = config.mechanisms[i];
    TableRow row;
    row.np = np;
    row.a = config.spec.a;
    row.b = config.spec.b;
    row.n = config.n;
    row.mech = mech;
    row.mean = fits[i].mean;
    row.std_error = fits[i].std_error;
    row.pct_of_draw =
        draw_mean > 0.0 ? 100.0 * (fits[i].mean / draw_mean) : 0.0;
    if (mech == "draw") {
      row.k = tuned.k;
      row.c = tuned.c;
    } else if (mech == "second-price-reserve") {
      row.reserve = tuned.reserve;
    }
    row.mode =
        (mode == ExperimentMode::kOriginal) ? "original" : "robustness";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_header() {
  return "np,a,b,n,mech,mean,std_error,pct_of_draw,k,c,reserve,mode";
}

void write_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  os << csv_header() << '\n';
  for (const TableRow& r : rows) {
    os << format_fixed(r.np) << ',' << format_fixed(r.a) << ','
       << format_fixed(r.b) << ',' << r.n << ',' << r.mech << ','
       << format_fixed(r.mean) << ',' << format_fixed(r.std_error) << ','
       << format_fixed(r.pct_of_draw) << ',';
    if (r.k) os << *r.k;
    os << ',';
    if (r.c) os << format_fixed(*r.c);
    os << ',';
    if (r.reserve) os << format_fixed(*r.reserve);
    os << ',' << r.mode << '\n';
  }
}

TableSet run_table_sweep(const SweepOptions& options) {
  const double np_values[] = {0.1, 0.2, 0.3, 0.4, 0.5};
  const double a_values[] = {0.2, 0.4};
  const double b_values[] = {0.6, 0.8};

  TableSet tables;
  std::uint64_t config_index = 0;
  for (double np : np_values) {
    for (double a : a_values) {
      for (double b : b_values) {
        const double p = np / options.n;
        ExperimentConfig config{
            BimodalSpec(a, b, 0.0, 1.0 - p, p),
            options.n,
            p,
            options.iters,
            rng::derive(options.seed, config_index++),
            {"second-price", "second-price-reserve", "myerson", "draw"},
            GridSpec{options.c_step, options.vstar_step, {}},
            options.workers};
        const TunedParams tuned = tune_parameters(config);
        const auto original =
            run_experiment(config, ExperimentMode::kOriginal, tuned);
        const auto robustness =
            run_experiment(config, ExperimentMode::kRobustness, tuned);
        for (const TableRow& row : original) {
          if (row.mech == "draw" || row.mech == "myerson") {
            tables.efficiency.push_back(row);
          }
          tables.original.push_back(row);
        }
        for (const TableRow& row : robustness) {
          tables.robustness.push_back(row);
        }
        tables.scenario_count = robustness_scenarios(a).count();
      }
    }
  }
  return tables;
}

}  // namespace bimodal
