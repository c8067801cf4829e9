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

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bimodal/config.hpp"
#include "bimodal/estimator.hpp"
#include "bimodal/experiment.hpp"
#include "bimodal/myerson.hpp"
#include "bimodal/prior.hpp"
#include "bimodal/verification.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr int kExitSale = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoSale = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BIMODAL_AUCTIONS_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return kDefaultSeed;
}

std::vector<double> parse_bids(const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("malformed bid: " + token);
    out.push_back(v);
  }
  if (out.size() < 2) throw std::invalid_argument("need at least two bids");
  return out;
}

// Spec flags shared by the subcommands that need a prior; values fall back
// to a config file when given, flags win.
struct SpecFlags {
  std::optional<double> a, b, eps, p1, p2;
  std::string config_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "top limit of the first mode");
    cmd->add_option("--b", b, "lower limit of the second mode");
    cmd->add_option("--eps", eps, "mass between the modes");
    cmd->add_option("--p1", p1, "mass of the first mode");
    cmd->add_option("--p2", p2, "mass of the second mode");
    cmd->add_option("--config", config_path,
                    "key-value config file (flags override it)");
  }

  bimodal::BimodalSpec resolve() const {
    std::optional<bimodal::KeyValueConfig> cfg;
    if (!config_path.empty()) cfg = bimodal::KeyValueConfig::load(config_path);
    auto pick = [&](const std::optional<double>& flag, const char* key) {
      if (flag) return *flag;
      if (cfg && cfg->has(key)) return cfg->get_real(key);
      throw std::invalid_argument(std::string("missing prior parameter: ") +
                                  key);
    };
    return bimodal::BimodalSpec(pick(a, "a"), pick(b, "b"), pick(eps, "eps"),
                                pick(p1, "p1"), pick(p2, "p2"));
  }
};

void print_vector(std::ostream& os, const char* label,
                  const Eigen::VectorXd& v) {
  os << label << ": ";
  for (int i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << '\n';
}

int print_outcome(const bimodal::Outcome& outcome, std::uint64_t seed) {
  std::cout << std::fixed << std::setprecision(6);
  if (!outcome.sold()) {
    std::cout << "no sale\n";
    print_vector(std::cout, "alloc", outcome.alloc);
    print_vector(std::cout, "pay", outcome.pay);
    return kExitNoSale;
  }
  std::vector<int> lottery;
  for (int i = 0; i < outcome.alloc.size(); ++i) {
    if (outcome.alloc[i] > 0.0) lottery.push_back(i);
  }
  if (lottery.size() > 1) {
    std::cout << "draw-set: ";
    for (std::size_t i = 0; i < lottery.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << lottery[i] + 1;
    }
    std::cout << '\n';
  }
  const int winner = bimodal::realize_winner(outcome, seed);
  std::cout << "winner: " << winner + 1 << '\n';
  std::cout << "price: " << outcome.revenue() << '\n';
  print_vector(std::cout, "alloc", outcome.alloc);
  print_vector(std::cout, "pay", outcome.pay);
  return kExitSale;
}

int cmd_run_auction(const std::string& mech, const std::string& bids_raw,
                    double reserve, std::optional<int> k,
                    std::optional<double> c, double v0,
                    const SpecFlags& spec_flags, std::uint64_t seed) {
  const std::vector<double> parsed = parse_bids(bids_raw);
  const bimodal::Bids bids(
      Eigen::Map<const Eigen::VectorXd>(parsed.data(),
                                        static_cast<long>(parsed.size())));
  bimodal::Outcome outcome;
  if (mech == "second-price") {
    outcome = bimodal::second_price(bids, reserve);
  } else if (mech == "draw") {
    if (!k || !c) throw std::invalid_argument("draw needs -k and -c");
    outcome = bimodal::draw_auction(bimodal::DrawParams(*k, *c, v0), bids);
  } else if (mech == "myerson") {
    outcome = bimodal::myerson_allocate(
        bimodal::myerson_params(spec_flags.resolve()), bids);
  } else {
    throw std::invalid_argument("unknown mechanism: " + mech);
  }
  return print_outcome(outcome, seed);
}

int cmd_verify(std::int64_t trials, std::int64_t instances, int specs,
               int grid_points, double step, std::uint64_t seed,
               const std::string& out_path) {
  using namespace bimodal;
  bool ok = true;
  std::cout << std::setprecision(10);

  const MixtureSampler base(5, 0.2, Interval{0.0, 0.2}, Interval{0.6, 1.0},
                            seed);
  const auto grid = deviation_grid(step);
  const DominanceReport dom = check_dominance(base, grid, trials, seed);
  std::cout << (dom.clean() ? "PASS" : "FAIL") << " dominance: " << dom.trials
            << " trials, " << dom.comparisons << " comparisons, "
            << dom.violations.size() << " violations\n";
  ok = ok && dom.clean();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    write_violations_csv(out, dom);
  } else if (!dom.clean()) {
    write_violations_csv(std::cerr, dom);
  }

  const ClassifierReport cls = run_classifier_consistency(instances, seed);
  std::cout << (cls.mismatches == 0 ? "PASS" : "FAIL")
            << " case-classifier: " << cls.instances << " instances, max |err| "
            << cls.max_abs_error << ", " << cls.mismatches << " mismatches\n";
  ok = ok && cls.mismatches == 0;

  double worst = 0.0;
  for (int i = 0; i < specs; ++i) {
    const BimodalSpec spec = random_spec(seed, static_cast<std::uint64_t>(i));
    const MyersonParams closed = myerson_params(spec);
    const MyersonParams oracle = numerical_myerson_oracle(spec, grid_points);
    const double d = std::max(
        {std::abs(closed.x_min - oracle.x_min),
         std::abs(closed.x_ll - oracle.x_ll),
         std::abs(closed.x_cut - oracle.x_cut),
         std::abs(closed.beta0 - oracle.beta0),
         std::abs(closed.z0 - oracle.z0), std::abs(closed.y0 - oracle.y0)});
    worst = std::max(worst, d);
  }
  std::cout << (worst <= 1e-3 ? "PASS" : "FAIL")
            << " ironing-oracle: " << specs << " priors, max |diff| " << worst
            << "\n";
  ok = ok && worst <= 1e-3;

  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"auction toolkit for bimodal-uniform valuation priors"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "global random seed")->capture_default_str();

  // run-auction
  auto* run = app.add_subcommand("run-auction", "run one auction on a bid vector");
  std::string mech, bids_raw;
  double reserve = 0.0, v0 = 0.0;
  std::optional<int> draw_k;
  std::optional<double> draw_c;
  SpecFlags run_spec;
  run->add_option("--mech", mech, "second-price | draw | myerson")->required();
  run->add_option("--bids", bids_raw, "comma-separated bids")->required();
  run->add_option("--reserve", reserve, "reserve price (second-price)");
  run->add_option("-k,--k", draw_k, "draw lottery size");
  run->add_option("-c,--c", draw_c, "draw fixed price");
  run->add_option("--v0", v0, "seller valuation");
  run_spec.attach(run);

  // myerson-params
  auto* params_cmd =
      app.add_subcommand("myerson-params", "print optimal-auction thresholds");
  SpecFlags params_spec;
  params_spec.attach(params_cmd);

  // tune
  auto* tune = app.add_subcommand("tune", "grid-search mechanism parameters");
  SpecFlags tune_spec;
  tune_spec.attach(tune);
  std::string tune_mech = "both";
  int tune_n = 5;
  double tune_p = -1.0, tune_np = -1.0;
  std::int64_t tune_iters = 100000;
  double tune_cstep = 0.01, tune_vstep = 0.005;
  int tune_workers = 1;
  tune->add_option("--mech", tune_mech, "draw | second-price-reserve | both")
      ->capture_default_str();
  tune->add_option("--n", tune_n, "number of buyers")->capture_default_str();
  tune->add_option("--p", tune_p, "per-buyer high-mode probability");
  tune->add_option("--np", tune_np, "expected high bidders (sets p = np/n)");
  tune->add_option("--iters", tune_iters, "simulations per grid cell")
      ->capture_default_str();
  tune->add_option("--c-step", tune_cstep, "fixed-price grid step")
      ->capture_default_str();
  tune->add_option("--vstar-step", tune_vstep, "reserve grid step")
      ->capture_default_str();
  tune->add_option("--workers", tune_workers, "worker threads")
      ->capture_default_str();

  // reproduce-tables
  auto* tables = app.add_subcommand(
      "reproduce-tables", "run the full comparison sweep and emit CSV tables");
  std::string out_dir;
  bimodal::SweepOptions sweep;
  bool full_scale = false;
  tables->add_option("--out", out_dir, "output directory")->required();
  tables->add_option("--n", sweep.n, "number of buyers")->capture_default_str();
  tables->add_option("--iters", sweep.iters, "simulations per estimate")
      ->capture_default_str();
  tables->add_option("--c-step", sweep.c_step, "fixed-price grid step")
      ->capture_default_str();
  tables->add_option("--vstar-step", sweep.vstar_step, "reserve grid step")
      ->capture_default_str();
  tables->add_option("--workers", sweep.workers, "worker threads")
      ->capture_default_str();
  tables->add_flag("--full", full_scale,
                   "full-scale run (1e6 simulations, reserve step 0.001)");
  std::string tables_config;
  tables->add_option("--config", tables_config,
                     "key-value config file (flags override it)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::int64_t ver_trials = 1000, ver_instances = 20000;
  int ver_specs = 25, ver_grid_points = 200000;
  double ver_step = 0.01;
  std::string ver_out;
  verify->add_option("--trials", ver_trials, "dominance trials")
      ->capture_default_str();
  verify->add_option("--instances", ver_instances, "classifier instances")
      ->capture_default_str();
  verify->add_option("--specs", ver_specs, "random priors for the oracle")
      ->capture_default_str();
  verify->add_option("--grid-points", ver_grid_points, "oracle grid points")
      ->capture_default_str();
  verify->add_option("--step", ver_step, "deviation grid step")
      ->capture_default_str();
  verify->add_option("--out", ver_out, "violations CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) {
      return cmd_run_auction(mech, bids_raw, reserve, draw_k, draw_c, v0,
                             run_spec, seed);
    }
    if (params_cmd->parsed()) {
      bimodal::write_params(std::cout,
                            bimodal::myerson_params(params_spec.resolve()));
      return 0;
    }
    if (tune->parsed()) {
      const bimodal::BimodalSpec spec = tune_spec.resolve();
      if (!tune_spec.config_path.empty()) {
        const auto cfg = bimodal::KeyValueConfig::load(tune_spec.config_path);
        if (tune->count("--n") == 0)
          tune_n = static_cast<int>(cfg.get_int("n", tune_n));
        if (tune->count("--p") == 0 && tune->count("--np") == 0 && cfg.has("p"))
          tune_p = cfg.get_real("p");
        if (tune->count("--iters") == 0)
          tune_iters = cfg.get_int("iters", tune_iters);
        if (tune->count("--c-step") == 0)
          tune_cstep = cfg.get_real("c_step", tune_cstep);
        if (tune->count("--vstar-step") == 0)
          tune_vstep = cfg.get_real("vstar_step", tune_vstep);
        if (app.count("--seed") == 0) seed = cfg.get_uint("seed", seed);
      }
      if (tune_np > 0.0) tune_p = tune_np / tune_n;
      if (tune_p < 0.0) tune_p = spec.p2;
      const bimodal::MixtureSampler sampler =
          bimodal::sampler_for(spec, tune_n, tune_p, seed);
      std::cout << std::fixed << std::setprecision(6);
      if (tune_mech == "draw" || tune_mech == "both") {
        std::vector<int> ks(static_cast<std::size_t>(tune_n - 1));
        for (int i = 0; i < tune_n - 1; ++i) ks[static_cast<std::size_t>(i)] = i + 1;
        std::vector<double> cs;
        for (double c = 0.0; c < 1.0 - 1e-12; c += tune_cstep) cs.push_back(c);
        cs.push_back(1.0);
        const auto fit = bimodal::grid_search_draw(sampler, ks, cs, tune_iters,
                                                   seed, tune_workers);
        std::cout << "draw: k=" << *fit.best_k << " c=" << *fit.best_c
                  << " profit=" << fit.mean << " se=" << fit.std_error << '\n';
      }
      if (tune_mech == "second-price-reserve" || tune_mech == "both") {
        const auto fit = bimodal::grid_search_reserve(
            sampler, spec, tune_iters, seed, tune_vstep, tune_workers);
        std::cout << "second-price-reserve: v=" << *fit.best_reserve
                  << " profit=" << fit.mean << " se=" << fit.std_error << '\n';
      }
      return 0;
    }
    if (tables->parsed()) {
      sweep.seed = seed;
      if (!tables_config.empty()) {
        const auto cfg = bimodal::KeyValueConfig::load(tables_config);
        if (tables->count("--n") == 0)
          sweep.n = static_cast<int>(cfg.get_int("n", sweep.n));
        if (tables->count("--iters") == 0)
          sweep.iters = cfg.get_int("iters", sweep.iters);
        if (tables->count("--c-step") == 0)
          sweep.c_step = cfg.get_real("c_step", sweep.c_step);
        if (tables->count("--vstar-step") == 0)
          sweep.vstar_step = cfg.get_real("vstar_step", sweep.vstar_step);
        if (app.count("--seed") == 0)
          sweep.seed = cfg.get_uint("seed", sweep.seed);
      }
      if (full_scale) {
        sweep.iters = 1000000;
        sweep.vstar_step = 0.001;
        sweep.c_step = 0.01;
      }
      {
        // Fail on an unwritable destination before the sweep, not after.
        std::ofstream probe(out_dir + "/table1.csv", std::ios::binary);
        if (!probe) {
          throw std::runtime_error("cannot write to " + out_dir);
        }
      }
      const bimodal::TableSet set = bimodal::run_table_sweep(sweep);
      auto dump = [&](const std::string& name,
                      const std::vector<bimodal::TableRow>& rows) {
        std::ofstream out(out_dir + "/" + name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_dir + "/" + name);
        bimodal::write_csv(out, rows);
      };
      dump("table1.csv", set.efficiency);
      dump("table2.csv", set.original);
      dump("table3.csv", set.robustness);
      std::cout << "robustness scenarios per configuration: "
                << set.scenario_count << '\n';
      std::cout << std::fixed << std::setprecision(6);
      for (std::size_t i = 0; i + 1 < set.efficiency.size(); i += 2) {
        const auto& m = set.efficiency[i];      // myerson row
        const auto& d = set.efficiency[i + 1];  // draw row
        std::cout << "np=" << m.np << " a=" << m.a << " b=" << m.b
                  << " draw/myerson=" << 100.0 * d.mean / m.mean << "%\n";
      }
      return 0;
    }
    if (verify->parsed()) {
      return cmd_verify(ver_trials, ver_instances, ver_specs, ver_grid_points,
                        ver_step, seed, ver_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
