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
//
// End-to-end acceptance suite.  Each criterion prints exactly one
// PASS/FAIL line; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "bimodal/estimator.hpp"
#include "bimodal/experiment.hpp"
#include "bimodal/myerson.hpp"
#include "bimodal/prior.hpp"
#include "bimodal/rng.hpp"
#include "bimodal/verification.hpp"

using namespace bimodal;

namespace {

int g_failures = 0;

class Criterion {
 public:
  explicit Criterion(std::string name)
      : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    if (!ok) {
      ok_ = false;
      if (!detail.empty()) details_.push_back(detail);
    }
  }

  ~Criterion() {
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start_);
    std::printf("[%s] %-28s (%lld ms)\n", ok_ ? "PASS" : "FAIL",
                name_.c_str(), static_cast<long long>(elapsed.count()));
    for (const std::string& d : details_) {
      std::printf("       %s\n", d.c_str());
    }
    if (!ok_) ++g_failures;
    std::fflush(stdout);
  }

 private:
  std::string name_;
  bool ok_ = true;
  std::vector<std::string> details_;
  std::chrono::steady_clock::time_point start_;
};

Bids make_bids(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<long>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return Bids(std::move(v));
}

std::string fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

// --- 1. Golden fixed-price example -----------------------------------------

void golden_example() {
  Criterion crit("worked-example");
  const DrawParams params(2, 0.4);

  const Outcome two = draw_auction(params, make_bids({0.7, 0.6, 0.3, 0.1}));
  crit.expect(two.alloc[0] == 1.0 && two.pay[0] == 0.6, "case (a) mismatch");

  const Outcome one = draw_auction(params, make_bids({0.7, 0.45, 0.3, 0.1}));
  crit.expect(one.alloc[0] == 1.0 && one.pay[0] == 0.4, "case (b) mismatch");

  const Outcome raffle = draw_auction(params, make_bids({0.45, 0.4, 0.3, 0.1}));
  crit.expect(raffle.alloc[0] == 0.5 && raffle.alloc[1] == 0.5 &&
                  raffle.alloc[2] == 0.0 && raffle.alloc[3] == 0.0 &&
                  raffle.pay[0] == 0.15 && raffle.pay[1] == 0.15,
              "lottery case mismatch");
  crit.expect(std::abs(raffle.revenue() - 0.3) < 1e-15,
              "lottery sale price mismatch");
}

// --- 2. k = 1 reduction ------------------------------------------------------

void k1_reduction() {
  Criterion crit("k1-second-price-reduction");
  std::int64_t mismatches = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const int n = 2 + static_cast<int>(rng::uniform01(101, t, 0) * 5);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = rng::uniform01(101, t, static_cast<std::uint64_t>(10 + i));
    }
    const double c = rng::uniform01(101, t, 1);
    const Bids bids(v);
    const Outcome lhs = draw_auction(DrawParams(1, c), bids);
    const Outcome rhs = second_price(bids, 0.0);
    if (lhs.alloc != rhs.alloc || lhs.pay != rhs.pay) ++mismatches;
  }
  crit.expect(mismatches == 0,
              fmt("%.0f mismatching outcomes", double(mismatches)));
}

// --- 3. Closed form vs numerical ironing oracle -----------------------------

void oracle_agreement() {
  Criterion crit("ironing-oracle-agreement");
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const BimodalSpec spec = random_spec(2026, static_cast<std::uint64_t>(i));
    const MyersonParams closed = myerson_params(spec);
    const MyersonParams oracle = numerical_myerson_oracle(spec, 1000000);
    const double diff = std::max(
        {std::abs(closed.x_min - oracle.x_min),
         std::abs(closed.x_ll - oracle.x_ll),
         std::abs(closed.x_cut - oracle.x_cut),
         std::abs(closed.beta0 - oracle.beta0),
         std::abs(closed.z0 - oracle.z0), std::abs(closed.y0 - oracle.y0)});
    worst = std::max(worst, diff);
  }
  crit.expect(worst <= 1e-3, fmt("max |closed - oracle| = %.3g", worst));
}

// --- 4. Hull properties ------------------------------------------------------

void hull_properties() {
  Criterion crit("hull-properties");
  for (std::uint64_t r = 0; r < 100; ++r) {
    const BimodalSpec spec = random_spec(424242, r);
    const MyersonCurves curves(spec);
    if (spec.eps > 0.0) {
      const bool cont =
          std::abs(curves.H1(spec.p1) - curves.H2(spec.p1)) <= 1e-9 &&
          std::abs(curves.H2(spec.p1 + spec.eps) -
                   curves.H3(spec.p1 + spec.eps)) <= 1e-9;
      crit.expect(cont, fmt("integral discontinuous at a junction (r=%.0f)",
                            double(r)));
    }
    double prev_g = -1e300, prev_G = 0.0, prev_q = 0.0, prev_slope = -1e300;
    bool below = true, convex = true, monotone = true;
    for (int i = 0; i <= 4000; ++i) {
      const double q = i / 4000.0;
      const double Gq = curves.G(q);
      below = below && Gq <= curves.H(q) + 1e-9;
      const double gq = curves.g(q);
      monotone = monotone && gq >= prev_g - 1e-9;
      prev_g = gq;
      if (i > 0) {
        const double slope = (Gq - prev_G) / (q - prev_q);
        convex = convex && slope >= prev_slope - 1e-9;
        prev_slope = slope;
      }
      prev_G = Gq;
      prev_q = q;
    }
    crit.expect(below, fmt("hull above integral (r=%.0f)", double(r)));
    crit.expect(convex, fmt("hull not convex (r=%.0f)", double(r)));
    crit.expect(monotone,
                fmt("ironed virtual value decreasing (r=%.0f)", double(r)));
  }
}

// --- 5. Dominance suite ------------------------------------------------------

void dominance_suite() {
  Criterion crit("draw-dominance");
  const MixtureSampler base(5, 0.2, Interval{0.0, 0.2}, Interval{0.6, 1.0},
                            777);
  const DominanceReport report =
      check_dominance(base, deviation_grid(0.01), 10000, 777);
  crit.expect(report.clean(),
              fmt("%.0f violations in %.0f trials",
                  double(report.violations.size()), double(report.trials)));
}

// --- 6. Case-classifier consistency -----------------------------------------

void classifier_consistency() {
  Criterion crit("case-classifier");
  const ClassifierReport report = run_classifier_consistency(100000, 31337);
  crit.expect(report.mismatches == 0,
              fmt("%.0f mismatches, max |err| %.3g",
                  double(report.mismatches), report.max_abs_error));
  std::int64_t total = 0;
  for (int c = 1; c <= 15; ++c) total += report.case_counts[c];
  crit.expect(total == report.instances, "instances outside the 15 cases");
}

// --- 7/8. Revenue ordering and efficiency ------------------------------------

struct ConfigResult {
  double np, a, b;
  int k = 0;
  double c = 0.0;
  double reserve = 0.0;
  EstimatorResult sp, spr, myerson, draw;
};

std::vector<ConfigResult> run_ordering_sweep() {
  std::vector<ConfigResult> results;
  const int n = 5;
  const std::int64_t iters = 100000;
  std::uint64_t config_index = 0;
  for (double np : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    for (double a : {0.2, 0.4}) {
      for (double b : {0.6, 0.8}) {
        const double p = np / n;
        ExperimentConfig config{BimodalSpec(a, b, 0.0, 1.0 - p, p),
                                n,
                                p,
                                iters,
                                rng::derive(0xACCE97, config_index++),
                                {"second-price", "second-price-reserve",
                                 "myerson", "draw"},
                                GridSpec{0.05, 0.005, {}},
                                1};
        const auto rows = run_experiment(config, ExperimentMode::kOriginal);
        ConfigResult r;
        r.np = np;
        r.a = a;
        r.b = b;
        for (const TableRow& row : rows) {
          EstimatorResult fit;
          fit.mean = row.mean;
          fit.std_error = row.std_error;
          if (row.mech == "second-price") r.sp = fit;
          if (row.mech == "second-price-reserve") {
            r.spr = fit;
            r.reserve = row.reserve.value_or(0.0);
          }
          if (row.mech == "myerson") r.myerson = fit;
          if (row.mech == "draw") {
            r.draw = fit;
            r.k = row.k.value_or(0);
            r.c = row.c.value_or(0.0);
          }
        }
        results.push_back(r);
      }
    }
  }
  return results;
}

void revenue_ordering_and_efficiency() {
  std::vector<ConfigResult> results;
  {
    Criterion crit("revenue-ordering");
    results = run_ordering_sweep();
    auto geq = [](const EstimatorResult& hi, const EstimatorResult& lo) {
      const double slack = 2.0 * std::sqrt(hi.std_error * hi.std_error +
                                           lo.std_error * lo.std_error);
      return hi.mean >= lo.mean - slack;
    };
    for (const ConfigResult& r : results) {
      crit.expect(geq(r.myerson, r.draw),
                  fmt("np=%.1f a=%.1f b=%.1f: optimal < draw", r.np, r.a, r.b));
      crit.expect(
          geq(r.draw, r.spr),
          fmt("np=%.1f a=%.1f b=%.1f: draw < reserve by %.5f", r.np, r.a,
              r.b, r.spr.mean - r.draw.mean) +
              fmt(" (tuned k=%.0f c=%.2f vs v*=%.3f)", double(r.k), r.c,
                  r.reserve));
      crit.expect(geq(r.spr, r.sp),
                  fmt("np=%.1f a=%.1f b=%.1f: reserve < plain", r.np, r.a,
                      r.b));
    }
  }
  {
    Criterion crit("draw-efficiency");
    for (const ConfigResult& r : results) {
      const double ratio = r.draw.mean / r.myerson.mean;
      crit.expect(ratio >= 0.95, fmt("np=%.1f a=%.1f b=%.1f ratio %.4f", r.np,
                                     r.a, r.b, ratio));
    }
  }
}

// --- 9. Robustness direction -------------------------------------------------

void robustness_direction() {
  Criterion crit("robustness-direction");
  const double p = 0.1 / 5;
  ExperimentConfig config{BimodalSpec(0.2, 0.6, 0.0, 1.0 - p, p),
                          5,
                          p,
                          100000,
                          rng::derive(0xACCE97, 900),
                          {"second-price", "second-price-reserve", "myerson",
                           "draw"},
                          GridSpec{0.05, 0.005, {}},
                          1};
  const auto rows = run_experiment(config, ExperimentMode::kRobustness);
  EstimatorResult draw;
  std::vector<std::pair<std::string, EstimatorResult>> others;
  for (const TableRow& row : rows) {
    EstimatorResult fit;
    fit.mean = row.mean;
    fit.std_error = row.std_error;
    if (row.mech == "draw") {
      draw = fit;
    } else {
      others.emplace_back(row.mech, fit);
    }
  }
  for (const auto& [mech, fit] : others) {
    const double slack =
        2.0 * std::sqrt(draw.std_error * draw.std_error +
                        fit.std_error * fit.std_error);
    crit.expect(draw.mean > fit.mean + slack,
                fmt("scenario-average draw %.5f not above %.5f", draw.mean,
                    fit.mean) +
                    " (" + mech + ")");
  }
}

// --- 10. Byte determinism ----------------------------------------------------

std::string sweep_to_string(std::uint64_t seed, int workers) {
  SweepOptions options;
  options.n = 5;
  options.iters = 10000;
  options.seed = seed;
  options.c_step = 0.1;
  options.vstar_step = 0.05;
  options.workers = workers;
  const TableSet set = run_table_sweep(options);
  std::ostringstream os;
  write_csv(os, set.efficiency);
  write_csv(os, set.original);
  write_csv(os, set.robustness);
  return os.str();
}

void determinism() {
  Criterion crit("byte-determinism");
  const std::string first = sweep_to_string(0xD5EED, 1);
  const std::string again = sweep_to_string(0xD5EED, 1);
  const std::string threaded = sweep_to_string(0xD5EED, 4);
  crit.expect(first == again, "rerun with the same seed changed bytes");
  crit.expect(first == threaded, "worker count changed bytes");
  crit.expect(!first.empty(), "empty tables");
}

}  // namespace

int main() {
  golden_example();
  k1_reduction();
  oracle_agreement();
  hull_properties();
  dominance_suite();
  classifier_consistency();
  revenue_ordering_and_efficiency();
  robustness_direction();
  determinism();
  std::printf("%s: %d criterion failure(s)\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures);
  return g_failures;
}
