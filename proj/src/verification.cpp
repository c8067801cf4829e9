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

#include "bimodal/verification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "bimodal/rng.hpp"

namespace bimodal {

// ---------------------------------------------------------------------------
// Numerical ironing oracle
// ---------------------------------------------------------------------------

namespace {

// cross((Q-P), (R-P)); positive when P->Q->R turns upward (strictly convex).
double cross(const HullPoint& p, const HullPoint& q, const HullPoint& r) {
  return (q.q - p.q) * (r.value - p.value) - (q.value - p.value) * (r.q - p.q);
}

// The chain pops on an exact sign test.  On a 1e-6 grid a genuinely convex
// triple has cross ~ 1e-19, orders of magnitude above the ~1e-23 rounding
// noise of the cross itself, while any positive slack would thin the vertex
// chain near flat stretches and shift the bridge endpoints.  The 1e-12
// convexity slack applies when validating the finished hull, not here.
constexpr double kHullPopSlack = 0.0;

}  // namespace

OracleHull oracle_hull(const BimodalSpec& spec, int grid_points) {
  if (grid_points < 2) {
    throw std::invalid_argument("oracle_hull: need at least 2 grid points");
  }
  const double a = spec.a, b = spec.b, eps = spec.eps;
  const double p1 = spec.p1, p2 = spec.p2;
  const double m = p1 + eps;

  // Virtual-value integral, one polynomial per piece.  For eps = 0 the
  // middle piece vanishes and the integral drops at q = p1; the junction
  // limit point carries the upper piece's value.
  auto piece1 = [&](double q) { return (a / p1) * (q * q - q); };
  auto piece2 = [&](double q) {
    return a * (q - 1.0) + ((b - a) / eps) * (q * q - (1.0 + p1) * q + p1);
  };
  auto piece3 = [&](double q) {
    return b * (q - 1.0) + ((1.0 - b) / p2) * (q * q - (1.0 + m) * q + m);
  };

  std::vector<HullPoint> pts;
  pts.reserve(static_cast<std::size_t>(grid_points) + 3);
  for (int j = 0; j <= grid_points; ++j) {
    const double q = static_cast<double>(j) / grid_points;
    if (q <= p1) {
      pts.push_back({q, piece1(q), -1});
    } else if (eps > 0.0 && q < m) {
      pts.push_back({q, piece2(q), 0});
    } else {
      pts.push_back({q, piece3(q), +1});
    }
  }
  // Exact junction abscissae so the bridge endpoints are not quantized.
  pts.push_back({p1, piece1(p1), -1});
  pts.push_back({m, piece3(m), +1});

  std::sort(pts.begin(), pts.end(), [](const HullPoint& l, const HullPoint& r) {
    return l.q < r.q || (l.q == r.q && l.value < r.value);
  });
  // At equal q only the lowest sample can sit on a lower hull.
  std::vector<HullPoint> uniq;
  uniq.reserve(pts.size());
  for (const HullPoint& pt : pts) {
    if (!uniq.empty() && uniq.back().q == pt.q) continue;
    uniq.push_back(pt);
  }

  // Andrew monotone chain, lower hull only.
  std::vector<HullPoint> hull;
  hull.reserve(uniq.size());
  for (const HullPoint& pt : uniq) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), pt) <= kHullPopSlack) {
      hull.pop_back();
    }
    hull.push_back(pt);
  }

  OracleHull out;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    if (hull[i].side == -1 && hull[i + 1].side == +1) {
      out.z0 = hull[i].q;
      out.y0 = hull[i + 1].q;
      out.beta0 = (hull[i + 1].value - hull[i].value) / (out.y0 - out.z0);
      out.bridged = true;
      break;
    }
  }
  if (!out.bridged) {
    // Fully convex integral: no bridge, empty lottery band.
    out.z0 = out.y0 = m;
    out.beta0 = (a / p1) * (2.0 * p1 - 1.0);
  }
  out.points = std::move(hull);
  return out;
}

MyersonParams numerical_myerson_oracle(const BimodalSpec& spec,
                                       int grid_points) {
  if (grid_points < 10000) {
    throw std::invalid_argument(
        "numerical_myerson_oracle: need grid_points >= 1e4");
  }
  const OracleHull hull = oracle_hull(spec, grid_points);
  const double m = spec.p1 + spec.eps;
  MyersonParams p;
  p.z0 = hull.z0;
  p.y0 = hull.y0;
  p.beta0 = hull.beta0;
  p.x_min = spec.a / (2.0 * spec.p1);
  p.x_ll = spec.a * hull.z0 / spec.p1;
  p.x_cut = spec.b + (1.0 - spec.b) * (hull.y0 - m) / spec.p2;
  return p;
}

// ---------------------------------------------------------------------------
// Case classifier
// ---------------------------------------------------------------------------

namespace {

double kth_highest(const Eigen::VectorXd& v, int j) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s[static_cast<std::size_t>(j - 1)];
}

// 0 = No, 1 = Yes, 2 = either.
struct CasePattern {
  std::array<int, 8> q;
};

// Utility formula a case predicts, evaluated lazily from the instance.
enum class Formula {
  kZero,
  kLotteryTruthful,   // (v - x*_(k+1)) / k
  kLotteryDeviation,  // (v - x_(k+1)) / k
  kFixedPrice,        // v - c
  kTopTruthful,       // v - x*_(2)
  kTopDeviation,      // v - x_(2)
};

struct CaseRow {
  CasePattern pattern;
  Formula truthful;
  Formula deviation;
};

// Deviation bid below the true valuation.
const std::array<CaseRow, 15> kBelowRows = {{
    {{{0, 0, 0, 0, 2, 2, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{0, 1, 0, 0, 2, 0, 0, 2}}, Formula::kLotteryTruthful, Formula::kZero},
    {{{0, 1, 0, 0, 2, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{0, 1, 0, 1, 2, 0, 0, 1}}, Formula::kFixedPrice, Formula::kZero},
    {{{0, 1, 0, 1, 2, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{0, 1, 0, 1, 2, 1, 0, 1}}, Formula::kTopTruthful, Formula::kZero},
    {{{1, 1, 0, 0, 0, 0, 2, 2}}, Formula::kLotteryTruthful,
     Formula::kLotteryDeviation},
    {{{1, 1, 0, 0, 1, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 1, 0, 1, 0, 0, 2, 1}}, Formula::kFixedPrice,
     Formula::kLotteryDeviation},
    {{{1, 1, 0, 1, 1, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 1, 0, 1, 1, 1, 0, 1}}, Formula::kTopTruthful, Formula::kZero},
    {{{1, 1, 1, 1, 0, 0, 1, 1}}, Formula::kFixedPrice, Formula::kFixedPrice},
    {{{1, 1, 1, 1, 1, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 1, 1, 1, 1, 1, 0, 1}}, Formula::kTopTruthful, Formula::kZero},
    {{{1, 1, 1, 1, 1, 1, 1, 1}}, Formula::kTopTruthful,
     Formula::kTopDeviation},
}};

// Deviation bid above the true valuation.
const std::array<CaseRow, 15> kAboveRows = {{
    {{{0, 0, 0, 0, 2, 2, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 0, 0, 0, 0, 2, 2, 0}}, Formula::kZero, Formula::kLotteryDeviation},
    {{{1, 0, 0, 0, 1, 2, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 0, 1, 0, 0, 2, 1, 0}}, Formula::kZero, Formula::kFixedPrice},
    {{{1, 0, 1, 0, 1, 2, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 0, 1, 0, 1, 2, 1, 0}}, Formula::kZero, Formula::kTopDeviation},
    {{{1, 1, 0, 0, 0, 0, 2, 2}}, Formula::kLotteryTruthful,
     Formula::kLotteryDeviation},
    {{{1, 1, 0, 0, 1, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 1, 1, 0, 0, 0, 1, 2}}, Formula::kLotteryTruthful,
     Formula::kFixedPrice},
    {{{1, 1, 1, 0, 1, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 1, 1, 0, 1, 1, 1, 0}}, Formula::kZero, Formula::kTopDeviation},
    {{{1, 1, 1, 1, 0, 0, 1, 1}}, Formula::kFixedPrice, Formula::kFixedPrice},
    {{{1, 1, 1, 1, 1, 1, 0, 0}}, Formula::kZero, Formula::kZero},
    {{{1, 1, 1, 1, 1, 1, 1, 0}}, Formula::kZero, Formula::kTopDeviation},
    {{{1, 1, 1, 1, 1, 1, 1, 1}}, Formula::kTopTruthful,
     Formula::kTopDeviation},
}};

bool matches(const CasePattern& p, const std::array<bool, 8>& ans) {
  for (int i = 0; i < 8; ++i) {
    if (p.q[i] != 2 && (p.q[i] == 1) != ans[i]) return false;
  }
  return true;
}

}  // namespace

CaseRecord classify_case(double v_i, double x_i, const Eigen::VectorXd& others,
                         int k, double c) {
  const int n = static_cast<int>(others.size()) + 1;
  if (n < 2 || k < 1 || k > n - 1) {
    throw std::invalid_argument("classify_case: need n >= 2, 1 <= k <= n-1");
  }
  if (x_i == v_i) {
    throw std::invalid_argument("classify_case: requires x_i != v_i");
  }

  Eigen::VectorXd xs(n), xstar(n);
  xs.head(n - 1) = others;
  xstar.head(n - 1) = others;
  xs[n - 1] = x_i;
  xstar[n - 1] = v_i;

  const double x_k1 = kth_highest(xs, k + 1);
  const double xstar_k1 = kth_highest(xstar, k + 1);
  const double x_2 = kth_highest(xs, 2);
  const double xstar_2 = kth_highest(xstar, 2);

  // A bid accepts the fixed price when paying c beats the top-k lottery.
  // For the buyer's own answers this additionally requires being among the
  // top k.  For the "someone else accepts" answers the acceptance test
  // alone is used: under a monotone acceptance threshold (k >= 2) the two
  // readings coincide, and for k = 1, where the threshold degenerates to
  // the constant x_(2) - c, only this reading matches the auction rules.
  auto accepts = [&](double bid, double k1) {
    return bid - c > (bid - k1) / k;
  };

  std::array<bool, 8> q{};
  q[0] = x_i > x_k1;                        // in the top k (deviation vector)
  q[1] = v_i > xstar_k1;                    // in the top k (truthful vector)
  q[2] = q[0] && accepts(x_i, x_k1);        // accepts c under the deviation
  q[3] = q[1] && accepts(v_i, xstar_k1);    // accepts c under truth
  bool any_dev = false, any_truth = false;
  for (int j = 0; j < n - 1; ++j) {
    any_dev = any_dev || accepts(others[j], x_k1);
    any_truth = any_truth || accepts(others[j], xstar_k1);
  }
  q[4] = any_dev;                     // another buyer accepts (deviation)
  q[5] = any_truth;                   // another buyer accepts (truth)
  q[6] = x_i > x_2;                   // strictly top bid (deviation)
  q[7] = v_i > xstar_2;               // strictly top bid (truth)

  // Structural implications; a violation means the answers themselves are
  // inconsistent, i.e. a bug in this classifier or the question encoding.
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("classify_case: ") + what);
  };
  require(q[0] || (!q[2] && !q[6]), "outside top-k implies neither accepting nor top (deviation)");
  require(q[1] || (!q[3] && !q[7]), "outside top-k implies neither accepting nor top (truth)");
  require(!(!q[2] && q[4]) || !q[6], "another acceptor outbids a non-acceptor (deviation)");
  require(!(!q[3] && q[5]) || !q[7], "another acceptor outbids a non-acceptor (truth)");
  require(!(q[2] && !q[4]) || q[6], "sole acceptor must be the top bid (deviation)");
  require(!(q[3] && !q[5]) || q[7], "sole acceptor must be the top bid (truth)");
  require(!(q[0] && q[1]) || (q[4] == q[5]), "shared threshold must give equal opponent answers");
  const Regime regime =
      (x_i < v_i) ? Regime::kBelowValuation : Regime::kAboveValuation;
  if (regime == Regime::kBelowValuation) {
    require(!q[0] || q[1], "raising a top-k bid keeps it top-k");
    require(!q[2] || q[3], "raising an accepting bid keeps it accepting");
    require(!q[6] || q[7], "raising the top bid keeps it top");
  } else {
    require(!q[1] || q[0], "lowering to a top-k bid was top-k before");
    require(!q[3] || q[2], "lowering to an accepting bid was accepting");
    require(!q[7] || q[6], "lowering to the top bid was top");
  }

  const auto& rows =
      (regime == Regime::kBelowValuation) ? kBelowRows : kAboveRows;
  int case_id = 0;
  for (int r = 0; r < 15; ++r) {
    if (matches(rows[r].pattern, q)) {
      case_id = r + 1;
      break;
    }
  }
  if (case_id == 0) {
    throw std::logic_error("classify_case: answers outside the 15 cases");
  }

  auto eval = [&](Formula f) {
    switch (f) {
      case Formula::kZero: return 0.0;
      case Formula::kLotteryTruthful: return (v_i - xstar_k1) / k;
      case Formula::kLotteryDeviation: return (v_i - x_k1) / k;
      case Formula::kFixedPrice: return v_i - c;
      case Formula::kTopTruthful: return v_i - xstar_2;
      case Formula::kTopDeviation: return v_i - x_2;
    }
    return 0.0;
  };

  CaseRecord rec;
  rec.case_id = case_id;
  rec.answers = q;
  rec.regime = regime;
  rec.predicted_utility_truthful = eval(rows[case_id - 1].truthful);
  rec.predicted_utility_deviation = eval(rows[case_id - 1].deviation);
  return rec;
}

// ---------------------------------------------------------------------------
// Dominance harness
// ---------------------------------------------------------------------------

std::vector<double> deviation_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("deviation_grid: need 0 < step <= 1");
  }
  std::vector<double> grid;
  const int count = static_cast<int>(std::llround(1.0 / step));
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i < count; ++i) grid.push_back(i * step);
  grid.push_back(1.0);
  return grid;
}

namespace {

struct TrialSetup {
  std::int64_t trial;
  int n;
  int k;
  double c;
  int buyer;
  Eigen::VectorXd valuations;
};

TrialSetup make_trial(const MixtureSampler& base, std::int64_t trial,
                      std::uint64_t seed, int max_n) {
  TrialSetup t;
  t.trial = trial;
  const auto u = [&](std::uint64_t idx) {
    return rng::uniform01(seed, static_cast<std::uint64_t>(trial), idx);
  };
  t.n = 2 + static_cast<int>(u(0) * (max_n - 1));
  if (t.n > max_n) t.n = max_n;
  t.k = 1 + static_cast<int>(u(1) * (t.n - 1));
  if (t.k > t.n - 1) t.k = t.n - 1;
  t.c = u(2);
  t.buyer = static_cast<int>(u(3) * t.n);
  if (t.buyer >= t.n) t.buyer = t.n - 1;
  MixtureSampler s(t.n, base.p, base.low, base.high,
                   rng::derive(seed, 0x7a11));
  t.valuations = sample_profile(s, static_cast<std::uint64_t>(trial));
  return t;
}

template <typename MechFn>
DominanceReport sweep_dominance(const MixtureSampler& base,
                                const std::vector<double>& grid,
                                std::int64_t trials, std::uint64_t seed,
                                int max_n, double tol, MechFn mech_for_trial,
                                bool record_draw_params) {
  DominanceReport report;
  report.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    TrialSetup setup = make_trial(base, t, seed, max_n);
    auto mech = mech_for_trial(setup);
    const double v = setup.valuations[setup.buyer];

    const double truthful =
        expected_utility(setup.buyer, v, mech(Bids(setup.valuations)));
    double best_dev = v;
    double best_util = truthful;
    Eigen::VectorXd bids = setup.valuations;
    for (double d : grid) {
      bids[setup.buyer] = d;
      const double util = expected_utility(setup.buyer, v, mech(Bids(bids)));
      ++report.comparisons;
      if (util > best_util) {
        best_util = util;
        best_dev = d;
      }
    }
    if (best_util > truthful + tol) {
      report.violations.push_back({t, setup.buyer,
                                   record_draw_params ? setup.k : 0,
                                   record_draw_params ? setup.c : 0.0,
                                   truthful, best_dev, best_util});
    }
  }
  return report;
}

}  // namespace

DominanceReport check_dominance(const MixtureSampler& base,
                                const std::vector<double>& grid,
                                std::int64_t trials, std::uint64_t seed,
                                int max_n, double tol) {
  return sweep_dominance(
      base, grid, trials, seed, max_n, tol,
      [](const TrialSetup& t) {
        const DrawParams params(t.k, t.c);
        return [params](const Bids& b) { return draw_auction(params, b); };
      },
      /*record_draw_params=*/true);
}

DominanceReport check_mechanism_dominance(const MixtureSampler& base,
                                          const MechanismFactory& factory,
                                          const std::vector<double>& grid,
                                          std::int64_t trials,
                                          std::uint64_t seed, int max_n,
                                          double tol) {
  return sweep_dominance(
      base, grid, trials, seed, max_n, tol,
      [&factory, seed](const TrialSetup& t) {
        return factory(t.n,
                       rng::derive(seed, static_cast<std::uint64_t>(t.trial)));
      },
      /*record_draw_params=*/false);
}

void write_violations_csv(std::ostream& os, const DominanceReport& report) {
  os << "trial,buyer,k,c,truthful_utility,best_deviation,deviation_utility\n";
  const auto flags = os.flags();
  os << std::fixed << std::setprecision(6);
  for (const DominanceViolation& v : report.violations) {
    os << v.trial << ',' << v.buyer << ',' << v.k << ',' << v.c << ','
       << v.truthful_utility << ',' << v.best_deviation << ','
       << v.deviation_utility << '\n';
  }
  os.flags(flags);
}

// ---------------------------------------------------------------------------
// Classifier consistency sweep
// ---------------------------------------------------------------------------

BimodalSpec random_spec(std::uint64_t seed, std::uint64_t index,
                        bool allow_eps) {
  const auto u = [&](std::uint64_t idx) {
    return rng::uniform01(seed, index, idx);
  };
  // The closed-form ironing assumes a dominant first mode (p1 >= 1/2) and
  // an increasing upper integral piece (b >= 1/2); eps stays small enough
  // that the bridge cannot cross the middle piece.
  const double a = 0.05 + 0.55 * u(0);
  const double b_lo = std::max(0.5, a + 0.1);
  const double b = b_lo + u(1) * (0.95 - b_lo);
  const double p2 = 0.02 + u(2) * 0.46;
  double eps = 0.0;
  if (allow_eps && u(3) < 0.5) {
    eps = u(4) * std::min(0.25 * (b - a) * p2 / b, 0.5 - p2);
  }
  const double p1 = 1.0 - eps - p2;
  return BimodalSpec(a, b, eps, p1, p2);
}

ClassifierReport run_classifier_consistency(std::int64_t instances,
                                            std::uint64_t seed, int max_n,
                                            double tol) {
  ClassifierReport report;
  report.instances = instances;
  for (std::int64_t t = 0; t < instances; ++t) {
    const auto u = [&](std::uint64_t idx) {
      return rng::uniform01(seed, static_cast<std::uint64_t>(t), idx);
    };
    const int n = 2 + static_cast<int>(u(0) * (max_n - 1));
    const int k = 1 + static_cast<int>(std::min(u(1) * (n - 1),
                                                static_cast<double>(n - 2)));
    const double c = u(2);
    Eigen::VectorXd others(n - 1);
    for (int j = 0; j < n - 1; ++j) others[j] = u(4 + j);
    // Alternate the two regimes exactly.
    double s1 = u(100), s2 = u(101);
    if (s1 == s2) s2 = 0.5 * (s2 + 1.0);
    const bool below = (t % 2 == 0);
    const double v_i = below ? std::max(s1, s2) : std::min(s1, s2);
    const double x_i = below ? std::min(s1, s2) : std::max(s1, s2);

    const CaseRecord rec = classify_case(v_i, x_i, others, k, c);
    report.case_counts[rec.case_id] += 1;

    Eigen::VectorXd xs(n), xstar(n);
    xs.head(n - 1) = others;
    xstar.head(n - 1) = others;
    xs[n - 1] = x_i;
    xstar[n - 1] = v_i;
    const DrawParams params(k, c);
    const double direct_dev =
        expected_utility(n - 1, v_i, draw_auction(params, Bids(xs)));
    const double direct_truth =
        expected_utility(n - 1, v_i, draw_auction(params, Bids(xstar)));

    const double err =
        std::max(std::abs(direct_truth - rec.predicted_utility_truthful),
                 std::abs(direct_dev - rec.predicted_utility_deviation));
    report.max_abs_error = std::max(report.max_abs_error, err);
    if (err > tol) report.mismatches += 1;
  }
  return report;
}

}  // namespace bimodal
