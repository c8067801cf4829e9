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

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "bimodal/auction.hpp"
#include "bimodal/myerson.hpp"
#include "bimodal/prior.hpp"

namespace bimodal {

// ---------------------------------------------------------------------------
// Numerical ironing oracle
// ---------------------------------------------------------------------------

/// One vertex of the sampled virtual-value integral.  `side` tags which
/// piece the sample came from so the bridge over the non-convex stretch can
/// be recognized: -1 low piece, 0 middle piece, +1 upper piece (including
/// the junction limit point).
struct HullPoint {
  double q;
  double value;
  int side;
};

struct OracleHull {
  std::vector<HullPoint> points;  ///< lower-hull vertices, left to right
  double z0 = 0.0;
  double y0 = 0.0;
  double beta0 = 0.0;
  bool bridged = false;  ///< false when the integral is already convex
};

/// Lower convex hull of the sampled virtual-value integral via a monotone
/// chain scan (cross-product convexity test with 1e-12 slack).
OracleHull oracle_hull(const BimodalSpec& spec, int grid_points);

/// Brute-force counterpart of myerson_params: samples the integral on a
/// uniform quantile grid, hulls it, reads the bridge endpoints off the hull
/// and applies the same threshold formulas.  grid_points >= 1e4.
MyersonParams numerical_myerson_oracle(const BimodalSpec& spec,
                                       int grid_points);

// ---------------------------------------------------------------------------
// Case classifier for deviation analysis in the Draw auction
// ---------------------------------------------------------------------------

enum class Regime {
  kBelowValuation,  ///< deviation bid below the true valuation
  kAboveValuation,  ///< deviation bid above the true valuation
};

/// One classified deviation instance: the eight yes/no answers, the case
/// they map to (1..15) and the utilities that case predicts for the
/// truthful and the deviating bid vector.
struct CaseRecord {
  int case_id = 0;
  std::array<bool, 8> answers{};
  double predicted_utility_truthful = 0.0;
  double predicted_utility_deviation = 0.0;
  Regime regime = Regime::kBelowValuation;
};

/// Classifies a single-buyer deviation in the Draw auction.  `others` are
/// the n-1 fixed opponent bids; requires x_i != v_i (the two regimes).
/// Throws std::logic_error if the answers violate one of the structural
/// implications or fall outside the fifteen reachable cases — either means
/// an implementation bug, since the cases partition the bid space.
CaseRecord classify_case(double v_i, double x_i,
                         const Eigen::VectorXd& others, int k, double c);

// ---------------------------------------------------------------------------
// Dominance harness
// ---------------------------------------------------------------------------

struct DominanceViolation {
  std::int64_t trial;
  int buyer;
  int k;
  double c;
  double truthful_utility;
  double best_deviation;
  double deviation_utility;
};

struct DominanceReport {
  std::int64_t trials = 0;
  std::int64_t comparisons = 0;
  std::vector<DominanceViolation> violations;
  bool clean() const { return violations.empty(); }
};

/// Uniform deviation grid over [0,1] with the given step (both ends
/// included).
std::vector<double> deviation_grid(double step = 0.01);

/// Truthful-dominance falsification harness for the Draw auction: each
/// trial draws a valuation profile, a buyer, and random (k, c, n), then
/// sweeps the buyer's bid over the grid while all other bids stay at their
/// valuations.  Any deviation beating truthful by more than `tol` is
/// reported.  n varies over {2, ..., max_n}; intervals come from `base`.
DominanceReport check_dominance(const MixtureSampler& base,
                                const std::vector<double>& grid,
                                std::int64_t trials, std::uint64_t seed,
                                int max_n = 6, double tol = 1e-12);

/// Same harness for an arbitrary mechanism built per-trial from the profile
/// size (used for the reserve-price and optimal auctions, where truthful
/// bidding is likewise undominated).
using MechanismFactory = std::function<std::function<Outcome(const Bids&)>(
    int n, std::uint64_t trial_seed)>;
DominanceReport check_mechanism_dominance(const MixtureSampler& base,
                                          const MechanismFactory& factory,
                                          const std::vector<double>& grid,
                                          std::int64_t trials,
                                          std::uint64_t seed, int max_n = 6,
                                          double tol = 1e-12);

/// CSV rows: trial,buyer,k,c,truthful_utility,best_deviation,deviation_utility
void write_violations_csv(std::ostream& os, const DominanceReport& report);

// ---------------------------------------------------------------------------
// Classifier consistency sweep
// ---------------------------------------------------------------------------

struct ClassifierReport {
  std::int64_t instances = 0;
  std::int64_t mismatches = 0;     ///< |predicted - direct| > tol
  double max_abs_error = 0.0;
  std::array<std::int64_t, 16> case_counts{};  ///< per case id, both regimes
};

/// Draws random deviation instances in both regimes, classifies each one
/// and compares the table-predicted utilities against utilities computed
/// directly from the Draw auction outcomes.
ClassifierReport run_classifier_consistency(std::int64_t instances,
                                            std::uint64_t seed, int max_n = 6,
                                            double tol = 1e-12);

/// Random prior from the supported domain: first mode dominant (p1 >= 0.5),
/// b - a >= 0.1, p2 >= 0.02, and eps either zero or small enough that the
/// bridge construction is exact (eps <= 0.25 (b-a) p2 / b).
BimodalSpec random_spec(std::uint64_t seed, std::uint64_t index,
                        bool allow_eps = true);

}  // namespace bimodal
