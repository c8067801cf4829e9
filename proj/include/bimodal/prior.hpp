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

#include <Eigen/Core>

namespace bimodal {

/// Bimodal-uniform valuation prior: mass p1 spread uniformly on (0,a],
/// eps on (a,b], p2 on (b,1).  All operations on it are pure.
struct BimodalSpec {
  double a;    ///< top limit of the first mode
  double b;    ///< lower limit of the second mode
  double eps;  ///< mass between the modes
  double p1;   ///< mass of the first mode
  double p2;   ///< mass of the second mode

  /// Validates 0 < a < b < 1, p1 > 0, p2 > 0, eps >= 0 and
  /// p1 + eps + p2 = 1 (within 1e-12); throws std::invalid_argument.
  BimodalSpec(double a, double b, double eps, double p1, double p2);
};

/// Density of the prior.  The first mode is left-open/right-closed at a,
/// the middle piece likewise at b; zero outside (0,1).
double pdf(const BimodalSpec& spec, double v);

/// Distribution function; clamps v outside [0,1] to 0 or 1.
double cdf(const BimodalSpec& spec, double v);

/// Inverse distribution function.  When eps = 0 the middle branch is
/// degenerate and the inverse jumps from a to b at q = p1; the value at
/// q = p1 is a and the branch for q > p1 is the upper one (right-continuous
/// in q).  q outside [0,1] throws std::domain_error.
double inv_cdf(const BimodalSpec& spec, double q);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Two-mode mixture used to draw truthful valuation profiles: each buyer
/// independently gets a uniform draw from `high` with probability p, else
/// from `low`.  Sampling is a pure function of (seed, profile index), so it
/// is reproducible regardless of how work is split across threads.
struct MixtureSampler {
  int n;          ///< number of buyers
  double p;       ///< probability of a draw from the high mode
  Interval low;   ///< support of the low mode
  Interval high;  ///< support of the high mode
  std::uint64_t seed;

  /// Validates n >= 1, p in [0,1], 0 <= lo <= hi <= 1 for both intervals
  /// and low.hi <= high.lo (modes do not overlap).  Point intervals
  /// (lo == hi) are accepted as degenerate modes.
  MixtureSampler(int n, double p, Interval low, Interval high,
                 std::uint64_t seed);

  /// Same sampler addressed with a different seed.
  MixtureSampler with_seed(std::uint64_t s) const {
    MixtureSampler copy = *this;
    copy.seed = s;
    return copy;
  }
};

/// Draws the valuation profile with the given index.  Bit-identical across
/// runs and thread counts for a fixed (seed, profile_index).
Eigen::VectorXd sample_profile(const MixtureSampler& sampler,
                               std::uint64_t profile_index = 0);

/// As above but reuses the caller's buffer (hot Monte Carlo path).
void sample_profile_into(const MixtureSampler& sampler,
                         std::uint64_t profile_index, Eigen::VectorXd& out);

/// Sampler matching an experiment prior: low mode (0,a), high mode (b,1),
/// high-draw probability p.
MixtureSampler sampler_for(const BimodalSpec& spec, int n, double p,
                           std::uint64_t seed);

}  // namespace bimodal
