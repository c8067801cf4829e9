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

#include "bimodal/prior.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bimodal/rng.hpp"

namespace bimodal {

BimodalSpec::BimodalSpec(double a_, double b_, double eps_, double p1_,
                         double p2_)
    : a(a_), b(b_), eps(eps_), p1(p1_), p2(p2_) {
  if (!(0.0 < a && a < b && b < 1.0)) {
    throw std::invalid_argument("BimodalSpec: need 0 < a < b < 1");
  }
  if (!(p1 > 0.0) || !(p2 > 0.0) || eps < 0.0) {
    throw std::invalid_argument("BimodalSpec: need p1 > 0, p2 > 0, eps >= 0");
  }
  if (std::abs(p1 + eps + p2 - 1.0) > 1e-12) {
    throw std::invalid_argument("BimodalSpec: p1 + eps + p2 must equal 1");
  }
}

double pdf(const BimodalSpec& s, double v) {
  if (v <= 0.0 || v >= 1.0) return 0.0;
  if (v <= s.a) return s.p1 / s.a;
  if (v <= s.b) return s.eps / (s.b - s.a);
  return s.p2 / (1.0 - s.b);
}

double cdf(const BimodalSpec& s, double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  if (v <= s.a) return s.p1 * v / s.a;
  if (v <= s.b) return s.p1 + s.eps * (v - s.a) / (s.b - s.a);
  return s.p1 + s.eps + s.p2 * (v - s.b) / (1.0 - s.b);
}

double inv_cdf(const BimodalSpec& s, double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("inv_cdf: q must lie in [0,1], got " +
                            std::to_string(q));
  }
  if (q <= s.p1) return s.a * q / s.p1;
  if (s.eps > 0.0 && q <= s.p1 + s.eps) {
    return s.a + (s.b - s.a) * (q - s.p1) / s.eps;
  }
  return s.b + (1.0 - s.b) * (q - s.p1 - s.eps) / s.p2;
}

MixtureSampler::MixtureSampler(int n_, double p_, Interval low_,
                               Interval high_, std::uint64_t seed_)
    : n(n_), p(p_), low(low_), high(high_), seed(seed_) {
  if (n < 1) throw std::invalid_argument("MixtureSampler: need n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("MixtureSampler: need p in [0,1]");
  }
  auto check = [](const Interval& iv, const char* name) {
    if (!(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1.0)) {
      throw std::invalid_argument(std::string("MixtureSampler: bad ") + name +
                                  " interval");
    }
  };
  check(low, "low");
  check(high, "high");
  if (low.hi > high.lo) {
    throw std::invalid_argument("MixtureSampler: modes must not overlap");
  }
}

void sample_profile_into(const MixtureSampler& s, std::uint64_t profile_index,
                         Eigen::VectorXd& out) {
  out.resize(s.n);
  for (int i = 0; i < s.n; ++i) {
    // Two addressed draws per buyer: mode choice, then position in the mode.
    const double um = rng::uniform01(s.seed, profile_index, 2 * i);
    const double uv = rng::uniform01(s.seed, profile_index, 2 * i + 1);
    const Interval& iv = (um < s.p) ? s.high : s.low;
    out[i] = iv.lo + uv * iv.width();
  }
}

Eigen::VectorXd sample_profile(const MixtureSampler& s,
                               std::uint64_t profile_index) {
  Eigen::VectorXd out;
  sample_profile_into(s, profile_index, out);
  return out;
}

MixtureSampler sampler_for(const BimodalSpec& spec, int n, double p,
                           std::uint64_t seed) {
  return MixtureSampler(n, p, Interval{0.0, spec.a}, Interval{spec.b, 1.0},
                        seed);
}

}  // namespace bimodal
