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

#include <iosfwd>
#include <optional>

#include "bimodal/auction.hpp"
#include "bimodal/prior.hpp"

namespace bimodal {

/// A candidate bridge line q -> alpha + beta * q.
struct LineSeg {
  double alpha = 0.0;
  double beta = 0.0;
  double at(double q) const { return alpha + beta * q; }
};

/// Which candidate closed the hull over the non-convex stretch.
enum class HullCase {
  kTangentPair1,     ///< common tangent, first root pair
  kTangentPair2,     ///< common tangent, second root pair
  kTangentToUpper,   ///< tangent to the low piece through the junction point
  kOriginChord,      ///< chord from the origin to the junction point
};

/// Decision thresholds of the optimal auction for a bimodal-uniform prior.
/// When beta0 < 0 the active reserve is x_cut and the draw band is inert;
/// when beta0 >= 0 the reserve is x_min and bids inside (x_ll, x_cut] are
/// resolved by a uniform lottery at price x_ll.
struct MyersonParams {
  double x_min;   ///< first reserve, a / (2 p1)
  double x_ll;    ///< lower limit of the lottery band, a z0 / p1
  double x_cut;   ///< upper limit of the lottery band / second reserve
  double beta0;   ///< slope of the hull's bridge segment
  double z0;      ///< quantile where the bridge leaves the low piece
  double y0;      ///< quantile where the bridge rejoins the upper piece
};

/// Closed-form ironing machinery for the bimodal-uniform prior.
///
/// h is the virtual value in quantile space and H its integral, a piecewise
/// quadratic with one piece per mode (H1, H2, H3).  H is not convex between
/// the low and high pieces (for eps = 0 it even drops at q = p1), so the
/// lower convex hull G replaces the non-convex stretch by a straight bridge
/// from (z0, H1(z0)) to (y0, H3(y0)).  The bridge is found among four
/// candidates: the two common-tangent root pairs of the quadratic
/// C y^2 + D y + E = 0, the tangent to H1 through the junction point, and
/// the chord from the origin, in that order of preference.  The ironed
/// virtual value g = G' is constant (= beta0) across the bridge, which is
/// what turns that bid range into a lottery.
class MyersonCurves {
 public:
  explicit MyersonCurves(const BimodalSpec& spec);

  const BimodalSpec& spec() const { return spec_; }

  // Quadratic coefficients of the common-tangent condition.
  double A, B, C, D, E;
  // Candidate tangency quantiles; empty when the discriminant is negative
  // or the construction degenerates.
  std::optional<double> y1, y2, z1, z2, z3;
  // Candidate bridge lines; r1/r2/r3 mirror y1/y2/z3 availability.
  std::optional<LineSeg> r1, r2, r3;
  LineSeg r4;

  // Selected bridge.
  double z0, y0;
  LineSeg bridge;
  HullCase hull_case;

  // Pieces of the virtual-value integral (quantile space).
  double H1(double q) const;
  double H2(double q) const;  ///< undefined content when eps = 0
  double H3(double q) const;
  /// H per the piecewise definition; the middle piece is skipped when eps=0.
  double H(double q) const;
  /// Lower convex hull of H.
  double G(double q) const;
  /// Ironed virtual value, G'.
  double g(double q) const;
  /// Raw virtual value h(q) = F^-1(q) - (1-q)/f(F^-1(q)).
  double h(double q) const;

 private:
  BimodalSpec spec_;
};

MyersonCurves myerson_curves(const BimodalSpec& spec);

MyersonParams myerson_params(const MyersonCurves& curves);
MyersonParams myerson_params(const BimodalSpec& spec);

/// Optimal-auction allocation for a bid vector given precomputed
/// thresholds.  Reports lotteries in expectation, like draw_auction.
Outcome myerson_allocate(const MyersonParams& params, const Bids& bids);

/// Flat machine-readable record (key=value per line, 6 decimals).
void write_params(std::ostream& os, const MyersonParams& params);

}  // namespace bimodal
