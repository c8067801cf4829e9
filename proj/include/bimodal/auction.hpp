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
#include <vector>

#include <Eigen/Core>

namespace bimodal {

/// Sealed bid vector with a stable descending order.  Ties are broken by
/// original index, lowest index first, so order statistics and top-k sets
/// are deterministic even under equal bids.
class Bids {
 public:
  /// Requires n >= 2 and all bids >= 0; throws std::invalid_argument.
  explicit Bids(Eigen::VectorXd values);

  int size() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  double value(int i) const { return values_[i]; }

  /// j-th highest bid, 1-based: ordered(1) is the top bid.
  double ordered(int j) const { return values_[order_[j - 1]]; }
  /// Original index of the j-th highest bid, 1-based j.
  int ordered_index(int j) const { return order_[j - 1]; }
  const std::vector<int>& order() const { return order_; }

 private:
  Eigen::VectorXd values_;
  std::vector<int> order_;
};

/// Result of running a mechanism: per-buyer win probability and expected
/// payment.  Exactly one unit of allocation is handed out when the object
/// is sold; all payments are zero otherwise.
struct Outcome {
  Eigen::VectorXd alloc;
  Eigen::VectorXd pay;

  double revenue() const { return pay.sum(); }
  bool sold() const { return alloc.sum() > 0.5; }
  static Outcome unsold(int n);
};

/// Second-price auction: the top bidder wins and pays the second-highest
/// bid, subject to an optional reserve.  If only the top bid clears the
/// reserve the winner pays the reserve; if no bid clears it the object is
/// not sold.  reserve = 0 is the plain second-price auction.
Outcome second_price(const Bids& bids, double reserve = 0.0);

/// Parameters of the Draw auction: a fixed price c, the lottery size k and
/// the seller's own valuation v0 (c >= v0 required, 1 <= k <= n-1 checked
/// against the bid vector at run time).
struct DrawParams {
  int k;
  double c;
  double v0 = 0.0;

  DrawParams(int k, double c, double v0 = 0.0);
};

/// Draw auction.  A buyer "accepts" the fixed price c when bidding x means
/// x - c > (x - x_(k+1)) / k, i.e. paying c beats the expected value of the
/// top-k lottery.  With two or more acceptors the top bidder pays the
/// second-highest bid; with exactly one, the top bidder pays c; with none,
/// the k highest bidders enter a uniform lottery and the winner pays
/// x_(k+1).  The outcome reports the lottery in expectation (alloc 1/k,
/// pay x_(k+1)/k each); use realize_winner to resolve it.
/// With k = 1 this coincides with second_price(bids, 0) exactly.
Outcome draw_auction(const DrawParams& params, const Bids& bids);

/// Expected profit of `buyer` with true valuation `valuation` under an
/// outcome: alloc * valuation - pay.
double expected_utility(int buyer, double valuation, const Outcome& outcome);

/// Resolves an expected outcome into a realized winner, sampling
/// proportionally to alloc; returns -1 when the object is unsold.
/// Deterministic for fixed (seed, stream, index).
int realize_winner(const Outcome& outcome, std::uint64_t seed,
                   std::uint64_t stream = 0, std::uint64_t index = 0);

}  // namespace bimodal
