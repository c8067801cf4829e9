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

#include "bimodal/auction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bimodal/rng.hpp"

namespace bimodal {

Bids::Bids(Eigen::VectorXd values) : values_(std::move(values)) {
  const int n = static_cast<int>(values_.size());
  if (n < 2) throw std::invalid_argument("Bids: need at least two bids");
  for (int i = 0; i < n; ++i) {
    if (!(values_[i] >= 0.0)) {
      throw std::invalid_argument("Bids: bids must be nonnegative");
    }
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [this](int lhs, int rhs) {
    return values_[lhs] > values_[rhs];
  });
}

Outcome Outcome::unsold(int n) {
  Outcome o;
  o.alloc = Eigen::VectorXd::Zero(n);
  o.pay = Eigen::VectorXd::Zero(n);
  return o;
}

Outcome second_price(const Bids& bids, double reserve) {
  const int n = bids.size();
  Outcome o = Outcome::unsold(n);
  const double x1 = bids.ordered(1);
  const double x2 = bids.ordered(2);
  if (x1 < reserve) return o;
  const int winner = bids.ordered_index(1);
  o.alloc[winner] = 1.0;
  o.pay[winner] = (x2 < reserve) ? reserve : x2;
  return o;
}

DrawParams::DrawParams(int k_, double c_, double v0_) : k(k_), c(c_), v0(v0_) {
  if (k < 1) throw std::invalid_argument("DrawParams: need k >= 1");
  if (!(c >= v0)) throw std::invalid_argument("DrawParams: need c >= v0");
}

Outcome draw_auction(const DrawParams& params, const Bids& bids) {
  const int n = bids.size();
  const int k = params.k;
  if (k > n - 1) {
    throw std::invalid_argument("draw_auction: need k <= n - 1");
  }
  Outcome o = Outcome::unsold(n);
  const double x1 = bids.ordered(1);
  const double x2 = bids.ordered(2);
  const double xk1 = bids.ordered(k + 1);
  const double c = params.c;

  auto accepts = [&](double x) { return x - c > (x - xk1) / k; };

  if (accepts(x2)) {
    // At least two acceptors: second-price among them.
    const int winner = bids.ordered_index(1);
    o.alloc[winner] = 1.0;
    o.pay[winner] = x2;
  } else if (accepts(x1)) {
    // Exactly one acceptor: he takes the object at the fixed price.
    const int winner = bids.ordered_index(1);
    o.alloc[winner] = 1.0;
    o.pay[winner] = c;
  } else {
    // Nobody accepts: uniform lottery over the k highest bidders at the
    // price of the (k+1)-th bid, reported in expectation.
    for (int j = 1; j <= k; ++j) {
      const int i = bids.ordered_index(j);
      o.alloc[i] = 1.0 / k;
      o.pay[i] = xk1 / k;
    }
  }
  return o;
}

double expected_utility(int buyer, double valuation, const Outcome& outcome) {
  return outcome.alloc[buyer] * valuation - outcome.pay[buyer];
}

int realize_winner(const Outcome& outcome, std::uint64_t seed,
                   std::uint64_t stream, std::uint64_t index) {
  const double total = outcome.alloc.sum();
  if (total <= 0.0) return -1;
  const double u = rng::uniform01(seed, stream, index) * total;
  double cum = 0.0;
  const int n = static_cast<int>(outcome.alloc.size());
  for (int i = 0; i < n; ++i) {
    cum += outcome.alloc[i];
    if (u < cum) return i;
  }
  // Guard against accumulated rounding: last positive share wins.
  for (int i = n - 1; i >= 0; --i) {
    if (outcome.alloc[i] > 0.0) return i;
  }
  return -1;
}

}  // namespace bimodal
