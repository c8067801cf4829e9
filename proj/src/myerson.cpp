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

#include "bimodal/myerson.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace bimodal {
namespace {

// Line through (qa, va) and (qb, vb).
LineSeg through(double qa, double va, double qb, double vb) {
  LineSeg seg;
  seg.beta = (vb - va) / (qb - qa);
  seg.alpha = va - seg.beta * qa;
  return seg;
}

bool in_range(const std::optional<double>& v, double lo, double hi) {
  return v.has_value() && *v >= lo && *v <= hi;
}

}  // namespace

MyersonCurves::MyersonCurves(const BimodalSpec& spec) : spec_(spec) {
  const double a = spec.a, b = spec.b, eps = spec.eps;
  const double p1 = spec.p1, p2 = spec.p2;
  const double m = p1 + eps;  // junction quantile of the upper piece

  A = (p1 / p2) * (1.0 - b) / a;
  B = -((p1 / (2.0 * a)) * (b - ((1.0 - b) / p2) * (1.0 + m)) + 0.5);
  C = (-a / p1) * A * A + (1.0 - b) / p2;
  D = 2.0 * (a / p1) * A * B;
  E = (-a / p1) * B * B + b - ((1.0 - b) / p2) * m;

  const double disc = D * D - 4.0 * C * E;
  if (disc >= 0.0 && C != 0.0) {
    const double s = std::sqrt(disc);
    y1 = (-D + s) / (2.0 * C);
    y2 = (-D - s) / (2.0 * C);
    z1 = A * *y1 - B;
    z2 = A * *y2 - B;
  }
  const double z3arg = m * m - m - (p1 * b / a) * (m - 1.0);
  if (z3arg >= 0.0) z3 = m - std::sqrt(z3arg);

  const double h3m = H3(m);  // junction value of the upper piece
  if (y1) r1 = through(*z1, H1(*z1), *y1, H3(*y1));
  if (y2) r2 = through(*z2, H1(*z2), *y2, H3(*y2));
  if (z3) r3 = through(*z3, H1(*z3), m, h3m);
  r4 = LineSeg{0.0, h3m / m};

  // Candidate cascade: a common tangent with both tangency points inside
  // their pieces wins; otherwise the tangent to the low piece through the
  // junction point; otherwise the chord from the origin.
  if (in_range(z1, 0.0, p1) && in_range(y1, m, 1.0)) {
    z0 = *z1;
    y0 = *y1;
    bridge = *r1;
    hull_case = HullCase::kTangentPair1;
  } else if (in_range(z2, 0.0, p1) && in_range(y2, m, 1.0)) {
    z0 = *z2;
    y0 = *y2;
    bridge = *r2;
    hull_case = HullCase::kTangentPair2;
  } else if (in_range(z3, 0.0, p1)) {
    z0 = *z3;
    y0 = m;
    bridge = *r3;
    hull_case = HullCase::kTangentToUpper;
  } else {
    z0 = 0.0;
    y0 = m;
    bridge = r4;
    hull_case = HullCase::kOriginChord;
  }
}

double MyersonCurves::H1(double q) const {
  return (spec_.a / spec_.p1) * (q * q - q);
}

double MyersonCurves::H2(double q) const {
  const double a = spec_.a, b = spec_.b, eps = spec_.eps, p1 = spec_.p1;
  return a * (q - 1.0) + ((b - a) / eps) * (q * q - (1.0 + p1) * q + p1);
}

double MyersonCurves::H3(double q) const {
  const double b = spec_.b, p2 = spec_.p2;
  const double m = spec_.p1 + spec_.eps;
  return b * (q - 1.0) + ((1.0 - b) / p2) * (q * q - (1.0 + m) * q + m);
}

double MyersonCurves::H(double q) const {
  if (q <= spec_.p1) return H1(q);
  if (spec_.eps > 0.0 && q <= spec_.p1 + spec_.eps) return H2(q);
  return H3(q);
}

double MyersonCurves::G(double q) const {
  if (q <= z0) return H1(q);
  if (q <= y0) return bridge.at(q);
  return H3(q);
}

double MyersonCurves::g(double q) const {
  // Strict test on the left: when the bridge starts at the endpoint q = 0
  // the hull's derivative there is already the bridge slope.  At an
  // interior z0 the two branches agree (tangency).
  if (q < z0) return (spec_.a / spec_.p1) * (2.0 * q - 1.0);
  if (q <= y0) return bridge.beta;
  const double m = spec_.p1 + spec_.eps;
  return spec_.b + ((1.0 - spec_.b) / spec_.p2) * (2.0 * q - (1.0 + m));
}

double MyersonCurves::h(double q) const {
  const double x = inv_cdf(spec_, q);
  const double a = spec_.a, b = spec_.b, eps = spec_.eps;
  const double p1 = spec_.p1, p2 = spec_.p2;
  if (q <= p1) return x - (1.0 - q) * a / p1;
  if (eps > 0.0 && q <= p1 + eps) return x - (1.0 - q) * (b - a) / eps;
  return x - (1.0 - q) * (1.0 - b) / p2;
}

MyersonCurves myerson_curves(const BimodalSpec& spec) {
  return MyersonCurves(spec);
}

MyersonParams myerson_params(const MyersonCurves& c) {
  const BimodalSpec& s = c.spec();
  const double m = s.p1 + s.eps;
  MyersonParams p;
  p.z0 = c.z0;
  p.y0 = c.y0;
  p.x_min = s.a / (2.0 * s.p1);
  p.x_ll = s.a * c.z0 / s.p1;
  // The bridge rejoins the upper piece at y0 >= p1+eps, so the band's upper
  // limit lives on the upper branch of F^-1; at y0 = p1+eps that limit is b
  // (the flat stretch of F between the modes belongs to the band).
  p.x_cut = s.b + (1.0 - s.b) * (c.y0 - m) / s.p2;
  if (c.y0 > c.z0) {
    p.beta0 = (c.H3(c.y0) - c.H1(c.z0)) / (c.y0 - c.z0);
  } else {
    // Degenerate bridge (fully convex integral): empty band, slope from the
    // low piece so the x_min reserve stays active.
    p.beta0 = (s.a / s.p1) * (2.0 * c.z0 - 1.0);
  }
  return p;
}

MyersonParams myerson_params(const BimodalSpec& spec) {
  return myerson_params(MyersonCurves(spec));
}

Outcome myerson_allocate(const MyersonParams& p, const Bids& bids) {
  const int n = bids.size();
  Outcome o = Outcome::unsold(n);
  const double x1 = bids.ordered(1);
  const double x2 = bids.ordered(2);

  auto sell_to_top = [&](double price) {
    const int winner = bids.ordered_index(1);
    o.alloc[winner] = 1.0;
    o.pay[winner] = price;
  };
  // Buyers inside the lottery band (x_ll, x_cut].
  auto band = [&] {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      const double x = bids.value(i);
      if (x > p.x_ll && x <= p.x_cut) members.push_back(i);
    }
    return members;
  };

  if (p.beta0 < 0.0) {
    // The band never sells; x_cut is the only reserve.
    if (x1 < p.x_cut) return o;
    sell_to_top(x2 < p.x_cut ? p.x_cut : x2);
    return o;
  }

  if (x1 < p.x_min) return o;            // nobody clears the reserve
  if (x2 < p.x_min) {                    // only the top bid clears it
    sell_to_top(p.x_min);
  } else if (x1 <= p.x_ll) {             // both below the band
    sell_to_top(x2);
  } else if (x1 <= p.x_cut) {
    if (x2 <= p.x_ll) {                  // one bid in the band
      sell_to_top(x2);
    } else {                             // two or more in the band: lottery
      const auto members = band();
      const double share = 1.0 / static_cast<double>(members.size());
      for (int i : members) {
        o.alloc[i] = share;
        o.pay[i] = p.x_ll * share;
      }
    }
  } else {                               // top bid above the band
    if (x2 > p.x_ll && x2 <= p.x_cut) {
      // Lone high bidder buys out of the lottery: pays the band's upper
      // limit minus the expected lottery rebate he forgoes.
      const auto members = band();
      const double d = static_cast<double>(members.size());
      sell_to_top(p.x_cut - (p.x_cut - p.x_ll) / (d + 1.0));
    } else {
      sell_to_top(x2);
    }
  }
  return o;
}

void write_params(std::ostream& os, const MyersonParams& p) {
  const auto flags = os.flags();
  os << std::fixed << std::setprecision(6);
  os << "x_min=" << p.x_min << '\n'
     << "x_ll=" << p.x_ll << '\n'
     << "x_cut=" << p.x_cut << '\n'
     << "beta0=" << p.beta0 << '\n'
     << "z0=" << p.z0 << '\n'
     << "y0=" << p.y0 << '\n';
  os.flags(flags);
}

}  // namespace bimodal
