// Copyright 2026 The monoest authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "monoest/curve.hpp"

namespace monoest {

// One piece of an anchored lower hull on (lo, hi]. Chord pieces are linear
// with a fixed negated slope; arc pieces coincide with a convex curve
// segment, where the negated slope is the segment's negated derivative.
struct HullPiece {
  enum class Kind { kChord, kArc };
  Kind kind = Kind::kChord;
  double lo = 0.0;
  double hi = 0.0;
  double slope = 0.0;  // negated slope of a chord piece (>= 0)
  Segment arc;         // for kArc

  double estimate(double u) const;
};

// Greatest convex function below a lower-bound curve on (0, rho) that passes
// through the anchor (rho, M). Its negated slope is an optimal estimate
// function: nonnegative, non-increasing, integrating to curve(0+) - M.
class AnchoredHull {
 public:
  AnchoredHull(double rho, double anchor, double apex, std::vector<HullPiece> pieces)
      : rho_(rho), anchor_(anchor), apex_(apex), pieces_(std::move(pieces)) {}

  double rho() const { return rho_; }
  double anchor_value() const { return anchor_; }
  // Hull value as u -> 0+, equal to the curve limit there.
  double apex_value() const { return apex_; }
  const std::vector<HullPiece>& pieces() const { return pieces_; }

  double value(double u) const;     // h(u), u in [0, rho]
  double estimate(double u) const;  // negated slope, u in (0, rho]
  double estimate_integral(double a, double b) const;
  double estimate_square_integral(double a, double b) const;
  // +inf when the squared slope is not integrable near zero.
  double estimate_square_integral_full() const;

 private:
  double rho_;
  double anchor_;
  double apex_;
  std::vector<HullPiece> pieces_;
};

// Builds the hull of `curve` restricted to (0, rho) anchored at (rho, M).
// Requires 0 <= M <= curve(rho).
AnchoredHull lower_hull(const PiecewiseCurve& curve, double rho, double anchor_value);

// Negated slope of the anchored hull at rho, i.e.
//   inf over eta in [0, rho) of (curve(eta) - M) / (rho - eta).
// Cheaper than building the whole hull.
double lambda_value(const PiecewiseCurve& curve, double rho, double anchor_value);

// The estimate function that minimizes the second moment for the specific
// data vector v: the negated slope of the hull of v's lower-bound curve
// anchored at (1, 0). An oracle for competitive-ratio baselines, not a
// legal estimator for unknown data. Throws std::domain_error when v is not
// estimable (the curve does not reach f(v) at 0+).
AnchoredHull v_optimal(const FunctionSpec& f, const ThresholdScheme& scheme,
                       const DataVector& v);

}  // namespace monoest
