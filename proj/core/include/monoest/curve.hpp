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

#include <functional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monoest/function_spec.hpp"
#include "monoest/outcome.hpp"

namespace monoest {

enum class SegmentForm { kConst, kLinear, kPower, kTightPower, kTabulated };

// One analytic piece of a lower-bound curve, covering (lo, hi].
//   kConst:      a
//   kLinear:     a - b*u
//   kPower:      (a - b*u)^p              (b > 0, nonnegative on the piece)
//   kTightPower: (1 - (b*u)^(1-p))/(1-p)  (p in (0, 0.5))
//   kTabulated:  linear interpolation of `nodes`
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  SegmentForm form = SegmentForm::kConst;
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;
  std::vector<std::pair<double, double>> nodes;

  double eval(double u) const;
  double derivative(double u) const;
  // Strictly convex smooth piece the hull may ride along.
  bool is_convex_arc() const;
  // Constraints of a concave/affine piece reduce to its endpoints.
  double integral(double x0, double x1) const;
  double integral_over_u2(double x0, double x1) const;

  static Segment constant(double lo, double hi, double value);
  static Segment linear(double lo, double hi, double a, double b);
  static Segment power(double lo, double hi, double a, double b, double p);
  static Segment tight_power(double lo, double hi, double b, double p);
  static Segment tabulated(std::vector<std::pair<double, double>> nodes);
};

// Left-continuous, non-increasing, nonnegative function on (start_u, end_u],
// with an explicit value at start_u itself (for suffix curves the value at
// the observed seed is meaningful and may differ from the right limit).
class PiecewiseCurve {
 public:
  PiecewiseCurve() = default;
  PiecewiseCurve(double start_u, double start_value)
      : start_u_(start_u), start_value_(start_value) {}

  void append(Segment s);

  double start_u() const { return start_u_; }
  double end_u() const { return segments_.empty() ? start_u_ : segments_.back().hi; }
  double start_value() const { return start_value_; }
  const std::vector<Segment>& segments() const { return segments_; }

  double value(double u) const;        // u in [start_u, end_u]
  double right_limit(double x) const;  // lim u->x+ for x in [start_u, end_u)
  double integral(double a, double b) const;
  double integral_over_u2(double a, double b) const;
  bool identically_zero() const;

  nlohmann::json to_json() const;

 private:
  double start_u_ = 0.0;
  double start_value_ = 0.0;
  std::vector<Segment> segments_;
};

// Lower-bound curve of f for data v on (0,1]: at seed u, the infimum of f
// over the vectors consistent with sampling v at u.
PiecewiseCurve lower_bound_curve(const FunctionSpec& f, const ThresholdScheme& scheme,
                                 const DataVector& v);

// The same curve restricted to [outcome.seed, 1]; computable from the
// outcome alone.
PiecewiseCurve suffix_curve(const FunctionSpec& f, const Outcome& outcome);

// Shared implementation: per-entry knowledge is either an exact value or
// "no better than the scheme bound".
PiecewiseCurve knowledge_curve(const FunctionSpec& f, const ThresholdScheme& scheme,
                               const std::vector<EntryBound>& entries, double from);

// sup over consistent z of the z lower-bound curve, on (0, outcome.seed].
// This is the curve whose anchored-hull slope gives lambda_U; for the range
// kinds the sup is attained by pinning unsampled entries at their extreme
// (0 below, the exact value above). Returns an identically zero curve when
// every consistent vector's curve dies before the seed.
PiecewiseCurve sup_lower_bound_curve(const FunctionSpec& f, const Outcome& outcome);

// Infimum of f over the consistent set at one exact seed value.
double point_infimum(const FunctionSpec& f, const ThresholdScheme& scheme,
                     const std::vector<EntryBound>& entries, double u);

// Tabulates a pointwise infimum callback as a piecewise-linear curve on
// (from, 1] over a geometric grid (denser near zero). For custom functions
// without analytic curve forms; any non-monotone noise is clipped so the
// result stays a valid lower-bound curve.
PiecewiseCurve tabulate_curve(const std::function<double(double)>& infimum, double from,
                              std::size_t nodes = 4096);

}  // namespace monoest
