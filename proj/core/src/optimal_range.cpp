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

#include "monoest/optimal_range.hpp"

#include <cmath>
#include <stdexcept>

namespace monoest {

OptimalRange lambda_bounds(const FunctionSpec& f, const Outcome& outcome, double M) {
  const double rho = outcome.seed;
  const PiecewiseCurve sfx = suffix_curve(f, outcome);
  const double under_rho = sfx.start_value();
  if (M < -1e-12 || M > under_rho + 1e-9 * (1.0 + under_rho)) {
    throw std::domain_error("lambda_bounds needs 0 <= M <= underline(rho)");
  }
  OptimalRange range;
  range.lambda_lo = std::max(0.0, (under_rho - M) / rho);

  const PiecewiseCurve sup = sup_lower_bound_curve(f, outcome);
  if (sup.identically_zero()) {
    range.lambda_hi = 0.0;
  } else {
    range.lambda_hi = lambda_value(sup, rho, std::min(M, sup.value(rho)));
    if (!std::isfinite(range.lambda_hi)) {
      range.unbounded_hi = true;
    }
  }
  // Guard against float noise on degenerate outcomes where both ends agree.
  if (range.lambda_hi < range.lambda_lo) {
    range.lambda_hi = std::max(range.lambda_hi, range.lambda_lo);
  }
  return range;
}

namespace {

ExistenceReport analytic_checks(const FunctionSpec& f, const ThresholdScheme& scheme,
                                const DataVector& v) {
  ExistenceReport report;
  const PiecewiseCurve curve = lower_bound_curve(f, scheme, v);
  const double fv = f.value(v);
  const double limit0 = curve.segments().empty() ? curve.start_value()
                                                 : curve.segments().front().eval(0.0);
  const bool estimable = std::abs(limit0 - fv) <= 1e-11 * (1.0 + fv);
  report.estimable = estimable ? Certainty::kTrue : Certainty::kFalse;
  if (!estimable) {
    report.finite_variance = Certainty::kFalse;
    report.bounded = Certainty::kFalse;
    return report;
  }

  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  report.finite_variance = std::isfinite(hull.estimate_square_integral_full())
                               ? Certainty::kTrue
                               : Certainty::kFalse;

  // Bounded estimator exists iff (f(v) - curve(u))/u stays finite as u->0;
  // that is the right derivative of the curve at zero.
  const auto& first = curve.segments().front();
  const bool infinite_slope = first.form == SegmentForm::kTightPower && first.p > 0;
  report.bounded = infinite_slope ? Certainty::kFalse : Certainty::kTrue;
  return report;
}

ExistenceReport numeric_checks(const FunctionSpec& f, const ThresholdScheme& scheme,
                               const DataVector& v) {
  ExistenceReport report;
  const double fv = f.value(v);
  std::vector<EntryBound> entries(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) entries[i] = {true, v[i]};

  // Limit of the curve at 0+ over u = 2^-k.
  double prev_gap = 0;
  bool have_prev = false;
  int diverging = 0;
  double last_gap = 0;
  for (int k = 8; k <= 40; k += 2) {
    const double u = std::ldexp(1.0, -k);
    const double gap = fv - point_infimum(f, scheme, entries, u);
    last_gap = gap;
    if (have_prev && std::abs(gap) > 0.9 * std::abs(prev_gap) &&
        std::abs(gap) > 1e-9 * (1.0 + fv)) {
      ++diverging;
    }
    prev_gap = gap;
    have_prev = true;
  }
  if (std::abs(last_gap) <= 1e-9 * (1.0 + fv)) {
    report.estimable = Certainty::kTrue;
  } else if (diverging >= 8) {
    report.estimable = Certainty::kFalse;
  } else {
    report.estimable = Certainty::kUnknown;
  }
  if (report.estimable == Certainty::kFalse) {
    report.finite_variance = Certainty::kFalse;
    report.bounded = Certainty::kFalse;
    return report;
  }

  const PiecewiseCurve curve = knowledge_curve(f, scheme, entries, 0.0);
  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  // Growth of the square integral toward 0: flag false only on clear
  // divergence (x10 across two octaves), true on convergence.
  double prev_tail = 0;
  int blowups = 0;
  double prev_val = 0;
  bool converged = false;
  for (int k = 4; k <= 40; k += 2) {
    const double u = std::ldexp(1.0, -k);
    const double val = hull.estimate_square_integral(u, 1.0);
    if (k > 4) {
      if (prev_tail > 0 && (val - prev_val) > 10.0 * prev_tail) ++blowups;
      if (std::abs(val - prev_val) <= 1e-9 * (1.0 + val)) converged = true;
      prev_tail = val - prev_val;
    }
    prev_val = val;
  }
  report.finite_variance = converged             ? Certainty::kTrue
                           : blowups >= 2        ? Certainty::kFalse
                                                 : Certainty::kUnknown;

  // Boundedness: growth of (f - curve(u))/u.
  double prev_ratio = -1;
  int ratio_blowups = 0;
  bool ratio_converged = false;
  for (int k = 8; k <= 48; k += 2) {
    const double u = std::ldexp(1.0, -k);
    const double ratio = (fv - point_infimum(f, scheme, entries, u)) / u;
    if (prev_ratio >= 0) {
      if (prev_ratio > 0 && ratio > 10.0 * prev_ratio) ++ratio_blowups;
      if (std::abs(ratio - prev_ratio) <= 1e-7 * (1.0 + std::abs(ratio))) ratio_converged = true;
    }
    prev_ratio = ratio;
  }
  report.bounded = ratio_converged      ? Certainty::kTrue
                   : ratio_blowups >= 2 ? Certainty::kFalse
                                        : Certainty::kUnknown;
  return report;
}

}  // namespace

ExistenceReport existence_checks(const FunctionSpec& f, const ThresholdScheme& scheme,
                                 const DataVector& v) {
  validate_data_vector(v);
  if (f.kind() == FunctionKind::kCustom) return numeric_checks(f, scheme, v);
  return analytic_checks(f, scheme, v);
}

}  // namespace monoest
