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

#include <memory>
#include <string>

#include "monoest/estimators.hpp"
#include "monoest/order_table.hpp"

namespace monoest {

// Which estimator a verification run exercises. The v-optimal oracle is the
// per-vector variance minimizer; it is only defined on the outcomes of the
// vector it was built for, so it serves as the competitive-ratio baseline,
// not as a usable estimator.
struct EstimatorKind {
  enum class Type { kLstar, kUstar, kHt, kVOptOracle, kTable };
  Type type = Type::kLstar;
  std::shared_ptr<const EstimatorTable> table;

  static EstimatorKind lstar() { return {Type::kLstar, nullptr}; }
  static EstimatorKind ustar() { return {Type::kUstar, nullptr}; }
  static EstimatorKind ht() { return {Type::kHt, nullptr}; }
  static EstimatorKind vopt_oracle() { return {Type::kVOptOracle, nullptr}; }
  static EstimatorKind order_table(std::shared_ptr<const EstimatorTable> t) {
    return {Type::kTable, std::move(t)};
  }
  std::string name() const;
};

// Point estimate of `kind` on one outcome. The v-optimal oracle is not an
// outcome function and is rejected here.
double apply_estimator(const EstimatorKind& kind, const FunctionSpec& f, const Outcome& outcome);

struct MomentReport {
  double expectation = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double f_value = 0.0;
  double quadrature_error_bound = 0.0;  // zero on fully closed-form paths
  bool second_moment_infinite = false;
};

// Expectation and second moment of the estimate over u ~ U(0,1] for fixed
// data v. Uses per-piece closed forms where the estimate is piecewise
// analytic, adaptive quadrature split at the outcome-change seeds
// otherwise; log-singular tails at u->0 are cut at 1e-12 and the remainder
// is folded into the error bound.
MomentReport moments(const EstimatorKind& kind, const FunctionSpec& f,
                     const ThresholdScheme& scheme, const DataVector& v, double tol = 1e-9);

struct RatioReport {
  DataVector v;
  double estimator_second_moment = 0.0;
  double optimal_second_moment = 0.0;
  double ratio = 1.0;  // 1 by convention when f(v) = 0 (both moments vanish)
};

RatioReport competitive_ratio(const EstimatorKind& kind, const FunctionSpec& f,
                              const ThresholdScheme& scheme, const DataVector& v);

struct TightnessReport {
  double p = 0.0;
  double opt_second_moment = 0.0;    // 1/(1-2p)
  double lstar_second_moment = 0.0;  // 2/((1-2p)(1-p))
  double ratio = 0.0;                // 2/(1-p)
  double opt_numeric = 0.0;          // cross-checks from moments()
  double lstar_numeric = 0.0;
  double max_rel_err = 0.0;
};

// The family whose worst-case ratio approaches 4 as p -> 0.5-. Closed-form
// moments for the all-zero data point, cross-checked against moments().
// Throws std::invalid_argument for p outside [0, 0.5).
TightnessReport tightness_family(double p);

}  // namespace monoest
