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

#include "monoest/curve.hpp"
#include "monoest/hull.hpp"

namespace monoest {

// Span of z-optimal estimate values at an outcome over the consistent
// vectors z, given the cumulative estimate mass M on less informative
// outcomes. Any estimator staying inside [lambda_lo, lambda_hi] everywhere
// is unbiased and nonnegative.
struct OptimalRange {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  bool unbounded_hi = false;
};

// lambda_lo = (underline(rho) - M)/rho (attained by a consistent vector
// whose f value equals the lower bound); lambda_hi from the sup-lower-bound
// curve. Requires 0 <= M <= underline(rho).
OptimalRange lambda_bounds(const FunctionSpec& f, const Outcome& outcome, double M);

enum class Certainty { kTrue, kFalse, kUnknown };

struct ExistenceReport {
  Certainty estimable = Certainty::kUnknown;        // unbiased nonnegative estimator exists
  Certainty finite_variance = Certainty::kUnknown;  // one with finite variance for v exists
  Certainty bounded = Certainty::kUnknown;          // one bounded on v exists
};

// Analytic for the built-in kinds; numeric limit probes with a distinct
// "unknown" state for custom functions.
ExistenceReport existence_checks(const FunctionSpec& f, const ThresholdScheme& scheme,
                                 const DataVector& v);

}  // namespace monoest
