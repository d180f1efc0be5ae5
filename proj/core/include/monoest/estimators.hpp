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

// Lower extreme of the optimal range:
//   underline(rho)/rho - integral_rho^1 underline(u)/u^2 du,
// evaluated on the suffix curve of the outcome. Unbiased, nonnegative,
// monotone, 4-competitive; the unique admissible monotone estimator.
double lstar_estimate(const FunctionSpec& f, const Outcome& outcome);

// Same value via the defining integral computed by adaptive quadrature
// instead of the per-segment closed forms. Exposed for cross-checks.
double lstar_estimate_quadrature(const FunctionSpec& f, const Outcome& outcome,
                                 double tol = 1e-9);

// Upper extreme of the optimal range. Closed forms cover the range kinds
// under equal-rate PPS; anything else runs a forward grid sweep of the
// defining equation from u=1 with grid-doubling refinement. Throws
// std::domain_error when the optimal range is unbounded above.
double ustar_estimate(const FunctionSpec& f, const Outcome& outcome);

// Forward sweep solver, also usable as an independent cross-check of the
// closed forms. sup-norm refinement tolerance `tol`.
double ustar_estimate_sweep(const FunctionSpec& f, const Outcome& outcome, double tol = 1e-6);

// Horvitz-Thompson: f(v)/Pr[reveal] when the outcome reveals every entry,
// 0 otherwise.
double ht_estimate(const FunctionSpec& f, const Outcome& outcome);

// Pr[every entry of v is sampled]; 0 means HT is not applicable to v.
double ht_reveal_probability(const FunctionSpec& f, const ThresholdScheme& scheme,
                             const DataVector& v);
bool ht_applicable(const FunctionSpec& f, const ThresholdScheme& scheme, const DataVector& v);

// Cumulative estimate mass M(rho) = integral_rho^1 estimate(u,v) du for the
// two extreme estimators, used by the in-range checks.
double lstar_cumulative(const FunctionSpec& f, const Outcome& outcome);
double ustar_cumulative(const FunctionSpec& f, const Outcome& outcome);

}  // namespace monoest
