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
#include <optional>
#include <string>
#include <vector>

#include "monoest/outcome.hpp"

namespace monoest {

class PiecewiseCurve;

// Hooks a user-supplied item function into the curve machinery. The oracle
// owns everything the built-in kinds compute analytically: the function
// value, the lower-bound curve for a given state of knowledge about the
// entries, and (for lambda_U / the upper estimator) the supremum of the
// lower bound over vectors consistent with an outcome.
class CustomOracle {
 public:
  virtual ~CustomOracle() = default;

  virtual std::size_t arity() const = 0;
  virtual double value(const DataVector& v) const = 0;

  // Lower bound curve on (from, 1]. entries[i].exact ? the value is known
  // : only the scheme bound tau_i(u) is known.
  virtual PiecewiseCurve lower_bound_curve(const ThresholdScheme& scheme,
                                           const std::vector<EntryBound>& entries,
                                           double from) const = 0;

  virtual bool has_sup_oracle() const { return false; }
  // sup over consistent z of the z lower bound, as a curve on (0, outcome.seed].
  virtual PiecewiseCurve sup_lower_bound_curve(const Outcome& outcome) const;

  // Probability that an outcome reveals f(v); nullopt means HT unsupported.
  virtual std::optional<double> reveal_probability(const ThresholdScheme& scheme,
                                                   const DataVector& v) const;
  virtual bool outcome_reveals(const Outcome& outcome) const;
};

enum class FunctionKind { kRangePlus, kRange, kTightFamily, kCustom };

// The item function f whose sum aggregate is being estimated.
//   range_plus(p):   max{0, v1 - v2}^p on two entries (one-sided change)
//   range(p):        (max(v) - min(v))^p on r >= 2 entries
//   tight_family(p): (1 - v^{1-p})/(1-p) on [0,1], p in [0, 0.5)
//   custom:          anything the oracle can describe
class FunctionSpec {
 public:
  static FunctionSpec range_plus(double p);
  static FunctionSpec range(double p);
  static FunctionSpec tight_family(double p);
  static FunctionSpec custom(std::shared_ptr<const CustomOracle> oracle);

  FunctionKind kind() const { return kind_; }
  double exponent() const { return p_; }
  const CustomOracle* oracle() const { return oracle_.get(); }

  double value(const DataVector& v) const;
  std::string name() const;

 private:
  FunctionKind kind_ = FunctionKind::kRangePlus;
  double p_ = 1.0;
  std::shared_ptr<const CustomOracle> oracle_;
};

}  // namespace monoest
