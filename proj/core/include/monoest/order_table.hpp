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

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoest/function_spec.hpp"
#include "monoest/outcome.hpp"
#include "monoest/rational.hpp"

namespace monoest {

using RationalVector = std::vector<Rational>;

// Identity of a discrete outcome: the seed interval index and the exact
// values of the sampled entries. Interval j covers (edge_j, edge_{j+1}].
struct DiscreteOutcome {
  std::size_t interval = 0;
  std::vector<std::pair<std::size_t, Rational>> sampled;  // sorted by entry index

  bool operator<(const DiscreteOutcome& o) const;
  bool operator==(const DiscreteOutcome& o) const;
};

// Priority order over the domain. The builtin orders compare f values:
// ascending prioritizes small-f vectors (yields the lower-extreme
// estimator), descending large-f vectors (the upper one). Chains list
// vectors explicitly from most to least prioritized; only vectors
// consistent with a shared outcome ever need to be comparable.
struct VectorOrder {
  enum class Kind { kAscendingF, kDescendingF, kChains };
  Kind kind = Kind::kAscendingF;
  std::vector<std::vector<RationalVector>> chains;

  static VectorOrder ascending_f() { return {Kind::kAscendingF, {}}; }
  static VectorOrder descending_f() { return {Kind::kDescendingF, {}}; }
  static VectorOrder with_chains(std::vector<std::vector<RationalVector>> chains) {
    return {Kind::kChains, std::move(chains)};
  }
};

// A fully materialized order-optimal estimator over a finite domain under a
// shared step scheme: constant estimates per (outcome, seed interval), all
// arithmetic exact.
class EstimatorTable {
 public:
  const std::vector<RationalVector>& domain() const { return domain_; }
  const std::vector<Rational>& thresholds() const { return thresholds_; }
  const std::vector<Rational>& levels() const { return levels_; }
  std::size_t arity() const { return arity_; }
  unsigned exponent() const { return exponent_; }
  FunctionKind function_kind() const { return kind_; }
  const VectorOrder& order() const { return order_; }
  const std::map<DiscreteOutcome, Rational>& cells() const { return cells_; }

  std::size_t interval_count() const { return edges_.size() - 1; }
  Rational interval_lo(std::size_t j) const { return edges_.at(j); }
  Rational interval_hi(std::size_t j) const { return edges_.at(j + 1); }

  Rational f_value(const RationalVector& v) const;
  DiscreteOutcome outcome_of(const RationalVector& v, std::size_t interval) const;

  // Estimate for a known discrete outcome; std::out_of_range when unknown.
  Rational estimate(const DiscreteOutcome& key) const;
  // Adapter for outcomes sampled under the matching step scheme.
  double estimate(const Outcome& outcome) const;

  Rational expectation(const RationalVector& v) const;
  Rational second_moment(const RationalVector& v) const;
  // Exact unbiasedness: expectation(v) == f(v) in rational arithmetic.
  bool unbiased_exact(const RationalVector& v) const;

  ThresholdScheme step_scheme() const;

  nlohmann::json to_json() const;
  static EstimatorTable from_json(const nlohmann::json& j);
  std::string listing() const;  // human-readable per-outcome table

 private:
  friend EstimatorTable order_optimal_build(const FunctionSpec&, std::vector<RationalVector>,
                                            std::vector<Rational>, const VectorOrder&);

  FunctionKind kind_ = FunctionKind::kRangePlus;
  unsigned exponent_ = 1;
  std::size_t arity_ = 0;
  std::vector<RationalVector> domain_;
  std::vector<Rational> thresholds_;
  std::vector<Rational> levels_;
  std::vector<Rational> edges_;  // 0, thresholds..., 1
  VectorOrder order_;
  std::map<DiscreteOutcome, Rational> cells_;
};

// Processes the domain vectors in priority order, extending each one with
// its variance-minimal completion given the estimate mass already fixed on
// less informative outcomes. thresholds[i] is the sampling breakpoint of
// the i-th smallest positive domain value. fspec must be range_plus or
// range with an integer exponent so that all values stay rational.
//
// Throws std::invalid_argument when the order is not total on some
// same-outcome consistent set (or cyclic), std::domain_error when a vector
// cannot be completed (not estimable over the domain).
EstimatorTable order_optimal_build(const FunctionSpec& fspec, std::vector<RationalVector> domain,
                                   std::vector<Rational> thresholds, const VectorOrder& order);

inline double order_optimal_estimate(const EstimatorTable& table, const Outcome& outcome) {
  return table.estimate(outcome);
}

}  // namespace monoest
