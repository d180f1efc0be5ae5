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

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace monoest {

enum class SchemeKind { kPps, kStep };

// Per-entry monotone threshold functions tau_i(u) on (0,1]. An entry value
// v_i is included in the sample iff v_i >= tau_i(u).
//
// Pps:  tau_i(u) = u * rate_i, one rate per entry (rate > 0).
// Step: shared cut-level function for all entries, given by strictly
//       increasing breakpoints pi_1 < ... < pi_n and level values
//       l_1 < ... < l_n. tau(u) is the smallest level whose breakpoint is
//       >= u (so value l_j is sampled exactly when u <= pi_j), and +inf
//       once u exceeds pi_n.
class ThresholdScheme {
 public:
  ThresholdScheme() = default;

  static ThresholdScheme pps(std::vector<double> rates);
  static ThresholdScheme step(std::vector<double> breakpoints, std::vector<double> levels,
                              std::size_t arity);

  SchemeKind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }

  // tau_i(u); throws std::out_of_range for a bad index.
  double threshold(std::size_t index, double u) const;

  double rate(std::size_t index) const;
  const std::vector<double>& rates() const { return rates_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& levels() const { return levels_; }

  nlohmann::json to_json() const;
  static ThresholdScheme from_json(const nlohmann::json& j);

  // Largest seed at which `value` passes tau_index, clipped to [0,1];
  // 0 when the value is never sampled.
  double sampling_horizon(std::size_t index, double value) const;

 private:
  SchemeKind kind_ = SchemeKind::kPps;
  std::size_t arity_ = 0;
  std::vector<double> rates_;        // Pps
  std::vector<double> breakpoints_;  // Step
  std::vector<double> levels_;       // Step
};

}  // namespace monoest
