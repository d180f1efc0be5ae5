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

#include <string>
#include <vector>

#include <json.hpp>

#include "monoest/moments.hpp"

namespace monoest {

struct AggregateConfig {
  FunctionSpec fspec = FunctionSpec::range_plus(1.0);
  ThresholdScheme scheme = ThresholdScheme::pps({1.0, 1.0});
  EstimatorKind kind = EstimatorKind::lstar();
  std::vector<std::size_t> domain_sizes;  // prefixes of the item list
  std::size_t trials = 200;
  std::string salt_prefix = "trial-";     // counter-based salts, reproducible
  std::vector<std::size_t> instances = {0, 1};
};

struct AggregateRow {
  std::size_t domain_size = 0;
  double truth = 0.0;
  double mean_estimate = 0.0;
  double rmse = 0.0;
  double relative_rmse = 0.0;
};

struct AggregateReport {
  std::vector<AggregateRow> rows;
  std::size_t trials = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
  std::string to_csv() const;  // x = domain size, one series per column
};

// Monte Carlo over counter-based salts: per trial, coordinate-samples the
// matrix and sums per-item estimates over the first |D| items; reports the
// mean estimate and (relative) RMSE against the exact sums.
AggregateReport aggregate_error_experiment(const InstanceMatrix& matrix,
                                           const AggregateConfig& config);

// Deterministic synthetic two-instance matrix for concentration runs.
InstanceMatrix synthetic_matrix(std::size_t items, std::uint64_t rng_seed = 17);

}  // namespace monoest
