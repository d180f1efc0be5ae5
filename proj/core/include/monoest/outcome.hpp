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
#include <optional>
#include <string>
#include <vector>

#include "monoest/data.hpp"
#include "monoest/scheme.hpp"

namespace monoest {

// The sample of one data vector at seed rho: exact values for the sampled
// entries, and the threshold-implied strict upper bound tau_i(rho) for every
// other entry. Together with the scheme this is a finite encoding of the set
// of data vectors consistent with the sample.
struct Outcome {
  double seed = 1.0;                      // rho in (0,1]
  std::size_t arity = 0;
  std::map<std::size_t, double> sampled;  // entry index -> exact value
  std::map<std::size_t, double> bounds;   // entry index -> tau_i(seed)
  ThresholdScheme scheme;

  bool is_sampled(std::size_t index) const { return sampled.count(index) != 0; }
  double sampled_value(std::size_t index) const { return sampled.at(index); }

  // tau_i(u) for u >= seed; the bound on an entry that was not sampled.
  double bound_at(std::size_t index, double u) const { return scheme.threshold(index, u); }

  // Whether entry `index` is still sampled at a coarser seed u >= seed.
  bool sampled_at(std::size_t index, double u) const;

  // Restriction to a subset of entries (shared seed); used when a query
  // selects a pair of instances out of r.
  Outcome project(const std::vector<std::size_t>& indices) const;
};

// Per-entry knowledge encoded by an outcome: either the exact value or a
// strict upper bound (the consistent set is a product of points and
// half-open intervals [0, bound)).
struct EntryBound {
  bool exact = false;
  double value = 0.0;  // exact value, or the strict upper bound
};

std::vector<EntryBound> consistent_bounds(const Outcome& outcome);

// True when `v` lies inside the consistent set encoded by `outcome`.
bool consistent_with(const DataVector& v, const Outcome& outcome);

// Samples one vector: entry i is included iff v_i >= tau_i(u).
// Throws std::invalid_argument on arity mismatch or a seed outside (0,1].
Outcome sample_vector(const DataVector& v, double seed, const ThresholdScheme& scheme);

struct SampleRecord {
  std::string key;
  Outcome outcome;
};

// Coordinated sample of a whole matrix: one hashed seed per item key,
// shared by all instances of that item.
struct SampleSet {
  std::size_t arity = 0;
  ThresholdScheme scheme;
  std::string salt;
  std::vector<SampleRecord> records;
};

// seed_override, when given, replaces hashing for listed keys (test hook).
SampleSet sample_matrix(const InstanceMatrix& matrix, const ThresholdScheme& scheme,
                        const std::string& salt,
                        const std::map<std::string, double>* seed_override = nullptr);

// The outcome the same data would have produced at a coarser seed u >= seed.
Outcome coarsen(const Outcome& outcome, double u);

}  // namespace monoest
