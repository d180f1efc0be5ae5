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

#include "monoest/outcome.hpp"

#include <stdexcept>

#include "monoest/hash.hpp"

namespace monoest {

bool Outcome::sampled_at(std::size_t index, double u) const {
  if (u < seed) throw std::invalid_argument("sampled_at needs a coarser seed (u >= rho)");
  const auto it = sampled.find(index);
  if (it == sampled.end()) return false;  // unsampled entries never reappear at coarser seeds
  return it->second >= scheme.threshold(index, u);
}

Outcome Outcome::project(const std::vector<std::size_t>& indices) const {
  Outcome out;
  out.seed = seed;
  out.arity = indices.size();
  std::vector<double> rates;
  for (std::size_t new_i = 0; new_i < indices.size(); ++new_i) {
    const std::size_t old_i = indices[new_i];
    if (old_i >= arity) throw std::out_of_range("projection index out of range");
    if (scheme.kind() == SchemeKind::kPps) rates.push_back(scheme.rate(old_i));
    if (auto it = sampled.find(old_i); it != sampled.end()) {
      out.sampled[new_i] = it->second;
    } else {
      out.bounds[new_i] = bounds.at(old_i);
    }
  }
  out.scheme = scheme.kind() == SchemeKind::kPps
                   ? ThresholdScheme::pps(std::move(rates))
                   : ThresholdScheme::step(scheme.breakpoints(), scheme.levels(), indices.size());
  return out;
}

std::vector<EntryBound> consistent_bounds(const Outcome& outcome) {
  std::vector<EntryBound> out(outcome.arity);
  for (std::size_t i = 0; i < outcome.arity; ++i) {
    if (outcome.is_sampled(i)) {
      out[i] = {true, outcome.sampled_value(i)};
    } else {
      out[i] = {false, outcome.bounds.at(i)};
    }
  }
  return out;
}

bool consistent_with(const DataVector& v, const Outcome& outcome) {
  if (v.size() != outcome.arity) return false;
  for (std::size_t i = 0; i < outcome.arity; ++i) {
    if (outcome.is_sampled(i)) {
      if (v[i] != outcome.sampled_value(i)) return false;
    } else if (!(v[i] < outcome.bounds.at(i))) {
      return false;
    }
  }
  return true;
}

Outcome sample_vector(const DataVector& v, double seed, const ThresholdScheme& scheme) {
  validate_data_vector(v);
  if (v.size() != scheme.arity()) {
    throw std::invalid_argument("data vector arity does not match scheme");
  }
  if (!(seed > 0) || seed > 1.0) throw std::invalid_argument("seed must lie in (0,1]");
  Outcome out;
  out.seed = seed;
  out.arity = v.size();
  out.scheme = scheme;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double tau = scheme.threshold(i, seed);
    if (v[i] >= tau) {
      out.sampled[i] = v[i];
    } else {
      out.bounds[i] = tau;
    }
  }
  return out;
}

Outcome coarsen(const Outcome& outcome, double u) {
  if (u < outcome.seed) throw std::invalid_argument("coarsen needs u >= the outcome seed");
  Outcome out;
  out.seed = u;
  out.arity = outcome.arity;
  out.scheme = outcome.scheme;
  for (std::size_t i = 0; i < outcome.arity; ++i) {
    if (outcome.is_sampled(i) && outcome.sampled_value(i) >= outcome.scheme.threshold(i, u)) {
      out.sampled[i] = outcome.sampled_value(i);
    } else {
      out.bounds[i] = outcome.scheme.threshold(i, u);
    }
  }
  return out;
}

SampleSet sample_matrix(const InstanceMatrix& matrix, const ThresholdScheme& scheme,
                        const std::string& salt,
                        const std::map<std::string, double>* seed_override) {
  if (matrix.instances != scheme.arity()) {
    throw std::invalid_argument("matrix instance count does not match scheme arity");
  }
  SampleSet set;
  set.arity = matrix.instances;
  set.scheme = scheme;
  set.salt = salt;
  set.records.reserve(matrix.item_count());
  for (std::size_t k = 0; k < matrix.item_count(); ++k) {
    double seed;
    if (seed_override != nullptr) {
      const auto it = seed_override->find(matrix.keys[k]);
      seed = it != seed_override->end() ? it->second : seed_from_key(matrix.keys[k], salt);
    } else {
      seed = seed_from_key(matrix.keys[k], salt);
    }
    set.records.push_back({matrix.keys[k], sample_vector(matrix.items[k], seed, scheme)});
  }
  return set;
}

}  // namespace monoest
