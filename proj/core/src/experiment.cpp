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

#include "monoest/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace monoest {

nlohmann::json AggregateReport::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["domain_size"] = r.domain_size;
    row["truth"] = r.truth;
    row["mean_estimate"] = r.mean_estimate;
    row["rmse"] = r.rmse;
    row["relative_rmse"] = r.relative_rmse;
    rows_json.push_back(row);
  }
  j["rows"] = rows_json;
  return j;
}

std::string AggregateReport::to_text() const {
  std::ostringstream os;
  os << std::left << std::setw(12) << "domain_size" << std::setw(14) << "truth" << std::setw(15)
     << "mean_estimate" << std::setw(14) << "rmse" << "rel_rmse" << "\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(12) << r.domain_size << std::setw(14) << r.truth
       << std::setw(15) << r.mean_estimate << std::setw(14) << r.rmse << r.relative_rmse
       << "\n";
  }
  return os.str();
}

std::string AggregateReport::to_csv() const {
  std::ostringstream os;
  os << "domain_size,truth,mean_estimate,rmse,relative_rmse\n";
  for (const auto& r : rows) {
    os << r.domain_size << "," << r.truth << "," << r.mean_estimate << "," << r.rmse << ","
       << r.relative_rmse << "\n";
  }
  return os.str();
}

AggregateReport aggregate_error_experiment(const InstanceMatrix& matrix,
                                           const AggregateConfig& config) {
  AggregateReport report;
  report.trials = config.trials;
  if (config.domain_sizes.empty() || config.trials == 0) return report;

  std::vector<std::size_t> sizes = config.domain_sizes;
  std::sort(sizes.begin(), sizes.end());
  if (sizes.back() > matrix.item_count()) {
    throw std::invalid_argument("domain size exceeds the item count");
  }

  std::vector<double> truths(sizes.size(), 0.0);
  {
    std::size_t si = 0;
    double running = 0.0;
    for (std::size_t k = 0; k < matrix.item_count() && si < sizes.size(); ++k) {
      DataVector v;
      for (std::size_t idx : config.instances) v.push_back(matrix.items[k].at(idx));
      running += config.fspec.value(v);
      while (si < sizes.size() && k + 1 == sizes[si]) {
        truths[si] = running;
        ++si;
      }
    }
  }

  std::vector<std::vector<double>> sums(sizes.size());
  for (auto& s : sums) s.reserve(config.trials);

  const bool needs_projection =
      !(matrix.instances == 2 && config.instances == std::vector<std::size_t>{0, 1});
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::string salt = config.salt_prefix + std::to_string(t);
    const SampleSet set = sample_matrix(matrix, config.scheme, salt);
    std::size_t si = 0;
    double running = 0.0;
    for (std::size_t k = 0; k < set.records.size() && si < sizes.size(); ++k) {
      const Outcome& full = set.records[k].outcome;
      if (needs_projection) {
        running += apply_estimator(config.kind, config.fspec, full.project(config.instances));
      } else {
        running += apply_estimator(config.kind, config.fspec, full);
      }
      while (si < sizes.size() && k + 1 == sizes[si]) {
        sums[si].push_back(running);
        ++si;
      }
    }
  }

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    AggregateRow row;
    row.domain_size = sizes[si];
    row.truth = truths[si];
    double mean = 0.0;
    for (double x : sums[si]) mean += x;
    mean /= static_cast<double>(config.trials);
    row.mean_estimate = mean;
    double mse = 0.0;
    for (double x : sums[si]) mse += (x - row.truth) * (x - row.truth);
    mse /= static_cast<double>(config.trials);
    row.rmse = std::sqrt(mse);
    row.relative_rmse = row.truth > 0 ? row.rmse / row.truth : row.rmse;
    report.rows.push_back(row);
  }
  return report;
}

InstanceMatrix synthetic_matrix(std::size_t items, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  InstanceMatrix m;
  m.instances = 2;
  m.keys.reserve(items);
  m.items.reserve(items);
  for (std::size_t k = 0; k < items; ++k) {
    m.keys.push_back("item-" + std::to_string(k));
    const double base = 0.2 + 0.8 * unit(rng);
    const double other = base * unit(rng);
    m.items.push_back({base, other});
  }
  return m;
}

}  // namespace monoest
