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

#include <iosfwd>
#include <string>
#include <vector>

namespace monoest {

// One item's weights across the r instances (a column of the matrix).
using DataVector = std::vector<double>;

// Throws std::invalid_argument on negative entries or empty vectors.
void validate_data_vector(const DataVector& v);

// r instances over a keyed item set. items[k] holds the r weights of key k.
struct InstanceMatrix {
  std::size_t instances = 0;
  std::vector<std::string> keys;
  std::vector<DataVector> items;

  std::size_t item_count() const { return keys.size(); }
};

// CSV with header "key,v1,...,vr", one row per item, nonnegative decimals.
// Missing trailing cells are treated as weight 0.
InstanceMatrix read_matrix_csv(std::istream& in);
InstanceMatrix read_matrix_csv_file(const std::string& path);
void write_matrix_csv(const InstanceMatrix& m, std::ostream& out);

}  // namespace monoest
