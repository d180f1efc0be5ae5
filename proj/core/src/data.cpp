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

#include "monoest/data.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace monoest {

void validate_data_vector(const DataVector& v) {
  if (v.empty()) throw std::invalid_argument("data vector must have at least one entry");
  for (double x : v) {
    if (!(x >= 0)) throw std::invalid_argument("data vector entries must be nonnegative");
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

InstanceMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "key") {
    throw std::runtime_error("csv header must start with 'key'");
  }
  InstanceMatrix m;
  m.instances = header.size() - 1;
  if (m.instances == 0) throw std::runtime_error("csv header lists no instance columns");

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() > m.instances + 1) {
      throw std::runtime_error("csv row " + std::to_string(row) + " has too many columns");
    }
    DataVector v(m.instances, 0.0);  // absent cells count as weight 0
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) continue;
      std::size_t pos = 0;
      double x = 0;
      try {
        x = std::stod(fields[i], &pos);
      } catch (const std::exception&) {
        throw std::runtime_error("csv row " + std::to_string(row) + ": bad number '" + fields[i] + "'");
      }
      if (pos != fields[i].size()) {
        throw std::runtime_error("csv row " + std::to_string(row) + ": bad number '" + fields[i] + "'");
      }
      if (!(x >= 0)) {
        throw std::runtime_error("csv row " + std::to_string(row) + ": negative weight");
      }
      v[i - 1] = x;
    }
    m.keys.push_back(fields[0]);
    m.items.push_back(std::move(v));
  }
  return m;
}

InstanceMatrix read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  return read_matrix_csv(in);
}

void write_matrix_csv(const InstanceMatrix& m, std::ostream& out) {
  out << "key";
  for (std::size_t i = 1; i <= m.instances; ++i) out << ",v" << i;
  out << "\n";
  for (std::size_t k = 0; k < m.item_count(); ++k) {
    out << m.keys[k];
    for (double x : m.items[k]) out << "," << x;
    out << "\n";
  }
}

}  // namespace monoest
