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

#include "monoest/hash.hpp"

namespace monoest {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// splitmix64 finalizer; full avalanche on the 64-bit state.
std::uint64_t finalize(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_hash64(std::string_view key, std::string_view salt) {
  // Length byte between the fields keeps ("ab","c") and ("a","bc") distinct.
  std::uint64_t h = fnv1a(kFnvOffset, key);
  h *= kFnvPrime;
  h ^= static_cast<std::uint64_t>(key.size());
  h = fnv1a(h, salt);
  return finalize(h);
}

double seed_from_key(std::string_view key, std::string_view salt) {
  const std::uint64_t h = mix_hash64(key, salt);
  // (h+1) ranges over [1, 2^64]; dividing by 2^64 lands in (0,1].
  return (static_cast<double>(h) + 1.0) * 0x1.0p-64;
}

}  // namespace monoest
