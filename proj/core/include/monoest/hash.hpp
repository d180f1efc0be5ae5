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

#include <cstdint>
#include <string_view>

namespace monoest {

// 64-bit avalanche hash over key and salt. Stable across platforms and
// processes, so coordinated samples taken independently agree on seeds.
std::uint64_t mix_hash64(std::string_view key, std::string_view salt);

// Seed in (0,1], derived as (h+1)/2^64 so that 0 is unreachable.
double seed_from_key(std::string_view key, std::string_view salt);

}  // namespace monoest
