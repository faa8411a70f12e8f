// Copyright 2026 The condage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace condage::text {

std::string_view trim(std::string_view s);

/// Splits one CSV line on commas and trims each field. No quoting support:
/// condition datasets never carry commas inside fields.
std::vector<std::string> split_csv(std::string_view line);

bool iequals(std::string_view a, std::string_view b);

std::optional<double> parse_real(std::string_view s);
std::optional<long long> parse_integer(std::string_view s);

/// Shortest decimal representation that round-trips to the same double.
std::string format_real(double value);

/// Fixed-point rendering for human-readable reports.
std::string format_fixed(double value, int decimals);

/// 64-bit FNV-1a, used for config hashes and dataset fingerprints.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace condage::text
