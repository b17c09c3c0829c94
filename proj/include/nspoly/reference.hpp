// Copyright 2026 The nspoly Authors
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

// Published white-noise resistances of the 46 vertex classes, in the
// published order (columns L, NS2, US2, KS2, S2).

#include <array>
#include <string_view>
#include <vector>

#include "nspoly/hierarchy.hpp"

namespace nspoly::reference {

inline constexpr std::array<std::array<std::string_view, 5>, 46> kNoiseRows{{
    {{"0", "0", "0", "0", "0"}},
    {{"2/3", "0", "0", "0", "0"}},
    {{"1/2", "1/3", "0", "0", "0"}},
    {{"2/5", "2/5", "0", "0", "0"}},
    {{"1/2", "2/5", "0", "0", "0"}},
    {{"1/2", "1/3", "1/3", "0", "0"}},
    {{"1/2", "1/3", "1/3", "0", "0"}},
    {{"1/2", "2/5", "2/5", "0", "0"}},
    {{"1/2", "3/8", "1/3", "1/6", "0"}},
    {{"3/5", "3/7", "1/3", "1/4", "0"}},
    {{"1/2", "4/11", "2/7", "2/7", "0"}},
    {{"1/2", "4/11", "1/3", "1/3", "0"}},
    {{"1/2", "8/23", "4/13", "4/19", "4/37"}},
    {{"1/2", "8/23", "4/13", "1/4", "1/7"}},
    {{"3/5", "3/7", "1/3", "1/3", "1/7"}},
    {{"1/2", "8/23", "1/3", "4/19", "4/25"}},
    {{"4/7", "2/5", "8/23", "8/29", "4/23"}},
    {{"3/5", "3/7", "1/3", "1/3", "1/5"}},
    {{"8/15", "4/11", "4/11", "1/3", "4/19"}},
    {{"16/31", "16/41", "1/3", "2/7", "3/13"}},
    {{"1/2", "7/19", "4/11", "1/3", "4/17"}},
    {{"1/2", "8/23", "16/49", "4/13", "1/4"}},
    {{"1/2", "8/23", "1/3", "4/13", "1/4"}},
    {{"4/7", "2/5", "5/14", "4/13", "1/4"}},
    {{"4/7", "2/5", "2/5", "16/49", "1/4"}},
    {{"4/7", "2/5", "8/23", "1/3", "1/4"}},
    {{"1/2", "4/11", "4/11", "1/3", "1/4"}},
    {{"4/7", "2/5", "20/53", "8/23", "1/4"}},
    {{"4/7", "2/5", "2/5", "2/5", "12/47"}},
    {{"16/31", "8/23", "8/23", "8/23", "2/7"}},
    {{"16/31", "8/23", "8/23", "8/23", "2/7"}},
    {{"16/31", "16/41", "8/23", "8/23", "2/7"}},
    {{"16/31", "16/41", "32/87", "8/23", "2/7"}},
    {{"1/2", "4/11", "8/23", "1/3", "1/3"}},
    {{"1/2", "4/11", "8/23", "1/3", "1/3"}},
    {{"1/2", "4/11", "6/17", "1/3", "1/3"}},
    {{"1/2", "3/8", "4/11", "1/3", "1/3"}},
    {{"4/7", "2/5", "4/11", "1/3", "1/3"}},
    {{"4/7", "2/5", "56/155", "1/3", "1/3"}},
    {{"1/2", "2/5", "2/5", "1/3", "1/3"}},
    {{"1/2", "2/5", "2/5", "1/3", "1/3"}},
    {{"1/2", "2/5", "2/5", "1/3", "1/3"}},
    {{"8/15", "32/81", "48/125", "4/11", "4/11"}},
    {{"3/5", "3/8", "3/8", "3/8", "3/8"}},
    {{"1/2", "1/2", "1/2", "1/2", "1/2"}},
    {{"1/2", "1/2", "1/2", "1/2", "1/2"}},
}};

inline std::vector<NoiseRow> noise_rows() {
  std::vector<NoiseRow> out;
  for (const auto& r : kNoiseRows) {
    NoiseRow row;
    for (std::size_t k = 0; k < 5; ++k) row[k] = Rational::parse(r[k]);
    out.push_back(row);
  }
  return out;
}

// 1-based published indices.
inline constexpr std::size_t kPrRow = 2;
inline constexpr std::size_t kSpotRow = 13;
inline constexpr std::size_t kFullCorrelationRow = 44;
inline constexpr std::array<std::size_t, 6> kMerminRows{46, 44, 2, 21, 22, 34};

}  // namespace nspoly::reference
