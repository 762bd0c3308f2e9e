// Copyright 2026 The normeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NORMEQ_CONFIG_HPP
#define NORMEQ_CONFIG_HPP

#include <cstdint>

namespace normeq {

/// Every bounded search in the library draws its limits from one of these.
/// Defaults are sized for desk-scale inputs; all searches are deterministic
/// for a fixed budget.
struct Budgets {
  /// Trial division bound used before Pollard rho kicks in.
  std::uint64_t trial_division_bound = 1'000'000;
  /// Pollard rho iteration budget per factorization call.
  std::uint64_t factor_budget = 4'000'000;
  /// Coordinate height bound for the xi-search in splitting-datum solving.
  unsigned xi_height = 32;
  /// Node budget for brute-force solution enumeration.
  std::uint64_t enum_nodes = 1'000'000;
  /// Coordinate height bound for brute-force solution enumeration.
  unsigned enum_height = 8;
  /// Direct-search shell ceiling in represent_value before the descent
  /// phase, and the tail height ceiling inside the descent phase.
  unsigned represent_direct_height = 3;
  unsigned represent_descent_height = 4096;
  /// Number of distinct conic points tried when a fiber is locally obstructed.
  unsigned fiber_attempts = 12;
};

}  // namespace normeq

#endif  // NORMEQ_CONFIG_HPP
