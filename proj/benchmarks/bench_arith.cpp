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

#include <benchmark/benchmark.h>

#include "normeq/arith.hpp"

using namespace normeq;

static void BM_HilbertSymbolAt2(benchmark::State& state) {
  Place two = Place::at_prime(2);
  Rational a(3, 7), b(-10, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert_symbol(a, b, two));
  }
}
BENCHMARK(BM_HilbertSymbolAt2);

static void BM_FactorDeskScale(benchmark::State& state) {
  Integer n("6074001000");  // 2^3 * 3 * 5^3 * 7 * 11 * 13 * 2021...
  for (auto _ : state) {
    benchmark::DoNotOptimize(factor(n));
  }
}
BENCHMARK(BM_FactorDeskScale);

static void BM_LegendreSymbol(benchmark::State& state) {
  Integer p("1000003");
  for (auto _ : state) {
    benchmark::DoNotOptimize(legendre_symbol(Integer(12345), p));
  }
}
BENCHMARK(BM_LegendreSymbol);

static void BM_RationalSqrt(benchmark::State& state) {
  Rational q(Integer("44521"), Integer("9801"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rational_sqrt(q));
  }
}
BENCHMARK(BM_RationalSqrt);
