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

#include "normeq/quadform.hpp"

using namespace normeq;

namespace {

QuadraticForm fiber_form() {
  Matrix g(4, std::vector<Rational>(4, Rational(0)));
  g[0][1] = g[1][0] = Rational(1);
  g[2][3] = g[3][2] = Rational(-3);
  return QuadraticForm(4, g);
}

}  // namespace

static void BM_SolveConic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_conic(Rational(1), Rational(-2), Rational(-7)));
  }
}
BENCHMARK(BM_SolveConic);

static void BM_IsIsotropicGlobalTernary(benchmark::State& state) {
  QuadraticForm q = QuadraticForm::diagonal({Rational(3), Rational(-5), Rational(7)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_isotropic_global(q));
  }
}
BENCHMARK(BM_IsIsotropicGlobalTernary);

static void BM_RepresentValueFiber(benchmark::State& state) {
  QuadraticForm q = fiber_form();
  for (auto _ : state) {
    benchmark::DoNotOptimize(represent_value(q, Rational(-1)));
  }
}
BENCHMARK(BM_RepresentValueFiber);

static void BM_Diagonalize4(benchmark::State& state) {
  QuadraticForm q = fiber_form();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_and_diagonalize(q));
  }
}
BENCHMARK(BM_Diagonalize4);
