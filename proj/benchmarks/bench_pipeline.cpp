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

#include "normeq/torsor.hpp"

using namespace normeq;

namespace {

NumberField biquadratic() {
  return NumberField::create(
      UniPoly({Rational(1), Rational(0), Rational(-10), Rational(0), Rational(1)}));
}

}  // namespace

static void BM_AbsoluteNormQuartic(benchmark::State& state) {
  NumberField K = biquadratic();
  FieldElement x = K.element({Rational(1), Rational(2), Rational(-3), Rational(1, 2)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(absolute_norm(x));
  }
}
BENCHMARK(BM_AbsoluteNormQuartic);

static void BM_NormFormQuartic(benchmark::State& state) {
  NumberField K = biquadratic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_form(K));
  }
}
BENCHMARK(BM_NormFormQuartic);

static void BM_SqrtInField(benchmark::State& state) {
  NumberField K = biquadratic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqrt_in_field(Rational(2), K));
  }
}
BENCHMARK(BM_SqrtInField);

static void BM_QuarticSplitPipeline(benchmark::State& state) {
  NumberField K = biquadratic();
  NormEquationProblem p = NormEquationProblem::quadratic(K, Rational(7), Rational(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_quartic_split(p));
  }
}
BENCHMARK(BM_QuarticSplitPipeline);
