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

#ifndef NORMEQ_COMMANDS_HPP
#define NORMEQ_COMMANDS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "normeq/problem.hpp"
#include "normeq/transcript.hpp"

namespace normeq {

/// Result of one CLI command: transcript (machine-readable), exit code per
/// the verdict discipline, and a short human-readable summary.
struct CommandOutcome {
  Transcript transcript;
  int exit_code = 0;
  std::string text;
};

CommandOutcome cmd_norm_form(const std::vector<Rational>& minpoly);
CommandOutcome cmd_solve(const ProblemFile& pf);
/// splitting: optional {"rho": [...], "xi": [...]} (quadratic path) or
/// {"rhos": [[...], ...], "xi": [...]} (general path); searched when absent.
CommandOutcome cmd_torsor(const ProblemFile& pf, const std::optional<Json>& splitting,
                          unsigned sample_points, std::uint64_t seed);
CommandOutcome cmd_verify_lemma22_numeric(const Rational& a, const Rational& u, const Rational& v,
                                          const Rational& lambda, const Rational& mu);
CommandOutcome cmd_verify_lemma22_symbolic();
CommandOutcome cmd_verify_lemma22_samples(unsigned count, std::uint64_t seed);
CommandOutcome cmd_sqrt_in_field(const Rational& a, const std::vector<Rational>& minpoly);
CommandOutcome cmd_solve_conic(const Rational& a, const Rational& b, const Rational& c);
/// Runs every problem under dir/problems against dir/golden (record rewrites
/// the golden transcripts). Wall times are stripped before comparison.
CommandOutcome cmd_corpus(const std::string& dir, bool record);
CommandOutcome cmd_verify_transcript(const Json& transcript);

/// Wraps a command body: catches the library error types and converts them
/// into the corresponding verdicts and exit codes.
CommandOutcome run_guarded(const std::string& command, const std::function<CommandOutcome()>& body);

}  // namespace normeq

#endif  // NORMEQ_COMMANDS_HPP
