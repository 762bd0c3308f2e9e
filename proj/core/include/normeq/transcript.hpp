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

#ifndef NORMEQ_TRANSCRIPT_HPP
#define NORMEQ_TRANSCRIPT_HPP

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace normeq {

/// Machine-readable run record: an append-only step list plus a verdict, so
/// partial failures still yield auditable output. Every solution-bearing
/// step carries enough data for the standalone re-verifier to re-check its
/// identity without recomputing any search.
struct Transcript {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<nlohmann::json> steps;
  std::string verdict;
  nlohmann::json verification;  // the final identity echoed, when applicable
  double wall_time_ms = 0.0;

  nlohmann::json to_json(bool include_wall_time = true) const;
  static Transcript from_json(const nlohmann::json& j);
};

/// Exit-code discipline: solved/ok = 0, local-obstruction = 10,
/// budget-exhausted (and bounded searches that end empty) = 20,
/// unsupported = 30, input error = 64.
int exit_code_for_verdict(const std::string& verdict);

/// Re-checks every identity recorded in a transcript using only the
/// transcript data. Returns human-readable failure descriptions; empty
/// means the transcript verifies.
std::vector<std::string> verify_transcript(const nlohmann::json& transcript);

}  // namespace normeq

#endif  // NORMEQ_TRANSCRIPT_HPP
