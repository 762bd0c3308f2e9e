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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "normeq/commands.hpp"

using namespace normeq;

namespace {

Json worked_split_json() {
  return Json{{"field", Json{{"minpoly", Json::array({"1", "0", "-10", "0", "1"})}}},
              {"polynomial", Json{{"c", "1"}, {"a", "2"}}}};
}

Json obstructed_json() {
  return Json{{"field", Json{{"minpoly", Json::array({"9", "0", "-2", "0", "1"})}}},
              {"polynomial", Json{{"c", "-1"}, {"a", "-1"}}}};
}

Json gaussian_enum_json() {
  return Json{{"field", Json{{"minpoly", Json::array({"1", "0", "1"})}}},
              {"polynomial", Json{{"c", "1"}, {"a", "-1"}}}};
}

}  // namespace

TEST_CASE("problem files parse and validate") {
  ProblemFile pf = ProblemFile::from_json(worked_split_json());
  NormEquationProblem p = pf.build();
  CHECK(p.K().degree() == 4);
  CHECK(p.c() == Rational(1));

  // Witness validation.
  Json with_witness = worked_split_json();
  with_witness["witness"] = Json{{"sqrt_a_coords", Json::array({"0", "-9/2", "0", "1/2"})}};
  CHECK_NOTHROW(ProblemFile::from_json(with_witness).build());
  with_witness["witness"]["sqrt_a_coords"] = Json::array({"1", "0", "0", "0"});
  CHECK_THROWS_AS(ProblemFile::from_json(with_witness).build(), domain_error);

  CHECK_THROWS_AS(ProblemFile::from_json(Json{{"field", Json::object()}}), domain_error);
}

TEST_CASE("cmd_solve: verdicts and exit codes") {
  // Worked instance: solved, exit 0, verification line echoes the identity.
  CommandOutcome solved = cmd_solve(ProblemFile::from_json(worked_split_json()));
  CHECK(solved.exit_code == 0);
  CHECK(solved.transcript.verdict == "solved");
  CHECK(solved.transcript.verification.at("lhs") == solved.transcript.verification.at("rhs"));

  // Conic failing at the real place: local obstruction, exit 10.
  CommandOutcome obstructed = cmd_solve(ProblemFile::from_json(obstructed_json()));
  CHECK(obstructed.exit_code == 10);
  CHECK(obstructed.transcript.verdict == "local-obstruction");

  // Enumeration path with solutions: exit 0.
  CommandOutcome enumerated = cmd_solve(ProblemFile::from_json(gaussian_enum_json()));
  CHECK(enumerated.exit_code == 0);
  CHECK(enumerated.transcript.verdict == "solved");

  // Enumeration path with nothing in budget: no-solution, exit 20.
  Json empty = Json{{"field", Json{{"minpoly", Json::array({"1", "0", "1"})}}},
                    {"polynomial", Json{{"c", "3"}, {"a", "-1"}}},
                    {"budgets", Json{{"enum_height", 4}, {"enum_nodes", 50000}}}};
  CommandOutcome none = cmd_solve(ProblemFile::from_json(empty));
  CHECK(none.exit_code == 20);
  CHECK(none.transcript.verdict == "no-solution");

  // Unsupported: general path with a cubic factor, via the torsor command.
  Json cubic = Json{{"field", Json{{"minpoly", Json::array({"1", "0", "1"})}}},
                    {"polynomial", Json{{"coeffs", Json::array({"-2", "0", "0", "1"})}}}};
  CommandOutcome unsup = run_guarded("torsor", [&] {
    return cmd_torsor(ProblemFile::from_json(cubic), std::nullopt, 0, 1);
  });
  CHECK(unsup.exit_code == 30);
  CHECK(unsup.transcript.verdict == "unsupported");

  // Input error: malformed problem, exit 64.
  CommandOutcome bad = run_guarded("solve", [&] {
    return cmd_solve(ProblemFile::from_json(Json{{"nonsense", 1}}));
  });
  CHECK(bad.exit_code == 64);
  CHECK(bad.transcript.verdict == "input-error");
}

TEST_CASE("cmd_torsor emits the case, equation, and verified sample points") {
  CommandOutcome split = cmd_torsor(ProblemFile::from_json(worked_split_json()),
                                    std::nullopt, 3, 7);
  CHECK(split.exit_code == 0);
  bool saw_case = false, saw_point = false;
  for (const auto& step : split.transcript.steps) {
    if (step.value("kind", "") == "torsor-case") {
      saw_case = true;
      CHECK(step.at("case") == "split");
    }
    if (step.value("kind", "") == "torsor-point") saw_point = true;
  }
  CHECK(saw_case);
  CHECK(saw_point);
  // The emitted transcript re-verifies from its own data.
  CHECK(verify_transcript(split.transcript.to_json()).empty());

  Json inert = Json{{"field", Json{{"minpoly", Json::array({"1", "0", "1"})}}},
                    {"polynomial", Json{{"c", "1"}, {"a", "2"}}}};
  CommandOutcome io = cmd_torsor(ProblemFile::from_json(inert), std::nullopt, 3, 9);
  CHECK(io.exit_code == 0);
  CHECK(verify_transcript(io.transcript.to_json()).empty());

  // Explicit splitting data.
  Json datum = Json{{"rho", Json::array({"1", "0"})}, {"xi", Json::array({"1", "0", "0", "0"})}};
  CommandOutcome with_datum =
      cmd_torsor(ProblemFile::from_json(worked_split_json()), datum, 0, 1);
  CHECK(with_datum.exit_code == 0);

  // General factored path over Q(sqrt 3).
  Json general = Json{{"field", Json{{"minpoly", Json::array({"-3", "0", "1"})}}},
                      {"polynomial", Json{{"coeffs", Json::array({"6", "-12", "3", "-6", "3"})}}}};
  // 3(t-1)^2(t^2-2) = 3t^4 - 6t^3 + 3t^2*... constructed below instead.
  UniPoly lin({Rational(-1), Rational(1)});
  UniPoly quad({Rational(-2), Rational(0), Rational(1)});
  UniPoly P = Rational(3) * (lin * lin * quad);
  Json coeffs = Json::array();
  for (const auto& c : P.coeffs()) coeffs.push_back(c.str());
  general["polynomial"]["coeffs"] = coeffs;
  CommandOutcome go = cmd_torsor(ProblemFile::from_json(general), std::nullopt, 0, 1);
  CHECK(go.exit_code == 0);
  bool saw_factors = false;
  for (const auto& step : go.transcript.steps) {
    if (step.value("kind", "") == "torsor-case" && step.contains("factors")) {
      saw_factors = true;
      CHECK(step.at("factors").size() == 2);
    }
  }
  CHECK(saw_factors);
  CHECK(verify_transcript(go.transcript.to_json()).empty());
}

TEST_CASE("verify-lemma22 command") {
  CommandOutcome num = cmd_verify_lemma22_numeric(Rational(2), Rational(3), Rational(0),
                                                  Rational(1), Rational(0));
  CHECK(num.exit_code == 0);
  CHECK(num.text == "rank 4, disc(q0) = 2, disc(q1) = 18");
  CHECK(verify_transcript(num.transcript.to_json()).empty());

  CHECK(run_guarded("verify-lemma22", [] {
          return cmd_verify_lemma22_numeric(Rational(4), Rational(1), Rational(0), Rational(1),
                                            Rational(0));
        }).exit_code == 64);  // a square
  CHECK(run_guarded("verify-lemma22", [] {
          return cmd_verify_lemma22_numeric(Rational(2), Rational(1), Rational(0), Rational(0),
                                            Rational(0));
        }).exit_code == 64);  // (lambda, mu) = (0, 0)

  CommandOutcome sym = cmd_verify_lemma22_symbolic();
  CHECK(sym.exit_code == 0);
  CHECK(verify_transcript(sym.transcript.to_json()).empty());

  CommandOutcome samples = cmd_verify_lemma22_samples(10, 123);
  CHECK(samples.exit_code == 0);
}

TEST_CASE("transcript re-verifier flags corrupted data") {
  CommandOutcome solved = cmd_solve(ProblemFile::from_json(worked_split_json()));
  Json t = solved.transcript.to_json();
  CHECK(verify_transcript(t).empty());
  // Corrupt the solution.
  for (auto& step : t.at("steps")) {
    if (step.value("kind", "") == "x-solution") step["t"] = "17";
  }
  CHECK(!verify_transcript(t).empty());

  CommandOutcome vt = cmd_verify_transcript(t);
  CHECK(vt.exit_code == 1);
}

TEST_CASE("transcript re-verifier catches assorted corruptions") {
  CommandOutcome solved = cmd_solve(ProblemFile::from_json(worked_split_json()));
  Json base = solved.transcript.to_json();
  REQUIRE(verify_transcript(base).empty());

  auto corrupt = [&](const std::string& kind, const std::string& key, const Json& value) {
    Json t = base;
    for (auto& step : t.at("steps")) {
      if (step.value("kind", "") == kind) step[key] = value;
    }
    return verify_transcript(t);
  };
  CHECK(!corrupt("forms", "u", "13").empty());
  CHECK(!corrupt("forms", "g1", "y1*y2").empty());
  CHECK(!corrupt("fiber", "x", Json::array({"1", "0", "0", "0"})).empty());
  CHECK(!corrupt("fiber", "rho", Json::array({"2", "0"})).empty());
  CHECK(!corrupt("sqrt-witness", "coords", Json::array({"1", "0", "0", "0"})).empty());

  CommandOutcome torsor = cmd_torsor(ProblemFile::from_json(worked_split_json()),
                                     std::nullopt, 2, 5);
  Json tt = torsor.transcript.to_json();
  REQUIRE(verify_transcript(tt).empty());
  for (auto& step : tt.at("steps")) {
    if (step.value("kind", "") == "torsor-point") step["t"] = "99";
  }
  CHECK(!verify_transcript(tt).empty());
}

TEST_CASE("corpus: record then run is clean; corruption is caught") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "normeq_corpus_test";
  fs::remove_all(dir);
  fs::create_directories(dir / "problems");

  {
    std::ofstream f(dir / "problems" / "solve_worked.json");
    f << Json{{"command", "solve"}, {"problem", worked_split_json()}}.dump(2);
  }
  {
    std::ofstream f(dir / "problems" / "lemma.json");
    f << Json{{"command", "verify-lemma22"}, {"a", "2"}, {"u", "3"}, {"v", "0"},
              {"lambda", "1"}, {"mu", "0"}}
             .dump(2);
  }

  CommandOutcome rec = cmd_corpus(dir.string(), /*record=*/true);
  CHECK(rec.exit_code == 0);
  CommandOutcome run = cmd_corpus(dir.string(), /*record=*/false);
  CHECK(run.exit_code == 0);

  // Corrupt one golden file: nonzero exit naming the test.
  {
    std::ofstream f(dir / "golden" / "lemma.json");
    f << "{}";
  }
  CommandOutcome broken = cmd_corpus(dir.string(), /*record=*/false);
  CHECK(broken.exit_code == 1);
  CHECK(broken.text.find("lemma.json") != std::string::npos);

  CHECK(run_guarded("corpus", [&] {
          return cmd_corpus((dir / "missing").string(), false);
        }).exit_code == 64);
  fs::remove_all(dir);
}

TEST_CASE("norm-form and solve-conic and sqrt-in-field commands") {
  CommandOutcome nf = cmd_norm_form({Rational(-2), Rational(0), Rational(1)});
  CHECK(nf.text == "z1^2 + -2*z2^2");
  CHECK(verify_transcript(nf.transcript.to_json()).empty());

  CommandOutcome conic = cmd_solve_conic(Rational(1), Rational(-2), Rational(-7));
  CHECK(conic.exit_code == 0);
  CHECK(verify_transcript(conic.transcript.to_json()).empty());
  CommandOutcome bad_conic = cmd_solve_conic(Rational(1), Rational(1), Rational(7));
  CHECK(bad_conic.exit_code == 10);
  CHECK(verify_transcript(bad_conic.transcript.to_json()).empty());

  CommandOutcome sq = cmd_sqrt_in_field(Rational(2), {Rational(1), Rational(0), Rational(-10),
                                                      Rational(0), Rational(1)});
  CHECK(sq.exit_code == 0);
  CHECK(verify_transcript(sq.transcript.to_json()).empty());
  CommandOutcome absent = cmd_sqrt_in_field(Rational(5), {Rational(-2), Rational(0), Rational(1)});
  CHECK(absent.exit_code == 0);
  CHECK(absent.text.find("not in the field") != std::string::npos);
}
