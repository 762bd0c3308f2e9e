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
//
// Command-line front end: norm-form, solve, torsor, verify-lemma22,
// sqrt-in-field, solve-conic, corpus, verify-transcript.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "normeq/commands.hpp"

namespace {

using normeq::Budgets;
using normeq::CommandOutcome;
using normeq::Json;
using normeq::ProblemFile;
using normeq::Rational;

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    out.push_back(Rational::parse(tok));
  }
  return out;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw normeq::domain_error("cannot open " + path);
  return Json::parse(in);
}

int emit(const CommandOutcome& out, const std::string& output_mode) {
  if (output_mode == "json") {
    std::cout << out.transcript.to_json().dump(2) << "\n";
  } else {
    if (!out.text.empty()) std::cout << out.text << "\n";
    std::cout << "verdict: " << out.transcript.verdict << "\n";
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver and torsor toolkit for quadratic-polynomial norm equations"};
  app.require_subcommand(1);

  std::string output_mode = "text";
  std::string budget_file;
  std::uint64_t seed = 1;
  app.add_option("--output", output_mode, "output format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget-file", budget_file, "JSON file with budget overrides");
  app.add_option("--seed", seed,
                 "seed for randomized property sampling (never affects returned solutions)");

  auto base_budgets = [&]() {
    Budgets b;
    if (!budget_file.empty()) b = normeq::budgets_from_json(load_json(budget_file), b);
    return b;
  };
  auto load_problem = [&](const std::string& path) {
    Json j = load_json(path);
    if (j.contains("problem")) j = j.at("problem");  // corpus-entry shape
    ProblemFile pf = ProblemFile::from_json(j);
    Budgets base = base_budgets();
    pf.budgets = j.contains("budgets") ? normeq::budgets_from_json(j.at("budgets"), base) : base;
    return pf;
  };

  // norm-form
  std::string nf_minpoly;
  auto* nf = app.add_subcommand("norm-form", "print the norm form of a number field");
  nf->add_option("--minpoly", nf_minpoly, "minimal polynomial coefficients, constant first")
      ->required();

  // solve
  std::string solve_path;
  auto* sv = app.add_subcommand("solve", "solve P(t) = N_K/Q(z)");
  sv->add_option("problem", solve_path, "problem description file")->required();

  // torsor
  std::string torsor_path, splitting_path;
  unsigned sample_points = 0;
  auto* to = app.add_subcommand("torsor", "build the universal torsor description");
  to->add_option("problem", torsor_path, "problem description file")->required();
  to->add_option("--splitting", splitting_path, "JSON file with {rho, xi} coordinates");
  to->add_option("--sample-points", sample_points, "emit this many sampled torsor points");

  // verify-lemma22
  bool lemma_symbolic = false;
  unsigned lemma_samples = 0;
  std::string la, lu, lv, llambda, lmu;
  auto* lm = app.add_subcommand("verify-lemma22", "check the rank-4 relative norm form facts");
  lm->add_flag("--symbolic", lemma_symbolic, "print the symbolic forms");
  lm->add_option("--samples", lemma_samples, "verify this many randomized instances");
  lm->add_option("--a", la, "a (non-square)");
  lm->add_option("--u", lu, "u");
  lm->add_option("--v", lv, "v");
  lm->add_option("--lambda", llambda, "lambda");
  lm->add_option("--mu", lmu, "mu");

  // sqrt-in-field
  std::string sq_a, sq_minpoly;
  auto* sq = app.add_subcommand("sqrt-in-field", "find sqrt(a) inside a number field");
  sq->add_option("--a", sq_a, "rational a")->required();
  sq->add_option("--minpoly", sq_minpoly, "minimal polynomial coefficients, constant first")
      ->required();

  // solve-conic
  std::string conic_coeffs;
  auto* sc = app.add_subcommand("solve-conic", "solve a x^2 + b y^2 + c z^2 = 0");
  sc->add_option("--coeffs", conic_coeffs, "three rational coefficients a,b,c")->required();

  // corpus
  std::string corpus_dir;
  bool corpus_record = false;
  auto* co = app.add_subcommand("corpus", "run or record the golden transcript corpus");
  co->add_option("dir", corpus_dir, "corpus directory (problems/ and golden/)")->required();
  co->add_flag("--record", corpus_record, "rewrite the golden transcripts");

  // verify-transcript
  std::string vt_path;
  auto* vt = app.add_subcommand("verify-transcript", "re-check every identity in a transcript");
  vt->add_option("transcript", vt_path, "transcript JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  CommandOutcome out = normeq::run_guarded(
      app.get_subcommands().front()->get_name(), [&]() -> CommandOutcome {
        if (nf->parsed()) return normeq::cmd_norm_form(parse_rational_list(nf_minpoly));
        if (sv->parsed()) return normeq::cmd_solve(load_problem(solve_path));
        if (to->parsed()) {
          std::optional<Json> splitting;
          if (!splitting_path.empty()) splitting = load_json(splitting_path);
          return normeq::cmd_torsor(load_problem(torsor_path), splitting, sample_points, seed);
        }
        if (lm->parsed()) {
          if (lemma_symbolic) return normeq::cmd_verify_lemma22_symbolic();
          if (lemma_samples > 0) return normeq::cmd_verify_lemma22_samples(lemma_samples, seed);
          return normeq::cmd_verify_lemma22_numeric(
              Rational::parse(la), Rational::parse(lu), Rational::parse(lv),
              Rational::parse(llambda), Rational::parse(lmu));
        }
        if (sq->parsed()) {
          return normeq::cmd_sqrt_in_field(Rational::parse(sq_a),
                                           parse_rational_list(sq_minpoly));
        }
        if (sc->parsed()) {
          std::vector<Rational> cs = parse_rational_list(conic_coeffs);
          if (cs.size() != 3) throw normeq::domain_error("--coeffs needs exactly three entries");
          return normeq::cmd_solve_conic(cs[0], cs[1], cs[2]);
        }
        if (co->parsed()) return normeq::cmd_corpus(corpus_dir, corpus_record);
        if (vt->parsed()) return normeq::cmd_verify_transcript(load_json(vt_path));
        throw normeq::domain_error("no subcommand");
      });
  return emit(out, output_mode);
}
