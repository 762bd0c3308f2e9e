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

#include "normeq/commands.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace normeq {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

Json x_solution_step(const XSolution& xs) {
  return Json{{"kind", "x-solution"},
              {"t", xs.t().str()},
              {"z_coords", rationals_to_json(xs.z().coords())}};
}

Json verification_of(const NormEquationProblem& p, const XSolution& xs) {
  return Json{{"identity", "P(t) = N_K/Q(z)"},
              {"lhs", p.eval_P(xs.t()).str()},
              {"rhs", absolute_norm(xs.z()).str()}};
}

std::vector<std::string> lemma_names() { return {"y1", "y2", "y3", "y4", "a", "u", "v"}; }

Json splitting_step(const SplittingDatum& s) {
  return Json{{"kind", "splitting"},
              {"rho_coords", rationals_to_json(s.rho().coords())},
              {"xi_coords", rationals_to_json(s.xi().coords())}};
}

std::string equation_text(const SplitTorsor&, const Rational& a) {
  return "t - s = rho * N_K/L(x1) * sigma(N_K/L(x2)) over L = Q[s]/(s^2 - (" + a.str() + "))";
}

std::string equation_text(const InertTorsor&, const Rational& a) {
  return "t - s = rho * N_F/L(x) with F = K(sqrt(" + a.str() + ")), L = Q[s]/(s^2 - (" + a.str() +
         "))";
}

void finish(CommandOutcome& out, Clock::time_point start) {
  out.transcript.wall_time_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

CommandOutcome run_guarded(const std::string& command,
                           const std::function<CommandOutcome()>& body) {
  try {
    return body();
  } catch (const unsupported_error& e) {
    CommandOutcome out;
    out.transcript.command = command;
    out.transcript.verdict = "unsupported";
    out.transcript.steps.push_back(Json{{"kind", "error"}, {"message", e.what()}});
    out.exit_code = exit_code_for_verdict("unsupported");
    out.text = std::string("unsupported: ") + e.what();
    return out;
  } catch (const budget_error& e) {
    CommandOutcome out;
    out.transcript.command = command;
    out.transcript.verdict = "budget-exhausted";
    out.transcript.steps.push_back(Json{{"kind", "error"}, {"message", e.what()}});
    out.exit_code = exit_code_for_verdict("budget-exhausted");
    out.text = std::string("budget exhausted: ") + e.what();
    return out;
  } catch (const std::exception& e) {
    CommandOutcome out;
    out.transcript.command = command;
    out.transcript.verdict = "input-error";
    out.transcript.steps.push_back(Json{{"kind", "error"}, {"message", e.what()}});
    out.exit_code = exit_code_for_verdict("input-error");
    out.text = std::string("error: ") + e.what();
    return out;
  }
}

CommandOutcome cmd_norm_form(const std::vector<Rational>& minpoly) {
  auto start = Clock::now();
  NumberField K = NumberField::create(UniPoly(minpoly));
  MultiPoly form = norm_form(K);
  CommandOutcome out;
  out.transcript.command = "norm-form";
  out.transcript.inputs = Json{{"minpoly", rationals_to_json(minpoly)}};
  out.transcript.steps.push_back(Json{
      {"kind", "norm-form"}, {"minpoly", rationals_to_json(minpoly)}, {"form", form.str()}});
  out.transcript.verdict = "ok";
  out.exit_code = 0;
  out.text = form.str();
  finish(out, start);
  return out;
}

CommandOutcome cmd_solve(const ProblemFile& pf) {
  auto start = Clock::now();
  CommandOutcome out;
  out.transcript.command = "solve";
  out.transcript.inputs = Json{{"problem", pf.to_json()}};

  NormEquationProblem p = pf.build();
  bool quartic_split_path = false;
  std::optional<FieldElement> witness;
  if (!p.is_general() && p.K().degree() == 4) {
    witness = pf.witness(p.K());
    if (!witness) witness = sqrt_in_field(p.a(), p.K());
    quartic_split_path = witness.has_value();
  }

  if (quartic_split_path) {
    out.transcript.steps.push_back(Json{{"kind", "sqrt-witness"},
                                        {"a", p.a().str()},
                                        {"coords", rationals_to_json(witness->coords())}});
    QuarticPipelineRun run = solve_quartic_split(p, witness);
    if (run.conic_certificate) {
      out.transcript.steps.push_back(Json{{"kind", "conic-obstruction"},
                                          {"coeffs", rationals_to_json({Rational(1), -p.a(),
                                                                        -p.c()})},
                                          {"place", run.conic_certificate->place.str()},
                                          {"note", run.conic_certificate->note}});
    } else {
      out.transcript.steps.push_back(
          Json{{"kind", "forms"},
               {"a", p.a().str()},
               {"u", run.u.str()},
               {"v", run.v.str()},
               {"sqrt_coords", rationals_to_json(witness->coords())},
               {"beta_coords", rationals_to_json(run.beta->coords())},
               {"g0", run.g0->str(lemma_names())},
               {"g1", run.g1->str(lemma_names())}});
      for (const auto& attempt : run.attempts) {
        if (attempt.x) {
          Json step{{"kind", "fiber"},
                    {"w_coords", rationals_to_json(attempt.w.coords())},
                    {"rho", rationals_to_json({attempt.rho0, attempt.rho1})},
                    {"f0", serialize_form(attempt.f0)},
                    {"f1", serialize_form(attempt.f1)},
                    {"x", rationals_to_json(*attempt.x)}};
          if (run.solution) step["t"] = run.solution->t().str();
          out.transcript.steps.push_back(std::move(step));
        } else if (attempt.certificate) {
          out.transcript.steps.push_back(Json{{"kind", "fiber-obstruction"},
                                              {"w_coords", rationals_to_json(attempt.w.coords())},
                                              {"f1", serialize_form(attempt.f1)},
                                              {"place", attempt.certificate->place.str()},
                                              {"note", attempt.certificate->note}});
        } else {
          out.transcript.steps.push_back(Json{
              {"kind", "fiber-budget"}, {"w_coords", rationals_to_json(attempt.w.coords())}});
        }
      }
    }
    switch (run.status) {
      case QuarticPipelineRun::Status::solved: {
        out.transcript.steps.push_back(x_solution_step(*run.solution));
        out.transcript.verdict = "solved";
        out.transcript.verification = verification_of(p, *run.solution);
        out.text = "solved: t = " + run.solution->t().str() +
                   ", z = " + run.solution->z().str();
        break;
      }
      case QuarticPipelineRun::Status::local_obstruction: {
        out.transcript.verdict = "local-obstruction";
        std::string where = run.obstruction ? run.obstruction->place.str() : "?";
        out.text = "local obstruction at " + where +
                   (run.conic_certificate ? " (conic)" : " (fiber)");
        break;
      }
      case QuarticPipelineRun::Status::budget_exhausted: {
        out.transcript.verdict = "budget-exhausted";
        out.text = "budget exhausted in the fiber search";
        break;
      }
    }
    out.exit_code = exit_code_for_verdict(out.transcript.verdict);
    finish(out, start);
    return out;
  }

  // Enumeration fallback.
  std::vector<XSolution> sols = solve_by_enumeration(p);
  out.transcript.steps.push_back(Json{{"kind", "enumeration"},
                                      {"height", p.budgets().enum_height},
                                      {"count", sols.size()}});
  std::size_t listed = 0;
  for (const auto& s : sols) {
    if (listed++ >= 16) break;
    out.transcript.steps.push_back(x_solution_step(s));
  }
  if (!sols.empty()) {
    out.transcript.verdict = "solved";
    out.transcript.verification = verification_of(p, sols.front());
    out.text = "solved by enumeration: " + std::to_string(sols.size()) + " solution(s), first t = " +
               sols.front().t().str();
  } else {
    out.transcript.verdict = "no-solution";
    out.text = "no solution found within the enumeration budget";
  }
  out.exit_code = exit_code_for_verdict(out.transcript.verdict);
  finish(out, start);
  return out;
}

CommandOutcome cmd_torsor(const ProblemFile& pf, const std::optional<Json>& splitting,
                          unsigned sample_points, std::uint64_t seed) {
  auto start = Clock::now();
  CommandOutcome out;
  out.transcript.command = "torsor";
  out.transcript.inputs = Json{{"problem", pf.to_json()}};
  if (splitting) out.transcript.inputs["splitting"] = *splitting;

  NormEquationProblem p = pf.build();

  if (p.is_general()) {
    std::optional<GeneralSplittingData> data;
    if (splitting) {
      GeneralSplittingData d{{}, p.K().element(rationals_from_json(splitting->at("xi")))};
      Factorization fac = factor_over_Q(p.polynomial());
      const Json& rhos = splitting->at("rhos");
      for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        NumberField Li = NumberField::create(fac.factors[i].first);
        d.rhos.push_back(Li.element(rationals_from_json(rhos.at(i))));
      }
      data = std::move(d);
    }
    GeneralTorsor model = build_general_torsor(p, data);
    Json factors = Json::array();
    Json rhos = Json::array();
    for (const auto& f : model.factors) {
      std::string shape = f.L_i.degree() == 1 ? "linear"
                          : std::holds_alternative<GeneralFactor::QuadSplit>(f.algebra)
                              ? "quadratic-split"
                              : "quadratic-inert";
      factors.push_back(Json{{"poly", rationals_to_json(f.P_i.coeffs())},
                             {"multiplicity", f.multiplicity},
                             {"case", shape}});
      rhos.push_back(rationals_to_json(f.rho.coords()));
    }
    out.transcript.steps.push_back(Json{{"kind", "torsor-case"},
                                        {"case", "general"},
                                        {"constant", model.c.str()},
                                        {"factors", factors}});
    out.transcript.steps.push_back(Json{{"kind", "splitting-general"},
                                        {"rhos", rhos},
                                        {"xi_coords", rationals_to_json(model.xi.coords())}});
    out.transcript.verdict = "ok";
    out.exit_code = 0;
    out.text = "general torsor with " + std::to_string(model.factors.size()) + " factor(s)";
    finish(out, start);
    return out;
  }

  std::optional<SplittingDatum> datum;
  if (splitting) {
    datum = SplittingDatum::create(p, p.L().element(rationals_from_json(splitting->at("rho"))),
                                   p.K().element(rationals_from_json(splitting->at("xi"))));
  } else {
    SplittingSearchReport report = solve_splitting(p);
    if (!report.datum) {
      out.transcript.verdict = "budget-exhausted";
      Json obstructions = Json::array();
      for (const auto& cert : report.obstructions) {
        obstructions.push_back(Json{{"place", cert.place.str()}, {"note", cert.note}});
      }
      out.transcript.steps.push_back(Json{{"kind", "splitting-search-exhausted"},
                                          {"nodes", report.nodes},
                                          {"obstructions", obstructions}});
      out.exit_code = exit_code_for_verdict(out.transcript.verdict);
      out.text = "no splitting datum found within the budget";
      finish(out, start);
      return out;
    }
    datum = report.datum;
  }
  out.transcript.steps.push_back(splitting_step(*datum));

  TorsorModel model = build_torsor(p, *datum, pf.witness(p.K()));
  if (const auto* sm = std::get_if<SplitTorsor>(&model)) {
    out.transcript.steps.push_back(Json{{"kind", "torsor-case"},
                                        {"case", "split"},
                                        {"equation", equation_text(*sm, p.a())},
                                        {"sqrt_coords",
                                         rationals_to_json(sm->sqrt_a.coords())}});
    out.text = "split torsor";
  } else if (const auto* im = std::get_if<InertTorsor>(&model)) {
    out.transcript.steps.push_back(Json{{"kind", "torsor-case"},
                                        {"case", "inert"},
                                        {"equation", equation_text(*im, p.a())},
                                        {"F", "K(sqrt(" + p.a().str() + "))"}});
    out.text = "inert torsor, F = K(sqrt(" + p.a().str() + "))";
  }

  if (sample_points > 0) {
    std::vector<TorsorPoint> pts = sample_torsor_points(model, sample_points, seed);
    for (const auto& tp : pts) {
      XSolution xs = torsor_to_X(model, tp);
      Json step;
      if (const auto* sp = std::get_if<SplitPoint>(&tp)) {
        step = Json{{"kind", "torsor-point"},
                    {"case", "split"},
                    {"t", sp->t.str()},
                    {"x1_coords", rationals_to_json(sp->x1.coords())},
                    {"x2_coords", rationals_to_json(sp->x2.coords())}};
      } else {
        const auto& ip = std::get<InertPoint>(tp);
        step = Json{{"kind", "torsor-point"},
                    {"case", "inert"},
                    {"t", ip.t.str()},
                    {"x0_coords", rationals_to_json(ip.x.x0.coords())},
                    {"x1_coords", rationals_to_json(ip.x.x1.coords())}};
      }
      step["x_solution"] =
          Json{{"t", xs.t().str()}, {"z_coords", rationals_to_json(xs.z().coords())}};
      out.transcript.steps.push_back(std::move(step));
    }
  }

  out.transcript.verdict = "ok";
  out.exit_code = 0;
  finish(out, start);
  return out;
}

CommandOutcome cmd_verify_lemma22_numeric(const Rational& a, const Rational& u, const Rational& v,
                                          const Rational& lambda, const Rational& mu) {
  auto start = Clock::now();
  if (rational_sqrt(a)) throw domain_error("a must not be a square");
  if (lambda.is_zero() && mu.is_zero()) throw domain_error("(lambda, mu) = (0, 0) is excluded");

  auto [g0s, g1s] = relative_norm_form_symbolic();
  std::vector<MultiPoly> point;
  for (unsigned i = 0; i < 4; ++i) point.push_back(MultiPoly::variable(4, i));
  point.push_back(MultiPoly::constant(4, a));
  point.push_back(MultiPoly::constant(4, u));
  point.push_back(MultiPoly::constant(4, v));
  MultiPoly g0 = g0s.compose(point);
  MultiPoly g1 = g1s.compose(point);
  QuadraticForm f = QuadraticForm::from_poly(lambda * g0 + mu * g1);
  Diagonalization d = rank_and_diagonalize(f);
  Rational q0_disc = f.block(0, 2).det();
  Rational q1_disc = f.block(2, 4).det();
  bool ok = d.rank == 4 && q0_disc == lambda * lambda * a - mu * mu &&
            q1_disc == -(lambda * lambda * a - mu * mu) * (v * v * a - u * u);
  // The (y1, y2) block must not interact with (y3, y4).
  for (unsigned i = 0; i < 2 && ok; ++i) {
    for (unsigned j = 2; j < 4; ++j) {
      if (!f.gram(i, j).is_zero()) ok = false;
    }
  }

  CommandOutcome out;
  out.transcript.command = "verify-lemma22";
  out.transcript.inputs = Json{{"a", a.str()},
                               {"u", u.str()},
                               {"v", v.str()},
                               {"lambda", lambda.str()},
                               {"mu", mu.str()}};
  out.transcript.steps.push_back(Json{{"kind", "lemma22-numeric"},
                                      {"a", a.str()},
                                      {"u", u.str()},
                                      {"v", v.str()},
                                      {"lambda", lambda.str()},
                                      {"mu", mu.str()},
                                      {"form", serialize_form(f)},
                                      {"rank", d.rank},
                                      {"q0_disc", q0_disc.str()},
                                      {"q1_disc", q1_disc.str()}});
  out.transcript.verdict = ok ? "ok" : "input-error";
  out.exit_code = ok ? 0 : 70;
  std::ostringstream os;
  os << "rank " << d.rank << ", disc(q0) = " << q0_disc.str() << ", disc(q1) = " << q1_disc.str();
  out.text = os.str();
  finish(out, start);
  return out;
}

CommandOutcome cmd_verify_lemma22_symbolic() {
  auto start = Clock::now();
  auto [g0, g1] = relative_norm_form_symbolic();
  CommandOutcome out;
  out.transcript.command = "verify-lemma22";
  out.transcript.inputs = Json{{"mode", "symbolic"}};
  out.transcript.steps.push_back(Json{{"kind", "lemma22-symbolic"},
                                      {"g0", g0.str(lemma_names())},
                                      {"g1", g1.str(lemma_names())}});
  out.transcript.verdict = "ok";
  out.exit_code = 0;
  out.text = "g0 = " + g0.str(lemma_names()) + "\ng1 = " + g1.str(lemma_names());
  finish(out, start);
  return out;
}

CommandOutcome cmd_verify_lemma22_samples(unsigned count, std::uint64_t seed) {
  auto start = Clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> small(-9, 9);
  static const long non_squares[] = {2, 3, 5, 6, 7, -1, -2, -3, 10, 11};
  unsigned done = 0;
  CommandOutcome out;
  out.transcript.command = "verify-lemma22";
  out.transcript.inputs = Json{{"mode", "samples"}, {"count", count}, {"seed", seed}};
  while (done < count) {
    Rational a(non_squares[rng() % 10]);
    Rational u(small(rng)), v(small(rng));
    Rational lambda(small(rng)), mu(small(rng));
    if (u.is_zero() && v.is_zero()) continue;
    if (lambda.is_zero() && mu.is_zero()) continue;
    CommandOutcome one = cmd_verify_lemma22_numeric(a, u, v, lambda, mu);
    if (one.exit_code != 0) {
      out.transcript.verdict = "input-error";
      out.exit_code = 70;
      out.text = "identity failed at sample " + std::to_string(done);
      finish(out, start);
      return out;
    }
    ++done;
  }
  out.transcript.steps.push_back(Json{{"kind", "lemma22-samples"}, {"count", count}});
  out.transcript.verdict = "ok";
  out.exit_code = 0;
  out.text = std::to_string(count) + " randomized instances verified";
  finish(out, start);
  return out;
}

CommandOutcome cmd_sqrt_in_field(const Rational& a, const std::vector<Rational>& minpoly) {
  auto start = Clock::now();
  NumberField K = NumberField::create(UniPoly(minpoly));
  std::optional<FieldElement> root = sqrt_in_field(a, K);
  CommandOutcome out;
  out.transcript.command = "sqrt-in-field";
  out.transcript.inputs = Json{{"a", a.str()}, {"minpoly", rationals_to_json(minpoly)}};
  Json step{{"kind", "sqrt-result"}, {"a", a.str()}};
  if (root) {
    step["coords"] = rationals_to_json(root->coords());
    out.text = "sqrt(" + a.str() + ") = " + root->str();
  } else {
    step["absent"] = true;
    out.text = "sqrt(" + a.str() + ") is not in the field";
  }
  // Make the problem's field available to the re-verifier.
  out.transcript.inputs["problem"] =
      Json{{"field", Json{{"minpoly", rationals_to_json(minpoly)}}},
           {"polynomial", Json{{"c", "1"}, {"a", a.str()}}}};
  out.transcript.steps.push_back(std::move(step));
  out.transcript.verdict = "ok";
  out.exit_code = 0;
  finish(out, start);
  return out;
}

CommandOutcome cmd_solve_conic(const Rational& a, const Rational& b, const Rational& c) {
  auto start = Clock::now();
  ConicOutcome conic = solve_conic(a, b, c);
  CommandOutcome out;
  out.transcript.command = "solve-conic";
  out.transcript.inputs =
      Json{{"coeffs", rationals_to_json({a, b, c})}};
  if (conic.solvable) {
    std::vector<Rational> pt;
    for (const auto& x : conic.point) pt.push_back(Rational(x));
    out.transcript.steps.push_back(Json{{"kind", "conic-point"},
                                        {"coeffs", rationals_to_json({a, b, c})},
                                        {"point", rationals_to_json(pt)}});
    out.transcript.verdict = "solved";
    out.text = "point (" + pt[0].str() + ", " + pt[1].str() + ", " + pt[2].str() + ")";
  } else {
    out.transcript.steps.push_back(Json{{"kind", "conic-obstruction"},
                                        {"coeffs", rationals_to_json({a, b, c})},
                                        {"place", conic.certificate->place.str()},
                                        {"note", conic.certificate->note}});
    out.transcript.verdict = "local-obstruction";
    out.text = "insolvable: " + conic.certificate->describe();
  }
  out.exit_code = exit_code_for_verdict(out.transcript.verdict);
  finish(out, start);
  return out;
}

CommandOutcome cmd_verify_transcript(const Json& transcript) {
  auto start = Clock::now();
  std::vector<std::string> failures = verify_transcript(transcript);
  CommandOutcome out;
  out.transcript.command = "verify-transcript";
  out.transcript.inputs = Json{{"command", transcript.value("command", "")}};
  Json fj = Json::array();
  for (const auto& f : failures) fj.push_back(f);
  out.transcript.steps.push_back(Json{{"kind", "reverify"},
                                      {"checked_steps",
                                       transcript.contains("steps") ? transcript.at("steps").size()
                                                                    : 0},
                                      {"failures", fj}});
  out.transcript.verdict = failures.empty() ? "ok" : "input-error";
  out.exit_code = failures.empty() ? 0 : 1;
  if (failures.empty()) {
    out.text = "transcript verifies";
  } else {
    std::ostringstream os;
    os << failures.size() << " failure(s):";
    for (const auto& f : failures) os << "\n  " << f;
    out.text = os.str();
  }
  finish(out, start);
  return out;
}

// ---------------------------------------------------------------------------
// Corpus runner.

namespace {

CommandOutcome run_corpus_entry(const Json& doc) {
  const std::string command = doc.value("command", "solve");
  return run_guarded(command, [&]() -> CommandOutcome {
    if (command == "solve") return cmd_solve(ProblemFile::from_json(doc.at("problem")));
    if (command == "torsor") {
      std::optional<Json> splitting;
      if (doc.contains("splitting")) splitting = doc.at("splitting");
      return cmd_torsor(ProblemFile::from_json(doc.at("problem")), splitting,
                        doc.value("sample_points", 0u), doc.value("seed", 1ull));
    }
    if (command == "norm-form") return cmd_norm_form(rationals_from_json(doc.at("minpoly")));
    if (command == "sqrt-in-field") {
      return cmd_sqrt_in_field(Rational::parse(doc.at("a").get<std::string>()),
                               rationals_from_json(doc.at("minpoly")));
    }
    if (command == "solve-conic") {
      std::vector<Rational> cs = rationals_from_json(doc.at("coeffs"));
      return cmd_solve_conic(cs[0], cs[1], cs[2]);
    }
    if (command == "verify-lemma22") {
      if (doc.value("mode", "") == "symbolic") return cmd_verify_lemma22_symbolic();
      return cmd_verify_lemma22_numeric(Rational::parse(doc.at("a").get<std::string>()),
                                        Rational::parse(doc.at("u").get<std::string>()),
                                        Rational::parse(doc.at("v").get<std::string>()),
                                        Rational::parse(doc.at("lambda").get<std::string>()),
                                        Rational::parse(doc.at("mu").get<std::string>()));
    }
    throw domain_error("unknown corpus command: " + command);
  });
}

}  // namespace

CommandOutcome cmd_corpus(const std::string& dir, bool record) {
  auto start = Clock::now();
  CommandOutcome out;
  out.transcript.command = "corpus";
  out.transcript.inputs = Json{{"dir", dir}, {"mode", record ? "record" : "run"}};

  fs::path problems = fs::path(dir) / "problems";
  fs::path golden = fs::path(dir) / "golden";
  if (!fs::is_directory(problems)) {
    throw domain_error("corpus directory not found: " + problems.string());
  }
  if (record) fs::create_directories(golden);

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(problems)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  unsigned mismatches = 0;
  std::ostringstream diff;
  for (const auto& file : files) {
    std::ifstream in(file);
    Json doc = Json::parse(in);
    CommandOutcome one = run_corpus_entry(doc);
    std::string rendered = one.transcript.to_json(/*include_wall_time=*/false).dump(2) + "\n";
    fs::path gfile = golden / file.filename();
    if (record) {
      std::ofstream g(gfile);
      g << rendered;
      out.transcript.steps.push_back(
          Json{{"kind", "corpus-record"}, {"name", file.filename().string()}});
      continue;
    }
    std::string expected;
    {
      std::ifstream g(gfile);
      if (!g) {
        ++mismatches;
        diff << file.filename().string() << ": missing golden file\n";
        continue;
      }
      std::ostringstream ss;
      ss << g.rdbuf();
      expected = ss.str();
    }
    // Every corpus transcript must also pass the standalone re-verifier.
    std::vector<std::string> reverify = verify_transcript(one.transcript.to_json(false));
    if (!reverify.empty()) {
      ++mismatches;
      diff << file.filename().string() << ": transcript fails re-verification: " << reverify.front()
           << "\n";
    }
    if (expected != rendered) {
      ++mismatches;
      diff << file.filename().string() << ": transcript differs from golden\n";
      // First differing line, for the summary.
      std::istringstream ea(expected), eb(rendered);
      std::string la, lb;
      int line = 1;
      while (std::getline(ea, la) && std::getline(eb, lb)) {
        if (la != lb) {
          diff << "  line " << line << ": expected '" << la << "' got '" << lb << "'\n";
          break;
        }
        ++line;
      }
    }
    out.transcript.steps.push_back(Json{{"kind", "corpus-run"},
                                        {"name", file.filename().string()},
                                        {"match", expected == rendered}});
  }

  if (record) {
    out.transcript.verdict = "ok";
    out.exit_code = 0;
    out.text = "recorded " + std::to_string(files.size()) + " golden transcript(s)";
  } else if (mismatches == 0) {
    out.transcript.verdict = "ok";
    out.exit_code = 0;
    out.text = std::to_string(files.size()) + " corpus transcript(s) match";
  } else {
    out.transcript.verdict = "input-error";
    out.exit_code = 1;
    out.text = std::to_string(mismatches) + " mismatch(es):\n" + diff.str();
  }
  finish(out, start);
  return out;
}

}  // namespace normeq
