#pragma once

// Command-line driver. `run` is the whole program; tools/ppdiv.cpp only
// forwards argv, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 domain error, 2 parse error, 3 a golden check failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ppdiv/downgrade.hpp"
#include "ppdiv/fixtures_kr.hpp"
#include "ppdiv/quotients.hpp"
#include "ppdiv/session.hpp"

namespace ppdiv::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kParseError = 2;
inline constexpr int kCheckFailed = 3;

struct Check {
  std::string name;
  bool passed;
};

/// One command's outcome. Text mode prints `lines` and the checks; JSON mode
/// prints {operation, inputs, result, checks} built from the same strings.
struct Report {
  std::string operation;
  Json inputs = Json::object();
  Json result;
  std::vector<std::string> lines;
  std::vector<Check> checks;
  bool golden = false;  // print PASS/FAIL and fail the exit code on a failed check

  void check(std::string name, bool passed) { checks.push_back({std::move(name), passed}); }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline void print(const Report& r, bool json, std::ostream& out) {
  if (json) {
    Json j;
    j["operation"] = r.operation;
    j["inputs"] = r.inputs;
    j["result"] = r.result;
    j["checks"] = Json::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}});
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& l : r.lines) out << l << "\n";
  for (const auto& c : r.checks) out << (c.passed ? "[ok] " : "[FAIL] ") << c.name << "\n";
  if (r.golden) out << (r.passed() ? "PASS" : "FAIL") << "\n";
}

inline const PPDivisor& lookup_divisor(const Session& s, const std::string& name) {
  if (const PPDivisor* d = s.divisors.find(name)) return *d;
  throw ParseError("unknown divisor '" + name + "'");
}

inline const CoverData& lookup_cover(const Session& s, const std::string& name) {
  if (const CoverData* c = s.covers.find(name)) return *c;
  throw ParseError("unknown cover '" + name + "'");
}

inline IntMatrix parse_lattice_map(const std::string& text) {
  auto t = text::trim(text);
  if (!t.empty() && t.front() == '[') return parse_matrix<Integer>(t);
  return IntMatrix{{parse_integer(t)}};
}

inline Json divisor_json(const Session& s, const PPDivisor& d) {
  Json j = {{"model", s.model_name(d.model())}, {"divisor", format(d)}};
  if (!d.tail().is_zero()) j["tail"] = d.tail().to_string();
  return j;
}

inline std::string witness_text(const Equivalence& e, const YModel& model) {
  std::string divs;
  for (std::size_t j = 0; j < e.difference.size(); ++j) divs += (j ? "; " : "") + format(e.difference[j], &model);
  if (!e.witness) return "none registered (principal difference " + divs + ")";
  return "div(" + format(*e.witness) + ") = " + divs;
}

inline Report cmd_downgrade(const Session& s, const std::string& weights, const std::string& labels,
                            const std::string& model_name) {
  Report r;
  r.operation = "downgrade";
  WeightData w;
  std::string model = model_name;
  if (const NamedWeights* nw = s.weights.find(weights)) {
    w = nw->data;
    if (model.empty()) model = nw->model;
  } else {
    w.F = parse_matrix<Integer>(weights);
  }
  if (!labels.empty())
    for (auto entry : text::split_top(labels, ',')) {
      auto colon = entry.find(':');
      if (colon == std::string_view::npos) throw ParseError("label entries look like 3:E");
      w.ray_labels[static_cast<std::size_t>(parse_integer(entry.substr(0, colon)))] =
          PrimeLabel{std::string(entry.substr(colon + 1))};
    }
  r.inputs = {{"weights", format(w.F)}, {"model", model}};
  DowngradeResult d = downgrade(w);
  Json rays = Json::array();
  r.lines.push_back("P = " + format(d.seq.P));
  r.lines.push_back("s = " + format(d.seq.s));
  r.lines.push_back("sigma = " + d.sigma.to_string());
  for (const auto& ray : d.rays) {
    Json cols = Json::array();
    std::string col_text;
    for (auto c : ray.columns) {
      cols.push_back(c);
      col_text += (col_text.empty() ? "" : ",") + std::to_string(c);
    }
    rays.push_back({{"v", format_tuple(ray.v)}, {"columns", cols}, {"polytope", format_coefficient(ray.polytope)}});
    r.lines.push_back("ray " + format_tuple(ray.v) + " coordinate " + col_text + ": " + format_coefficient(ray.polytope));
  }
  r.result = {{"P", format(d.seq.P)}, {"s", format(d.seq.s)}, {"sigma", d.sigma.to_string()}, {"rays", rays}};
  if (!model.empty()) {
    PPDivisor assembled = assemble(d, w.ray_labels, s.model(model));
    r.result["divisor"] = format(assembled);
    r.lines.push_back("divisor = " + format(assembled));
  }
  r.check("P*F == 0", d.seq.P * d.seq.F == IntMatrix(d.seq.P.rows(), d.seq.F.cols()));
  r.check("s*F == id", (d.seq.s * to_rational(d.seq.F)).is_identity());
  return r;
}

inline Report cmd_eval(const Session& s, const std::string& name, const std::string& weight) {
  Report r;
  r.operation = "eval";
  const PPDivisor& d = lookup_divisor(s, name);
  RatVector u = parse_weight(weight);
  r.inputs = {{"divisor", name}, {"u", format_tuple(u)}};
  std::string value = format(evaluate(d, u), d.model().get());
  r.result = value;
  r.lines.push_back(value);
  return r;
}

inline Report divisor_report(const Session& s, std::string op, Json inputs, const PPDivisor& d) {
  Report r;
  r.operation = std::move(op);
  r.inputs = std::move(inputs);
  r.result = divisor_json(s, d);
  r.lines.push_back(format(d));
  if (!d.tail().is_zero()) r.lines.push_back("tail = " + d.tail().to_string());
  return r;
}

inline Report cmd_push(const Session& s, const std::string& name, const std::string& map, const std::string& tail) {
  const PPDivisor& d = lookup_divisor(s, name);
  IntMatrix f = parse_lattice_map(map);
  Cone target = tail.empty() ? d.tail().image(f) : parse_cone(tail, f.rows());
  return divisor_report(s, "push", {{"divisor", name}, {"F", format(f)}, {"tail", target.to_string()}},
                        pushforward(f, d, target));
}

inline Report cmd_pull(const Session& s, const std::string& cover, const std::string& name) {
  return divisor_report(s, "pull", {{"cover", cover}, {"divisor", name}},
                        pullback(lookup_cover(s, cover), lookup_divisor(s, name)));
}

inline Report cmd_descend(const Session& s, const std::string& cover, const std::string& name) {
  const CoverData& c = lookup_cover(s, cover);
  const PPDivisor& d = lookup_divisor(s, name);
  PPDivisor down = quotient_effective(d, c);
  Report r = divisor_report(s, "descend", {{"cover", cover}, {"divisor", name}}, down);
  r.check("pullback round trip", pullback(c, down) == d);
  return r;
}

inline Report cmd_quotient_torus(const Session& s, const std::string& name, const std::string& order,
                                 const std::string& weight) {
  const PPDivisor& d = lookup_divisor(s, name);
  Integer n = parse_integer(order);
  RatVector w = parse_weight(weight);
  IntVector wi;
  for (const auto& x : w) {
    if (!is_integral(x)) throw ParseError("character weights are integers");
    wi.push_back(numerator(x));
  }
  return divisor_report(s, "quotient-torus", {{"divisor", name}, {"order", n.str()}, {"weight", format_tuple(wi)}},
                        quotient_torus_subgroup(d, n, wi));
}

inline Report cmd_equiv(const Session& s, const std::string& a, const std::string& b) {
  Report r;
  r.operation = "equiv";
  r.inputs = {{"d1", a}, {"d2", b}};
  const PPDivisor& d1 = lookup_divisor(s, a);
  const PPDivisor& d2 = lookup_divisor(s, b);
  Equivalence e = linearly_equivalent(d1, d2);
  Json result = {{"equivalent", e.equivalent}};
  if (e.equivalent) {
    std::string w = witness_text(e, *d1.model());
    result["witness"] = e.witness ? Json(format(*e.witness)) : Json(nullptr);
    Json diffs = Json::array();
    for (const auto& diff : e.difference) diffs.push_back(format(diff, d1.model().get()));
    result["difference"] = diffs;
    r.lines.push_back("EQUIVALENT, witness: " + w);
  } else {
    result["reason"] = e.reason;
    r.lines.push_back("NOT EQUIVALENT: " + e.reason);
  }
  result["principality_supplied"] = e.principality_supplied;
  if (e.principality_supplied) r.lines.push_back("note: principality rests on weights supplied with the model");
  r.result = result;
  return r;
}

inline QuotientStage parse_stage(const Session& s, const std::string& stage_text) {
  auto parts = text::split_top(stage_text, ':');
  if (parts[0] == "torus" && parts.size() == 3) {
    RatVector w = parse_weight(parts[2]);
    IntVector wi;
    for (const auto& x : w) {
      if (!is_integral(x)) throw ParseError("character weights are integers");
      wi.push_back(numerator(x));
    }
    return TorusSubgroupStage{parse_integer(parts[1]), wi};
  }
  if (parts[0] == "effective" && parts.size() == 2) return EffectiveStage{lookup_cover(s, std::string(parts[1]))};
  throw ParseError("stages look like torus:ORDER:WEIGHT or effective:COVER, got '" + stage_text + "'");
}

inline Report cmd_pipeline(const Session& s, const std::string& name, const std::vector<std::string>& stage_texts) {
  Report r;
  r.operation = "pipeline";
  const PPDivisor& d = lookup_divisor(s, name);
  std::vector<QuotientStage> stages;
  Json input_json = Json::array();
  for (const auto& stage_text : stage_texts) {
    stages.push_back(parse_stage(s, stage_text));
    input_json.push_back(stage_text);
  }
  r.inputs = {{"divisor", name}, {"stages", input_json}};
  PipelineResult p = run_pipeline(d, stages);
  Json stage_json = Json::array();
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    const auto& st = p.stages[i];
    stage_json.push_back({{"kind", st.kind},
                          {"description", st.description},
                          {"output", format(st.output)},
                          {"F", format(st.map.F)},
                          {"valid_map", st.valid}});
    r.lines.push_back("stage " + std::to_string(i + 1) + " " + st.kind + " (" + st.description +
                      ", F = " + format(st.map.F) + "): " + format(st.output));
    r.check("stage " + std::to_string(i + 1) + " map triple valid", st.valid);
  }
  r.result = {{"divisor", format(p.result)}, {"stages", stage_json}};
  r.lines.push_back("result = " + format(p.result));
  return r;
}

inline Report cmd_check(const Session& s, const std::string& name) {
  Report r;
  r.operation = "check";
  r.inputs = {{"divisor", name}};
  const PPDivisor& d = lookup_divisor(s, name);
  ValidityReport v = validity_report(d);
  r.result = {{"pointed", v.pointed},
              {"shared_tail", v.shared_tail},
              {"labels_known", v.labels_known},
              {"effective_primes", v.effective_primes},
              {"semiample", std::string(to_string(v.semiample))},
              {"big", std::string(to_string(v.big))},
              {"notes", v.notes}};
  auto yes = [](bool b) { return std::string(b ? "true" : "false"); };
  r.lines = {"pointed: " + yes(v.pointed),
             "shared_tail: " + yes(v.shared_tail),
             "labels_known: " + yes(v.labels_known),
             "effective_primes: " + yes(v.effective_primes),
             "semiample: " + std::string(to_string(v.semiample)),
             "big: " + std::string(to_string(v.big))};
  for (const auto& n : v.notes) r.lines.push_back("note: " + n);
  return r;
}

inline Report cmd_kr_cubic(const Session& s) {
  Report r;
  r.operation = "kr cubic";
  r.golden = true;
  const ModelRef* session_model = s.models.find("russell");
  kr::RussellCubic c = session_model ? kr::russell_cubic(*session_model) : kr::russell_cubic();
  const PPDivisor* golden = s.divisors.find("cubic");
  const PPDivisor& expected = golden ? *golden : c.expected;
  r.inputs = {{"golden", golden ? "fixtures: cubic" : "built-in"}};
  r.result = {{"divisor", format(c.reconstructed)},
              {"mu2", format(c.mu2.result)},
              {"mu3", format(c.mu3.result)},
              {"witness2", c.eq2.equivalent ? witness_text(c.eq2, *c.model) : ""},
              {"witness3", c.eq3.equivalent ? witness_text(c.eq3, *c.model) : ""}};
  r.lines.push_back(format(c.reconstructed));
  r.lines.push_back("2D = " + format(c.mu2.result) + " ~ " + format(c.d2) +
                    (c.eq2.equivalent ? ", witness: " + witness_text(c.eq2, *c.model) : ""));
  r.lines.push_back("3D = " + format(c.mu3.result) + " ~ " + format(c.d3) +
                    (c.eq3.equivalent ? ", witness: " + witness_text(c.eq3, *c.model) : ""));
  r.check("reconstruction equals golden", c.reconstructed == expected);
  r.check("D2 + D == D3", add(c.d2, c.reconstructed) == c.d3);
  r.check("2D ~ D2 with witness", c.eq2.equivalent && c.eq2.witness.has_value());
  r.check("3D ~ D3 with witness", c.eq3.equivalent && c.eq3.witness.has_value());
  r.check("map triples valid", c.mu2.all_valid() && c.mu3.all_valid());
  return r;
}

// Golden divisors shipped in fixtures are named after their parameters, e.g.
// first_3_2_3 or second_2_2_3_5; a missing golden only skips that check.
inline void golden_check(Report& r, const Session& s, const std::string& name, const PPDivisor& value) {
  if (const PPDivisor* g = s.divisors.find(name)) r.check("matches fixture " + name, *g == value);
}

inline Report cmd_kr_first(const Session& s, const std::vector<std::string>& args) {
  if (args.size() != 3) throw ParseError("usage: kr first D ALPHA2 ALPHA3");
  kr::FirstKindParams p{parse_integer(args[0]), parse_integer(args[1]), parse_integer(args[2])};
  kr::FirstKind f = kr::first_kind(p);
  Report r;
  r.operation = "kr first";
  r.golden = true;
  r.inputs = {{"d", p.d.str()}, {"alpha2", p.alpha2.str()}, {"alpha3", p.alpha3.str()}};
  r.result = {{"a", f.ab.a.str()},
              {"b", f.ab.b.str()},
              {"cover", format(f.cover_divisor)},
              {"descended", format(f.pipeline.result)}};
  r.lines.push_back("(a,b) = (" + f.ab.a.str() + "," + f.ab.b.str() + ")");
  r.lines.push_back("cover: " + format(f.cover_divisor));
  r.lines.push_back("descended: " + format(f.pipeline.result));
  r.check("cover divisor matches closed form", f.cover_divisor == f.expected_cover);
  r.check("descended divisor matches closed form", f.pipeline.result == f.expected_descended);
  r.check("pullback round trip", f.round_trip);
  r.check("map triple valid", f.pipeline.all_valid());
  golden_check(r, s, "first_" + p.d.str() + "_" + p.alpha2.str() + "_" + p.alpha3.str(), f.pipeline.result);
  return r;
}

inline Report cmd_kr_second(const Session& s, const std::vector<std::string>& args) {
  if (args.size() != 4) throw ParseError("usage: kr second D L ALPHA2 ALPHA3");
  kr::SecondKindParams p{parse_integer(args[0]), parse_integer(args[1]), parse_integer(args[2]),
                         parse_integer(args[3])};
  kr::SecondKind f = kr::second_kind(p);
  Report r;
  r.operation = "kr second";
  r.golden = true;
  r.inputs = {{"d", p.d.str()}, {"l", p.l.str()}, {"alpha2", p.alpha2.str()}, {"alpha3", p.alpha3.str()}};
  r.result = {{"a", f.ab.a.str()},
              {"b", f.ab.b.str()},
              {"a_prime", f.a_prime.str()},
              {"b_prime", f.b_prime.str()},
              {"cover", format(f.cover_divisor)},
              {"middle", format(f.middle())},
              {"final", format(f.final_divisor())}};
  r.lines.push_back("(a,b) = (" + f.ab.a.str() + "," + f.ab.b.str() + "), (a',b') = (" + f.a_prime.str() + "," +
                    f.b_prime.str() + ")");
  r.lines.push_back("cover: " + format(f.cover_divisor));
  r.lines.push_back("middle: " + format(f.middle()));
  r.lines.push_back("final: " + format(f.final_divisor()));
  r.check("cover divisor matches closed form", f.cover_divisor == f.expected_cover);
  r.check("middle divisor matches closed form", f.middle() == f.expected_middle);
  r.check("final divisor matches closed form", f.final_divisor() == f.expected_final);
  r.check("pullback round trips", f.round_trip_middle && f.round_trip_final);
  r.check("map triples valid", f.pipeline.all_valid());
  golden_check(r, s, "second_" + p.d.str() + "_" + p.l.str() + "_" + p.alpha2.str() + "_" + p.alpha3.str(),
               f.final_divisor());
  return r;
}

inline std::string default_fixture_dir() {
#ifdef PPDIV_FIXTURE_DIR
  return PPDIV_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polyhedral divisors, downgrades and cyclic quotients with exact arithmetic", "ppdiv"};
  app.require_subcommand(1);
  std::string format_opt = "text";
  std::vector<std::string> session_files;
  std::string fixture_dir = default_fixture_dir();
  bool no_fixtures = false;
  app.add_option("--format", format_opt, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--session", session_files, "Extra session file (repeatable)");
  app.add_option("--fixtures", fixture_dir, "Directory of *.session files loaded first");
  app.add_flag("--no-fixtures", no_fixtures, "Do not load the fixture directory");

  std::string a1, a2, a3, labels, model, tail;
  std::vector<std::string> rest;

  auto* downgrade_cmd = app.add_subcommand("downgrade", "Downgrade a linear torus action given by weights");
  downgrade_cmd->add_option("weights", a1, "Weights name or matrix literal")->required();
  downgrade_cmd->add_option("--labels", labels, "Ray labels, e.g. 3:E,4:D");
  downgrade_cmd->add_option("--model", model, "Model used to assemble the pp-divisor");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate D(u)");
  eval_cmd->add_option("divisor", a1)->required();
  eval_cmd->add_option("u", a2, "Weight, e.g. 6 or (1,2)")->required();

  auto* push_cmd = app.add_subcommand("push", "Push forward along a lattice map");
  push_cmd->add_option("divisor", a1)->required();
  push_cmd->add_option("F", a2, "Matrix literal, or an integer in rank one")->required();
  push_cmd->add_option("--tail", tail, "Target tail cone (default F(tail))");

  auto* pull_cmd = app.add_subcommand("pull", "Pull back along a cover");
  pull_cmd->add_option("cover", a1)->required();
  pull_cmd->add_option("divisor", a2)->required();

  auto* descend_cmd = app.add_subcommand("descend", "Descend along a cover (effective quotient)");
  descend_cmd->add_option("cover", a1)->required();
  descend_cmd->add_option("divisor", a2)->required();

  auto* torus_cmd = app.add_subcommand("quotient-torus", "Quotient by mu_n acting through the torus");
  torus_cmd->add_option("divisor", a1)->required();
  torus_cmd->add_option("order", a2)->required();
  torus_cmd->add_option("weight", a3)->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide linear equivalence, with a witness");
  equiv_cmd->add_option("d1", a1)->required();
  equiv_cmd->add_option("d2", a2)->required();

  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run quotient stages: torus:N:W or effective:COVER");
  pipeline_cmd->add_option("divisor", a1)->required();
  pipeline_cmd->add_option("stages", rest);

  auto* kr_cmd = app.add_subcommand("kr", "Koras-Russell fixtures: cubic | first D A2 A3 | second D L A2 A3");
  kr_cmd->add_option("family", a1)->required()->check(CLI::IsMember({"cubic", "first", "second"}));
  kr_cmd->add_option("params", rest);

  auto* check_cmd = app.add_subcommand("check", "Structural validity report");
  check_cmd->add_option("divisor", a1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  try {
    Session s;
    if (!no_fixtures && std::filesystem::is_directory(fixture_dir)) load_session_dir(fixture_dir, s);
    for (const auto& f : session_files) load_session_file(f, s);

    Report r;
    if (*downgrade_cmd)
      r = cmd_downgrade(s, a1, labels, model);
    else if (*eval_cmd)
      r = cmd_eval(s, a1, a2);
    else if (*push_cmd)
      r = cmd_push(s, a1, a2, tail);
    else if (*pull_cmd)
      r = cmd_pull(s, a1, a2);
    else if (*descend_cmd)
      r = cmd_descend(s, a1, a2);
    else if (*torus_cmd)
      r = cmd_quotient_torus(s, a1, a2, a3);
    else if (*equiv_cmd)
      r = cmd_equiv(s, a1, a2);
    else if (*pipeline_cmd)
      r = cmd_pipeline(s, a1, rest);
    else if (*check_cmd)
      r = cmd_check(s, a1);
    else if (a1 == "cubic")
      r = cmd_kr_cubic(s);
    else if (a1 == "first")
      r = cmd_kr_first(s, rest);
    else
      r = cmd_kr_second(s, rest);
    print(r, format_opt == "json", out);
    return r.passed() ? kOk : kCheckFailed;
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return kDomainError;
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << "\n";
    return kParseError;
  }
}

}  // namespace ppdiv::cli
