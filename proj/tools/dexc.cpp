// Command line front end.  Exit codes: 0 when every check passes, 1 when
// a check fails, 2 for usage and parse problems.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dexc/demo.hpp"

namespace {

std::string default_data_dir() {
#ifdef DEXC_DATA_DIR
  return DEXC_DATA_DIR;
#else
  return "data";
#endif
}

bool structured_format(const std::string& f) { return f == "structured"; }

dexc::BatteryScale scale_of(const std::string& b) {
  return b == "small" ? dexc::BatteryScale::small : dexc::BatteryScale::full;
}

dexc::DecoratedSpec load_spec(const std::string& path) {
  dexc::DecoratedSpec s = dexc::parse_spec(dexc::read_file(path));
  auto violations = dexc::check_wellformed(s);
  if (!violations.empty()) {
    std::string all;
    for (const auto& v : violations) all += v + "\n";
    throw std::runtime_error(path + " is not well formed:\n" + all);
  }
  return s;
}

dexc::FiniteModel load_model(const dexc::DecoratedSpec& s,
                             const std::string& path) {
  dexc::FiniteModel m = dexc::parse_model(s, dexc::read_file(path));
  auto violations = dexc::validate_model(s, m);
  if (!violations.empty()) {
    std::string all;
    for (const auto& v : violations) all += v + "\n";
    throw std::runtime_error(path + " is not a model of the spec:\n" + all);
  }
  return m;
}

int emit(const dexc::RunReport& r, const std::string& format) {
  std::fputs(dexc::render_report(r, structured_format(format)).c_str(),
             stdout);
  return r.ok() ? 0 : 1;
}

int cmd_check(const std::string& spec_path,
              const std::vector<std::string>& proof_paths,
              const std::string& format) {
  dexc::DecoratedSpec s = load_spec(spec_path);
  dexc::RunReport r;
  r.command = "check";
  std::vector<dexc::NamedDerivation> prior;
  for (const auto& path : proof_paths) {
    auto blocks = dexc::parse_proofs(s, dexc::read_file(path), prior);
    for (auto& b : blocks) {
      dexc::CheckResult res = dexc::check_derivation(s, b.deriv);
      dexc::ReportItem it;
      it.id = "check." + b.name;
      it.anchor = dexc::print_judgment(b.deriv->concl);
      it.pass = res.ok;
      if (!res.ok) {
        it.node = res.path;
        it.rule = res.rule;
        it.message = res.reason;
      }
      r.items.push_back(std::move(it));
      prior.push_back(std::move(b));
    }
  }
  return emit(r, format);
}

int cmd_expand(const std::string& spec_path, const std::string& format) {
  dexc::DecoratedSpec s = load_spec(spec_path);
  dexc::ExplicitSpec x = dexc::expand_spec(s);
  if (!structured_format(format)) {
    std::fputs(dexc::print_explicit_spec(x).c_str(), stdout);
    return 0;
  }
  nlohmann::json doc;
  doc["command"] = "expand";
  doc["spec"] = x.name;
  doc["types"] = x.bases;
  doc["ops"] = nlohmann::json::array();
  for (const auto& g : x.sig)
    doc["ops"].push_back({{"name", g.name},
                          {"src", dexc::print_type(g.src)},
                          {"tgt", dexc::print_type(g.tgt)}});
  doc["exceptions"] = nlohmann::json::array();
  for (const auto& e : x.excs)
    doc["exceptions"].push_back(
        {{"index", e.index}, {"param", dexc::print_type(e.param)}});
  doc["axioms"] = nlohmann::json::array();
  for (const auto& a : x.axioms)
    doc["axioms"].push_back({{"name", a.name},
                             {"lhs", dexc::print_term(a.eq.lhs)},
                             {"rhs", dexc::print_term(a.eq.rhs)}});
  std::fputs((doc.dump(2) + "\n").c_str(), stdout);
  return 0;
}

int cmd_eval(const std::string& spec_path, const std::string& model_path,
             const std::string& term_text, const std::string& value_text,
             const std::string& format) {
  dexc::DecoratedSpec s = load_spec(spec_path);
  dexc::FiniteModel m = load_model(s, model_path);
  dexc::TermPtr t = dexc::parse_term(s, term_text);
  dexc::parsing::Lex lx(value_text, 1);
  dexc::Value in = dexc::parse_value(s, lx, t->src);
  lx.expect_done();
  dexc::Value out = dexc::eval_decorated(s, m, t, in);
  if (!structured_format(format)) {
    std::printf("%s\n", dexc::print_value(out).c_str());
    return 0;
  }
  nlohmann::json doc;
  doc["command"] = "eval";
  doc["term"] = dexc::print_term(t);
  doc["input"] = dexc::print_value(in);
  doc["value"] = dexc::print_value(out);
  std::fputs((doc.dump(2) + "\n").c_str(), stdout);
  return 0;
}

int cmd_equiv(const std::string& spec_path, const std::string& model_path,
              const std::string& eq_text, const std::string& format) {
  dexc::DecoratedSpec s = load_spec(spec_path);
  dexc::FiniteModel m = load_model(s, model_path);
  dexc::parsing::Lex lx(eq_text, 1);
  dexc::Judgment j = dexc::parsing::parse_judgment(s, lx);
  if (j.k != dexc::Judgment::K::eq)
    throw dexc::ParseError(1, "equiv expects an equation, not a declaration");
  dexc::RunReport r;
  r.command = "equiv";
  dexc::ReportItem it;
  it.id = "equiv";
  it.anchor = dexc::print_equation(j.eq) + " in " + m.name;
  dexc::Value w, lv, rv;
  it.pass = dexc::oracle_holds(s, m, j.eq, &w, &lv, &rv);
  if (!it.pass) it.witness = dexc::suite::eq_witness(j.eq, w, lv, rv);
  r.items.push_back(std::move(it));
  return emit(r, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for a decorated logic of exceptions"};
  app.require_subcommand(1);

  std::string spec_path, model_path, format = "human", battery = "full";
  std::vector<std::string> proof_paths;
  std::string term_text, value_text, eq_text, demo_name;
  std::string report_format = "structured";

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "human or structured output")
        ->check(CLI::IsMember({"human", "structured"}));
  };
  auto add_battery = [&](CLI::App* c) {
    c->add_option("--battery", battery, "battery scale")
        ->check(CLI::IsMember({"small", "full"}));
  };

  CLI::App* check = app.add_subcommand("check", "check proof scripts");
  check->add_option("--spec", spec_path, "specification file")->required();
  check
      ->add_option("--proof", proof_paths,
                   "proof script; repeat to let later files use earlier ones")
      ->required();
  add_format(check);

  CLI::App* expand =
      app.add_subcommand("expand", "translate a spec to its explicit form");
  expand->add_option("--spec", spec_path, "specification file")->required();
  add_format(expand);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a term in a model");
  eval->add_option("--spec", spec_path, "specification file")->required();
  eval->add_option("--model", model_path, "model file")->required();
  eval->add_option("term", term_text, "decorated term")->required();
  eval->add_option("value", value_text, "input value")->required();
  add_format(eval);

  CLI::App* equiv =
      app.add_subcommand("equiv", "check an equation in a model");
  equiv->add_option("--spec", spec_path, "specification file")->required();
  equiv->add_option("--model", model_path, "model file")->required();
  equiv->add_option("equation", eq_text, "lhs ~ rhs or lhs == rhs")
      ->required();
  add_format(equiv);

  CLI::App* demo = app.add_subcommand("demo", "run a shipped suite");
  demo->add_option("name", demo_name, "logic or exceptions")->required();
  add_format(demo);
  add_battery(demo);

  CLI::App* report =
      app.add_subcommand("report", "run the full suite and print the report");
  report->add_option("format", report_format, "human or structured")
      ->check(CLI::IsMember({"human", "structured"}));
  add_battery(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check))
      return cmd_check(spec_path, proof_paths, format);
    if (app.got_subcommand(expand)) return cmd_expand(spec_path, format);
    if (app.got_subcommand(eval))
      return cmd_eval(spec_path, model_path, term_text, value_text, format);
    if (app.got_subcommand(equiv))
      return cmd_equiv(spec_path, model_path, eq_text, format);
    if (app.got_subcommand(demo))
      return emit(dexc::run_demo(demo_name, default_data_dir(),
                                 scale_of(battery)),
                  format);
    if (app.got_subcommand(report))
      return emit(dexc::demo_logic(default_data_dir(), scale_of(battery)),
                  report_format);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
