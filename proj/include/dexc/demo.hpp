#pragma once
// The two shipped suites.  "logic" runs the whole workbench end to end:
// the derivation scripts through the kernel, the constitutive equations
// through the model oracle, the rule obligations, the specification
// translation, decorated-against-explicit evaluation, handler batteries
// against the reference semantics, and a randomized soundness fuzz.
// "exceptions" prints the one- and two-clause handler unfoldings and the
// differential summary.  Both are deterministic item lists.

#include <string>
#include <utility>
#include <vector>

#include "dexc/battery.hpp"
#include "dexc/correspond.hpp"
#include "dexc/expand_rules.hpp"
#include "dexc/library.hpp"
#include "dexc/report.hpp"

namespace dexc {

enum class BatteryScale { small, full };

inline const char* scale_name(BatteryScale sc) {
  return sc == BatteryScale::small ? "small" : "full";
}

namespace suite {

inline std::string eq_witness(const Equation& e, const Value& at,
                              const Value& lv, const Value& rv) {
  return print_equation(e) + " at " + print_value(at) + ": " +
         print_value(lv) + " vs " + print_value(rv);
}

inline std::string corr_witness(const CorrespondenceFailure& f) {
  return f.item + " at " + print_value(f.input) + ": decorated " +
         print_value(f.decorated) + ", explicit " + print_value(f.expanded);
}

inline std::string clause_label(const std::vector<CatchClause>& clauses,
                                const std::string& block) {
  std::string l = "try " + block + " catch(";
  for (size_t i = 0; i < clauses.size(); ++i) {
    if (i) l += " | ";
    l += std::to_string(clauses[i].index) + " => " +
         print_term(clauses[i].body);
  }
  return l + ")";
}

// Every shipped derivation, one item per proof block.
inline void add_library_items(const std::vector<CheckedProof>& lib,
                              std::vector<ReportItem>& out) {
  for (const auto& cp : lib) {
    ReportItem it;
    it.id = "library." + cp.name;
    it.anchor = cp.file + ": " + print_judgment(cp.concl);
    it.pass = cp.ok;
    if (!cp.ok) {
      it.node = cp.result.path;
      it.rule = cp.result.rule;
      it.message = cp.result.reason;
    }
    out.push_back(std::move(it));
  }
}

// The constitutive equations of the tag family, checked by the oracle in
// every model over carriers 0..3 for one, two and three indices.
inline void add_tags_oracle_items(std::vector<ReportItem>& out) {
  for (int n = 1; n <= 3; ++n) {
    DecoratedSpec ts = tags_only_spec(n);
    ReportItem it;
    it.id = "tags.oracle.I" + std::to_string(n);
    it.anchor = "untag after tag, and untags commuting; |I| = " +
                std::to_string(n) + ", carriers 0..3";
    long models = 0;
    for_each_model(ts, 3, [&](const FiniteModel& m) {
      ++models;
      auto check = [&](const Equation& e) {
        Value w, lv, rv;
        if (oracle_holds(ts, m, e, &w, &lv, &rv)) return true;
        it.pass = false;
        it.witness =
            "model #" + std::to_string(models) + ": " + eq_witness(e, w, lv, rv);
        return false;
      };
      for (int i = 1; i <= n; ++i) {
        if (!check(untag_tag_equation(ts, i))) return false;
        for (int j = 1; j <= n; ++j)
          if (j != i && !check(untag_commute_equation(ts, i, j))) return false;
      }
      return true;
    });
    if (it.pass)
      it.witness = std::to_string(models) + " models, every instance holds";
    out.push_back(std::move(it));
  }
}

// One item per inference rule of the decorated logic.
inline void add_rule_items(std::vector<ReportItem>& out) {
  for (const auto& ob : expand_all_rules()) {
    ReportItem it;
    it.id = "rules." + ob.rule;
    it.anchor = ob.instance;
    it.pass = ob.discharged;
    it.witness = ob.method + ": " + ob.detail;
    out.push_back(std::move(it));
  }
}

// Spec translation: the expansion must coincide with the directly built
// explicit counterpart, on the shipped specs and on generated ones.
inline void add_translate_items(const std::vector<DecoratedSpec>& shipped,
                                int generated, std::vector<ReportItem>& out) {
  for (const auto& sp : shipped) {
    ReportItem it;
    it.id = "translate." + sp.name;
    it.anchor = "expansion equals the direct explicit construction";
    it.pass = explicit_spec_eq(expand_spec(sp), direct_explicit_spec(sp));
    out.push_back(std::move(it));
  }
  ReportItem it;
  it.id = "translate.generated";
  it.anchor = std::to_string(generated) +
              " generated signatures, expansion equals the direct explicit "
              "construction";
  std::mt19937 rng = seeded(4);
  for (int i = 0; i < generated && it.pass; ++i) {
    DecoratedSpec g = random_pure_spec(rng, i);
    if (!explicit_spec_eq(expand_spec(g), direct_explicit_spec(g))) {
      it.pass = false;
      it.witness = "signature " + g.name + " disagrees";
    }
  }
  out.push_back(std::move(it));
}

// Decorated evaluation against explicit evaluation of the expansion, over
// the whole term battery, one item per model.
inline void add_commute_items(const DecoratedSpec& s,
                              const std::vector<FiniteModel>& models,
                              TermBatteryOptions opt,
                              std::vector<ReportItem>& out) {
  auto terms = term_battery(s, opt);
  for (const auto& m : models) {
    ReportItem it;
    it.id = "commute." + s.name + "." + m.name;
    it.anchor = std::to_string(terms.size()) + " terms to depth " +
                std::to_string(opt.max_depth);
    CorrespondenceReport rep;
    for (const auto& t : terms)
      if (!detail::corresponds(s, m, t, print_term(t), rep)) break;
    it.pass = rep.ok();
    it.witness = it.pass
                     ? std::to_string(rep.points) + " points agree"
                     : corr_witness(*rep.failure);
    out.push_back(std::move(it));
  }
}

// The pointwise model correspondence for the signature and the canonical
// derived operations, plus the corrupted-model control that must fail.
inline void add_correspondence_items(const DecoratedSpec& s,
                                     const std::vector<FiniteModel>& models,
                                     std::vector<ReportItem>& out) {
  for (const auto& m : models) {
    auto rep = correspondence_check(s, m);
    ReportItem it;
    it.id = "correspondence." + s.name + "." + m.name;
    it.anchor = "signature, tags, untags, raises and handler chains";
    it.pass = rep.ok();
    it.witness = it.pass ? std::to_string(rep.items) + " operations, " +
                               std::to_string(rep.points) + " points agree"
                         : corr_witness(*rep.failure);
    out.push_back(std::move(it));
  }
  FiniteModel bad = models.front();
  bad.name = "corrupted";
  bad.corrupt_untag = s.excs.front().index;
  auto rep = correspondence_check(s, bad);
  ReportItem it;
  it.id = "correspondence." + s.name + ".corrupted-control";
  it.anchor = "a corrupted untag interpretation must be caught";
  it.pass = !rep.ok();
  if (rep.failure) it.witness = "caught: " + corr_witness(*rep.failure);
  out.push_back(std::move(it));
}

// Differential handler testing: the built try-catch, read both through
// decorated evaluation and through its expansion, against the reference
// semantics, exhaustively over models and clause lists.
inline void add_handler_items(BatteryScale sc, std::vector<ReportItem>& out) {
  int max_carrier = sc == BatteryScale::full ? 2 : 1;
  for (const DecoratedSpec& hs : {handler_spec_unit(), handler_spec_params()}) {
    TermPtr f = hs.find_gen("f");
    struct Built {
      std::vector<CatchClause> clauses;
      TermPtr t, xt;
      std::string label;
    };
    std::vector<Built> built;
    for (auto& cl : handler_clause_lists(hs, 3)) {
      TermPtr t = build_try_catch(hs, f, cl);
      built.push_back({cl, t, expand_term(hs, t), clause_label(cl, "f")});
    }
    ReportItem it;
    it.id = "handler." + hs.name;
    it.anchor = "carriers <=" + std::to_string(max_carrier) + ", " +
                std::to_string(built.size()) +
                " clause lists to length 3 with duplicates";
    long models = 0, points = 0;
    for_each_model(hs, max_carrier, [&](const FiniteModel& m) {
      ++models;
      for (const auto& b : built)
        for (const auto& x : values_of(hs, m, f->src)) {
          Value ref = java_reference_eval(hs, m, f, b.clauses, x);
          Value dec = eval_decorated(hs, m, b.t, x);
          Value exp = eval_explicit(hs, m, b.xt, x);
          ++points;
          if (!value_eq(dec, ref) || !value_eq(detail::as_sum(ref), exp)) {
            it.pass = false;
            it.witness = "model #" + std::to_string(models) + ", " + b.label +
                         " at " + print_value(x) + ": decorated " +
                         print_value(dec) + ", explicit " + print_value(exp) +
                         ", reference " + print_value(ref);
            return false;
          }
        }
      return true;
    });
    if (it.pass)
      it.witness = std::to_string(models) + " models, " +
                   std::to_string(points) +
                   " points, both readings match the reference";
    out.push_back(std::move(it));
  }
}

// Soundness fuzz: every kernel-accepted equation from the scripts must
// hold in each randomized model, and the weak/strong distinction must be
// witnessed (the recovery axiom holds weakly, fails strongly).
inline void add_fuzz_items(const DecoratedSpec& s,
                           const std::vector<CheckedProof>& lib, int n_models,
                           std::vector<ReportItem>& out) {
  auto models = random_models(s, n_models, 21, 3);
  for (const auto& cp : lib) {
    if (cp.concl.k != Judgment::K::eq) continue;
    ReportItem it;
    it.id = "fuzz." + cp.name;
    it.anchor = print_equation(cp.concl.eq) + " across " +
                std::to_string(n_models) + " random models";
    for (const auto& m : models) {
      Value w, lv, rv;
      if (!oracle_holds(s, m, cp.concl.eq, &w, &lv, &rv)) {
        it.pass = false;
        it.witness = m.name + ": " + eq_witness(cp.concl.eq, w, lv, rv);
        break;
      }
    }
    out.push_back(std::move(it));
  }
  int i0 = s.excs.front().index;
  Equation weak{Strength::weak, comp(s.untag(i0), s.tag(i0)),
                id(s.find_exc(i0)->param)};
  Equation strong{Strength::strong, weak.lhs, weak.rhs};
  ReportItem it;
  it.id = "fuzz.separation";
  it.anchor = print_equation(weak) + " holds everywhere, " +
              print_equation(strong) + " must fail somewhere";
  bool strong_failed = false;
  for (const auto& m : models) {
    Value w, lv, rv;
    if (!oracle_holds(s, m, weak, &w, &lv, &rv)) {
      it.pass = false;
      it.witness = "weak form fails in " + m.name + ": " +
                   eq_witness(weak, w, lv, rv);
      break;
    }
    if (!strong_failed && !oracle_holds(s, m, strong, &w, &lv, &rv)) {
      strong_failed = true;
      it.witness = "strong form fails in " + m.name + " at " +
                   print_value(w) + ": " + print_value(lv) + " vs " +
                   print_value(rv);
    }
  }
  if (it.pass && !strong_failed) {
    it.pass = false;
    it.witness = "no model separated the two strengths";
  }
  out.push_back(std::move(it));
}

}  // namespace suite

inline RunReport demo_logic(const std::string& data_dir, BatteryScale sc) {
  RunReport r;
  r.command = "demo logic";
  r.battery = std::string(battery_version()) + " " + scale_name(sc);
  bool full = sc == BatteryScale::full;

  DecoratedSpec hyp = parse_spec(read_file(data_dir + "/specs/hyp2.dexc"));
  DecoratedSpec calc = parse_spec(read_file(data_dir + "/specs/calc.dexc"));
  auto lib = check_script_library(hyp, data_dir + "/proofs");

  suite::add_library_items(lib, r.items);
  suite::add_tags_oracle_items(r.items);
  suite::add_rule_items(r.items);
  suite::add_translate_items({hyp, calc}, full ? 50 : 10, r.items);

  auto hyp_models = random_models(hyp, full ? 8 : 3, 17, 2);
  hyp_models.insert(
      hyp_models.begin(),
      parse_model(hyp, read_file(data_dir + "/models/hyp2_demo.dmodel")));
  auto calc_models = random_models(calc, full ? 4 : 2, 19, 2);
  calc_models.insert(
      calc_models.begin(),
      parse_model(calc, read_file(data_dir + "/models/calc_three.dmodel")));

  TermBatteryOptions opt{full ? 5 : 4, full ? 24 : 12};
  suite::add_commute_items(hyp, hyp_models, opt, r.items);
  suite::add_commute_items(calc, calc_models, opt, r.items);
  suite::add_correspondence_items(hyp, hyp_models, r.items);
  suite::add_correspondence_items(calc, calc_models, r.items);
  suite::add_handler_items(sc, r.items);
  suite::add_fuzz_items(hyp, lib, full ? 100 : 25, r.items);
  return r;
}

inline RunReport demo_exceptions(const std::string& data_dir,
                                 BatteryScale sc) {
  RunReport r;
  r.command = "demo exceptions";
  r.battery = std::string(battery_version()) + " " + scale_name(sc);
  DecoratedSpec hyp = parse_spec(read_file(data_dir + "/specs/hyp2.dexc"));
  TermPtr f = hyp.find_gen("f");
  std::vector<std::pair<std::string, std::vector<CatchClause>>> cases{
      {"n1", {{1, hyp.find_gen("g1")}}},
      {"n2", {{1, hyp.find_gen("g1")}, {2, hyp.find_gen("g2")}}}};
  for (const auto& [tag, clauses] : cases) {
    TermPtr t = build_try_catch(hyp, f, clauses);
    ReportItem def;
    def.id = "unfold." + tag;
    def.anchor = suite::clause_label(clauses, "f");
    def.witness = print_term(t);
    r.items.push_back(std::move(def));
    ReportItem simp;
    simp.id = "unfold." + tag + ".simplified";
    simp.anchor = "display form, provably equal";
    simp.witness = print_term(simplified_try_catch(hyp, f, clauses));
    r.items.push_back(std::move(simp));
    ReportItem xp;
    xp.id = "unfold." + tag + ".explicit";
    xp.anchor = "expansion";
    xp.witness = print_term(expand_term(hyp, t));
    r.items.push_back(std::move(xp));
  }
  suite::add_handler_items(sc, r.items);
  return r;
}

inline RunReport run_demo(const std::string& name, const std::string& data_dir,
                          BatteryScale sc) {
  if (name == "logic") return demo_logic(data_dir, sc);
  if (name == "exceptions") return demo_exceptions(data_dir, sc);
  throw std::runtime_error("unknown demo \"" + name +
                           "\" (available: logic, exceptions)");
}

}  // namespace dexc
