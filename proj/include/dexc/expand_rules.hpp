#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dexc/expand.hpp"
#include "dexc/kernel.hpp"
#include "dexc/model.hpp"

namespace dexc {

// Every inference rule of the decorated logic owes a debt to the explicit
// logic: expanding a generic instance of the rule has to turn its premises
// into explicit equations that really entail the expanded conclusion.  This
// module states that obligation for each rule and discharges it, either
// syntactically (normalization plus rewriting with the expanded premises)
// or semantically (exhaustive validation over a fixed battery of finite
// models), recording which of the two succeeded.

struct RuleObligation {
  std::string rule;
  std::string instance;                  // the generic instance, readable
  std::vector<std::string> premises;     // expanded premise equations
  std::vector<std::string> conclusions;  // expanded conclusion obligations
  std::string method;                    // "syntactic" or "semantic"
  bool discharged = false;
  std::string detail;
};

// The semantic path quantifies over every model of the instance signature
// whose carriers have size at most battery_max_carrier.  Instances declare
// unit exception parameters, which keeps E small while the operation tables
// still range over all behaviours the rule can distinguish.  The battery
// composition is versioned: reports produced against different versions
// are not comparable.
constexpr int battery_max_carrier = 3;
inline const char* battery_version() { return "battery-v1"; }

namespace detail {

// A generic instance of one rule: a signature of hypothetical operations,
// the premise equations between them, and what the conclusion claims.
// Rules concluding a declaration carry shape equations instead (the
// explicit content of the decoration claim).  Uniqueness rules name the
// operation whose table the premises determine pointwise; the battery
// then enumerates only the remaining tables and fills that one in.
struct RuleInstance {
  DecoratedSpec spec;
  std::vector<Equation> eq_premises;   // decorated
  std::vector<Equation> eq_concls;     // decorated
  std::vector<Equation> shape_concls;  // explicit, for declaration rules
  TermPtr declared;                    // the term a declaration rule forms
  std::string pinned;
  std::function<void(const DecoratedSpec&, FiniteModel&)> pin;
};

inline DecoratedSpec obligation_spec(std::vector<std::string> bases,
                                     std::vector<GenDecl> sig, int excs) {
  std::vector<ExcDecl> es;
  for (int i = 1; i <= excs; ++i) es.push_back({i, ObjType::unit()});
  return make_deco_spec("instance", std::move(bases), std::move(sig),
                        std::move(es));
}

inline std::string describe_instance(const DecoratedSpec& s) {
  std::string d;
  for (const auto& g : s.sig) {
    if (!d.empty()) d += ", ";
    d += g.name + " : " + print_type(g.src) + " -> " + print_type(g.tgt) +
         " [" + print_deco(g.deco) + "]";
  }
  if (d.empty()) d = "no operations";
  return d + "; |I| = " + std::to_string(s.excs.size());
}

// What a decoration claim says once expanded: a propagator leaves
// exceptional inputs untouched, and a pure map additionally factors its
// propagator form through the ordinary injection.  A catcher claim has no
// equational content beyond well-typedness.
inline std::vector<Equation> claim_obligations(const DecoratedSpec& s,
                                               const TermPtr& t, Deco claim) {
  std::vector<Equation> out;
  if (claim == Deco::ctc) return out;
  TermPtr cf = catcher_form(s, t);
  out.push_back({Strength::expl, xcomp(cf, xina(t->src)), xina(t->tgt)});
  if (claim == Deco::pure)
    out.push_back({Strength::expl, xcomp(cf, xin(t->src)),
                   xcomp(xin(t->tgt), pure_form(t))});
  return out;
}

inline RuleInstance rule_instance(const std::string& rule) {
  TypePtr U = ObjType::unit();
  auto base = [](const char* n) { return ObjType::base(n); };
  RuleInstance r;

  // associativity, units and congruence of strong equality
  if (rule.rfind("a.", 0) == 0) {
    TypePtr X = base("X"), Y = base("Y"), Z = base("Z"), W = base("W");
    if (rule == "a.comp" || rule == "a.assoc") {
      std::vector<std::string> bs{"X", "Y", "Z", "W"};
      r.spec = obligation_spec(bs,
                               {{"u", X, Y, Deco::ctc},
                                {"v", Y, Z, Deco::ctc},
                                {"w", Z, W, Deco::ctc}},
                               1);
      TermPtr u = r.spec.find_gen("u"), v = r.spec.find_gen("v"),
              w = r.spec.find_gen("w");
      if (rule == "a.comp") {
        r.declared = comp(v, u);
      } else {
        r.eq_concls.push_back({Strength::strong, comp(w, comp(v, u)),
                               comp(comp(w, v), u)});
      }
      return r;
    }
    if (rule == "a.id") {
      r.spec = obligation_spec({"X"}, {}, 1);
      r.declared = id(X);
      return r;
    }
    std::vector<GenDecl> sig{{"u", X, Y, Deco::ctc}};
    if (rule == "a.sym" || rule == "a.trans" || rule == "a.subst" ||
        rule == "a.repl")
      sig.push_back({"v", X, Y, Deco::ctc});
    if (rule == "a.trans") sig.push_back({"w", X, Y, Deco::ctc});
    if (rule == "a.subst") sig.push_back({"r", W, X, Deco::ctc});
    if (rule == "a.repl") sig.push_back({"r", Y, Z, Deco::ctc});
    r.spec = obligation_spec({"X", "Y", "Z", "W"}, sig, 1);
    TermPtr u = r.spec.find_gen("u");
    TermPtr v = rule == "a.unitr" || rule == "a.unitl" || rule == "a.refl"
                    ? nullptr
                    : r.spec.find_gen("v");
    if (rule == "a.unitr")
      r.eq_concls.push_back({Strength::strong, comp(u, id(X)), u});
    else if (rule == "a.unitl")
      r.eq_concls.push_back({Strength::strong, comp(id(Y), u), u});
    else if (rule == "a.refl")
      r.eq_concls.push_back({Strength::strong, u, u});
    else if (rule == "a.sym") {
      r.eq_premises.push_back({Strength::strong, u, v});
      r.eq_concls.push_back({Strength::strong, v, u});
    } else if (rule == "a.trans") {
      TermPtr w = r.spec.find_gen("w");
      r.eq_premises.push_back({Strength::strong, u, v});
      r.eq_premises.push_back({Strength::strong, v, w});
      r.eq_concls.push_back({Strength::strong, u, w});
    } else if (rule == "a.subst") {
      TermPtr s0 = r.spec.find_gen("r");
      r.eq_premises.push_back({Strength::strong, u, v});
      r.eq_concls.push_back({Strength::strong, comp(u, s0), comp(v, s0)});
    } else if (rule == "a.repl") {
      TermPtr s0 = r.spec.find_gen("r");
      r.eq_premises.push_back({Strength::strong, u, v});
      r.eq_concls.push_back({Strength::strong, comp(s0, u), comp(s0, v)});
    }
    return r;
  }

  // the decoration hierarchy and both congruences of weak equality
  if (rule.rfind("b.", 0) == 0) {
    TypePtr X = base("X"), Y = base("Y"), Z = base("Z"), W = base("W");
    if (rule == "b.toppg" || rule == "b.toctc" || rule == "b.w2s") {
      Deco d0 = rule == "b.toppg" ? Deco::pure : Deco::ppg;
      std::vector<GenDecl> sig{{"f", X, Y, d0}};
      if (rule == "b.w2s") sig.push_back({"g", X, Y, Deco::ppg});
      r.spec = obligation_spec({"X", "Y"}, sig, 1);
      TermPtr f = r.spec.find_gen("f");
      if (rule == "b.toppg") {
        r.declared = f;
        r.shape_concls = claim_obligations(r.spec, f, Deco::ppg);
      } else if (rule == "b.toctc") {
        r.declared = f;
      } else {
        TermPtr g = r.spec.find_gen("g");
        r.eq_premises.push_back({Strength::weak, f, g});
        r.eq_concls.push_back({Strength::strong, f, g});
      }
      return r;
    }
    if (rule == "b.idpure") {
      r.spec = obligation_spec({"X"}, {}, 1);
      r.declared = id(X);
      r.shape_concls = claim_obligations(r.spec, id(X), Deco::pure);
      return r;
    }
    if (rule == "b.comppure" || rule == "b.compppg") {
      Deco d0 = rule == "b.comppure" ? Deco::pure : Deco::ppg;
      r.spec = obligation_spec(
          {"X", "Y", "Z"}, {{"f", X, Y, d0}, {"g", Y, Z, d0}}, 1);
      TermPtr c = comp(r.spec.find_gen("g"), r.spec.find_gen("f"));
      r.declared = c;
      r.shape_concls = claim_obligations(r.spec, c, d0);
      return r;
    }
    std::vector<GenDecl> sig{{"u", X, Y, Deco::ctc}};
    if (rule != "b.wrefl") sig.push_back({"v", X, Y, Deco::ctc});
    if (rule == "b.wtrans") sig.push_back({"w", X, Y, Deco::ctc});
    if (rule == "b.wsubst") sig.push_back({"p", W, X, Deco::pure});
    if (rule == "b.wrepl") sig.push_back({"r", Y, Z, Deco::ctc});
    r.spec = obligation_spec({"X", "Y", "Z", "W"}, sig, 1);
    TermPtr u = r.spec.find_gen("u");
    if (rule == "b.wrefl") {
      r.eq_concls.push_back({Strength::weak, u, u});
      return r;
    }
    TermPtr v = r.spec.find_gen("v");
    if (rule == "b.s2w") {
      r.eq_premises.push_back({Strength::strong, u, v});
      r.eq_concls.push_back({Strength::weak, u, v});
    } else if (rule == "b.wsym") {
      r.eq_premises.push_back({Strength::weak, u, v});
      r.eq_concls.push_back({Strength::weak, v, u});
    } else if (rule == "b.wtrans") {
      TermPtr w = r.spec.find_gen("w");
      r.eq_premises.push_back({Strength::weak, u, v});
      r.eq_premises.push_back({Strength::weak, v, w});
      r.eq_concls.push_back({Strength::weak, u, w});
    } else if (rule == "b.wsubst") {
      TermPtr p = r.spec.find_gen("p");
      r.eq_premises.push_back({Strength::weak, u, v});
      r.eq_concls.push_back({Strength::weak, comp(u, p), comp(v, p)});
    } else if (rule == "b.wrepl") {
      TermPtr s0 = r.spec.find_gen("r");
      r.eq_premises.push_back({Strength::weak, u, v});
      r.eq_concls.push_back({Strength::weak, comp(s0, u), comp(s0, v)});
    }
    return r;
  }

  // downcasting a catcher to its propagator part
  if (rule.rfind("c.", 0) == 0) {
    TypePtr X = base("X"), Y = base("Y");
    r.spec = obligation_spec({"X", "Y"}, {{"k", X, Y, Deco::ctc}}, 1);
    TermPtr k = r.spec.find_gen("k");
    if (rule == "c.form") {
      r.declared = downcast(k);
      r.shape_concls = claim_obligations(r.spec, downcast(k), Deco::ppg);
    } else {
      r.eq_concls.push_back({Strength::weak, downcast(k), k});
    }
    return r;
  }

  // the empty map out of the empty type
  if (rule.rfind("d.", 0) == 0) {
    TypePtr X = base("X"), Y = base("Y");
    if (rule == "d.weak") {
      r.spec = obligation_spec({"X", "Y"},
                               {{"u", ObjType::zero(), Y, Deco::ctc}}, 1);
      r.eq_concls.push_back(
          {Strength::weak, r.spec.find_gen("u"), empty_map(Y)});
      return r;
    }
    r.spec = obligation_spec({"X"}, {}, 1);
    r.declared = empty_map(X);
    if (rule == "d.pure")
      r.shape_concls = claim_obligations(r.spec, empty_map(X), Deco::pure);
    return r;
  }

  // case splitting an ordinary argument against a recovery branch
  if (rule.rfind("e.", 0) == 0) {
    TypePtr X = base("X"), Y = base("Y");
    std::vector<GenDecl> sig{{"g", X, Y, Deco::ppg},
                             {"k", ObjType::zero(), Y, Deco::ctc}};
    if (rule == "e.unique") sig.push_back({"f", X, Y, Deco::ctc});
    r.spec = obligation_spec({"X", "Y"}, sig, 1);
    TermPtr g = r.spec.find_gen("g"), k = r.spec.find_gen("k");
    TermPtr split = cotuple(g, k);
    if (rule == "e.form") {
      r.declared = split;
    } else if (rule == "e.weak") {
      r.eq_concls.push_back({Strength::weak, split, g});
    } else if (rule == "e.strong") {
      r.eq_concls.push_back(
          {Strength::strong, comp(split, empty_map(X)), k});
    } else {
      TermPtr f = r.spec.find_gen("f");
      r.eq_premises.push_back({Strength::weak, f, g});
      r.eq_premises.push_back({Strength::strong, comp(f, empty_map(X)), k});
      r.eq_concls.push_back({Strength::strong, f, split});
      r.pinned = "f";
      r.pin = [](const DecoratedSpec& s, FiniteModel& m) {
        TermPtr g2 = s.find_gen("g"), k2 = s.find_gen("k");
        auto& rows = m.tables["f"];
        for (const auto& x : values_of(s, m, g2->src))
          rows.push_back({x, eval_decorated(s, m, g2, x)});
        for (const auto& e : exception_values(s, m))
          rows.push_back({e, eval_decorated(s, m, k2, e)});
      };
    }
    return r;
  }

  // case splitting the exception type against its tags
  if (rule.rfind("f.", 0) == 0) {
    TypePtr Y = base("Y");
    std::vector<GenDecl> sig{{"m1", U, Y, Deco::ppg}, {"m2", U, Y, Deco::ppg}};
    if (rule == "f.unique") sig.push_back({"F", ObjType::zero(), Y, Deco::ctc});
    r.spec = obligation_spec({"Y"}, sig, 2);
    TermPtr m1 = r.spec.find_gen("m1"), m2 = r.spec.find_gen("m2");
    TermPtr split = tag_cotuple({m1, m2}, r.spec.param_types());
    if (rule == "f.form") {
      r.declared = split;
    } else if (rule == "f.weak") {
      r.eq_concls.push_back({Strength::weak, comp(split, r.spec.tag(1)), m1});
      r.eq_concls.push_back({Strength::weak, comp(split, r.spec.tag(2)), m2});
    } else {
      TermPtr F = r.spec.find_gen("F");
      r.eq_premises.push_back({Strength::weak, comp(F, r.spec.tag(1)), m1});
      r.eq_premises.push_back({Strength::weak, comp(F, r.spec.tag(2)), m2});
      r.eq_concls.push_back({Strength::strong, F, split});
      r.pinned = "F";
      r.pin = [](const DecoratedSpec& s, FiniteModel& m) {
        auto& rows = m.tables["F"];
        for (const auto& e : exception_values(s, m)) {
          TermPtr mem = s.find_gen("m" + std::to_string(e.index));
          rows.push_back({e, eval_decorated(s, m, mem, *e.sub)});
        }
      };
    }
    return r;
  }

  // semi-pure case splitting over a plain coproduct
  TypePtr A = base("A"), B = base("B"), Y = base("Y");
  std::vector<GenDecl> sig{{"u", A, Y, Deco::ppg}, {"k", B, Y, Deco::ctc}};
  if (rule == "sp.unique")
    sig.push_back({"h", ObjType::coprod(A, B), Y, Deco::ctc});
  r.spec = obligation_spec({"A", "B", "Y"}, sig, 1);
  TermPtr u = r.spec.find_gen("u"), k = r.spec.find_gen("k");
  TermPtr split = cotuple(u, k);
  if (rule == "sp.copi1" || rule == "sp.copi2") {
    TermPtr c = rule == "sp.copi1" ? copi1(A, B) : copi2(A, B);
    r.declared = c;
    r.shape_concls = claim_obligations(r.spec, c, Deco::pure);
  } else if (rule == "sp.form") {
    r.declared = split;
  } else if (rule == "sp.weak") {
    r.eq_concls.push_back({Strength::weak, comp(split, copi1(A, B)), u});
  } else if (rule == "sp.strong") {
    r.eq_concls.push_back({Strength::strong, comp(split, copi2(A, B)), k});
  } else if (rule == "sp.unique") {
    TermPtr h = r.spec.find_gen("h");
    r.eq_premises.push_back({Strength::weak, comp(h, copi1(A, B)), u});
    r.eq_premises.push_back({Strength::strong, comp(h, copi2(A, B)), k});
    r.eq_concls.push_back({Strength::strong, h, split});
    r.pinned = "h";
    r.pin = [](const DecoratedSpec& s, FiniteModel& m) {
      TermPtr u2 = s.find_gen("u"), k2 = s.find_gen("k"),
              h2 = s.find_gen("h");
      auto& rows = m.tables["h"];
      for (const auto& v : values_of(s, m, h2->src))
        rows.push_back({v, eval_decorated(
                               s, m, v.k == Value::K::inl ? u2 : k2, *v.sub)});
      for (const auto& e : exception_values(s, m))
        rows.push_back({e, eval_decorated(s, m, k2, e)});
    };
  } else {
    throw SpecError("expand_rule: unknown rule " + rule);
  }
  return r;
}

struct BatteryOutcome {
  long models = 0;
  bool ok = true;
  std::string why;
};

// Enumerates the battery for one instance.  Eq premises act as a filter;
// when the instance pins a table, that operation is dropped from the
// enumeration and its rows are derived from the premises instead, which
// keeps the battery exhaustive without walking tables the premises have
// already determined.
inline BatteryOutcome run_battery(const RuleInstance& inst,
                                  const std::vector<Equation>& prems,
                                  const std::vector<Equation>& concls) {
  const DecoratedSpec& s = inst.spec;
  DecoratedSpec reduced = s;
  if (!inst.pinned.empty()) {
    std::vector<GenDecl> keep;
    for (const auto& g : reduced.sig)
      if (g.name != inst.pinned) keep.push_back(g);
    reduced.sig = std::move(keep);
  }
  BatteryOutcome out;
  for_each_model(reduced, battery_max_carrier, [&](const FiniteModel& m0) {
    FiniteModel m = m0;
    if (inst.pin) inst.pin(s, m);
    for (const auto& p : prems)
      if (!oracle_holds(s, m, p)) return true;
    ++out.models;
    for (const auto& c : concls) {
      Value w, lv, rv;
      if (!oracle_holds(s, m, c, &w, &lv, &rv)) {
        out.ok = false;
        out.why = "fails " + print_equation(c) + " at " + print_value(w) +
                  ": " + print_value(lv) + " vs " + print_value(rv);
        return false;
      }
    }
    return true;
  });
  if (out.ok && out.models == 0) {
    out.ok = false;
    out.why = "no model satisfied the premises";
  }
  return out;
}

}  // namespace detail

// States and discharges the explicit obligation of one rule.  Declaration
// rules are checked by construction: their expansion must typecheck at the
// lifted types and satisfy the shape equations of the claimed decoration.
// Equation rules first try rewriting with the expanded premises; rules the
// rewriter cannot reach fall back to the model battery.
inline RuleObligation expand_rule(const std::string& rule) {
  detail::RuleInstance inst = detail::rule_instance(rule);
  const DecoratedSpec& s = inst.spec;
  RuleObligation ob;
  ob.rule = rule;
  ob.instance = detail::describe_instance(s);

  std::vector<Equation> prems, concls;
  for (const auto& p : inst.eq_premises) {
    prems.push_back(expand_equation(s, p));
    ob.premises.push_back(print_equation(prems.back()));
  }

  if (inst.declared || !inst.shape_concls.empty()) {
    ob.method = "syntactic";
    ob.discharged = true;
    std::string why = "by construction";
    if (inst.declared) {
      TermPtr cf = catcher_form(s, inst.declared);
      TypePtr want_src = ObjType::coprod(inst.declared->src, ObjType::exc());
      TypePtr want_tgt = ObjType::coprod(inst.declared->tgt, ObjType::exc());
      ob.conclusions.push_back("typechecks: " + print_type(want_src) +
                               " -> " + print_type(want_tgt));
      if (!type_eq(cf->src, want_src) || !type_eq(cf->tgt, want_tgt)) {
        ob.discharged = false;
        why = "expansion has type " + print_type(cf->src) + " -> " +
              print_type(cf->tgt);
      }
    }
    for (const auto& c : inst.shape_concls) {
      ob.conclusions.push_back(print_equation(c));
      if (!syntactic_entails({}, c)) {
        ob.discharged = false;
        why = "shape equation fails: " + print_equation(c);
      }
    }
    ob.detail = why;
    return ob;
  }

  for (const auto& c : inst.eq_concls) {
    concls.push_back(expand_equation(s, c));
    ob.conclusions.push_back(print_equation(concls.back()));
  }

  bool all = true;
  for (const auto& c : concls) all = all && syntactic_entails(prems, c);
  if (all) {
    ob.method = "syntactic";
    ob.discharged = true;
    ob.detail = prems.empty() ? "normal forms coincide"
                              : "rewriting with the expanded premises";
    return ob;
  }

  ob.method = "semantic";
  detail::BatteryOutcome bat = detail::run_battery(inst, prems, concls);
  ob.discharged = bat.ok;
  ob.detail = std::string(battery_version()) + ", " +
              std::to_string(bat.models) + " models";
  if (!inst.pinned.empty())
    ob.detail += ", table of " + inst.pinned + " pinned by the premises";
  if (!bat.ok) ob.detail += "; " + bat.why;
  return ob;
}

inline std::vector<RuleObligation> expand_all_rules() {
  std::vector<RuleObligation> out;
  for (const auto& r : all_rule_tokens()) out.push_back(expand_rule(r));
  return out;
}

}  // namespace dexc
