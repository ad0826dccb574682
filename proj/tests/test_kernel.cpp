// The derivation checker: shipped scripts, rule-by-rule rejection of
// malformed steps, and countermodels for claims the kernel refuses.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "dexc/battery.hpp"
#include "dexc/library.hpp"
#include "dexc/parse.hpp"

using namespace dexc;

static std::string data_dir = DEXC_DATA_DIR;

static DecoratedSpec hyp2() {
  return parse_spec(read_file(data_dir + "/specs/hyp2.dexc"));
}

TEST_CASE("the shipped derivation scripts all check") {
  DecoratedSpec s = hyp2();
  auto lib = check_script_library(s, data_dir + "/proofs");
  CHECK(lib.size() == 38);
  for (const auto& cp : lib) {
    INFO(cp.file << " / " << cp.name << ": " << cp.error);
    CHECK(cp.ok);
  }
  auto has = [&](const std::string& n) {
    return std::any_of(lib.begin(), lib.end(),
                       [&](const CheckedProof& c) { return c.name == n; });
  };
  CHECK(has("untag_tag"));
  CHECK(has("untag_commute"));
  CHECK(has("catch_raise"));
  CHECK(has("pure_try"));
  // every equation those blocks conclude is available afterwards
  CHECK(script_equations(lib).size() >= 20);
}

TEST_CASE("substitution into a weak equation demands a pure term") {
  TypePtr X = ObjType::base("X"), Y = ObjType::base("Y");
  DecoratedSpec s = make_deco_spec("wsub", {"X", "Y"},
                                   {{"f", X, X, Deco::ppg},
                                    {"q", X, X, Deco::pure},
                                    {"g", X, Y, Deco::ppg}},
                                   {{1, ObjType::unit()}});
  TermPtr f = s.find_gen("f"), q = s.find_gen("q"), g = s.find_gen("g");
  DerivPtr g_refl = step("b.wrefl", Judgment::of(Strength::weak, g, g),
                         {step("hyp", Judgment::of(g, Deco::ppg))});

  // substituting the propagator f is refused with the exact complaint
  DerivPtr bad =
      step("b.wsubst",
           Judgment::of(Strength::weak, comp(g, f), comp(g, f)),
           {step("hyp", Judgment::of(f, Deco::ppg)), g_refl});
  CheckResult r = check_derivation(s, bad);
  CHECK_FALSE(r.ok);
  CHECK(r.rule == "b.wsubst");
  CHECK(r.path.empty());
  CHECK(r.reason.find("premise 1 must be claimed [pure]") !=
        std::string::npos);
  CHECK(r.reason.find("[ppg]") != std::string::npos);

  // the same derivation with the pure operation q goes through
  DerivPtr good =
      step("b.wsubst",
           Judgment::of(Strength::weak, comp(g, q), comp(g, q)),
           {step("hyp", Judgment::of(q, Deco::pure)), g_refl});
  CHECK(check_derivation(s, good).ok);
}

TEST_CASE("claims may not undercut or relabel decorations") {
  DecoratedSpec s = hyp2();
  TermPtr f = s.find_gen("f");

  // claiming a propagator pure fails before any rule runs
  CheckResult below =
      check_derivation(s, step("hyp", Judgment::of(f, Deco::pure)));
  CHECK_FALSE(below.ok);
  CHECK(below.reason == "declared claim is below the decoration of f");

  // claiming it ctc is a sound weakening, but hyp wants the declared deco
  CheckResult above =
      check_derivation(s, step("hyp", Judgment::of(f, Deco::ctc)));
  CHECK_FALSE(above.ok);
  CHECK(above.reason.find("must equal the declared decoration [ppg]") !=
        std::string::npos);

  // promotion is what the coercion rules are for
  CheckResult promoted = check_derivation(
      s, step("b.toctc", Judgment::of(f, Deco::ctc),
              {step("hyp", Judgment::of(f, Deco::ppg))}));
  CHECK(promoted.ok);
}

TEST_CASE("hypotheses must come from the signature") {
  DecoratedSpec s = hyp2();
  TermPtr stray = gen("nope", ObjType::base("X"), ObjType::base("Y"),
                      Deco::ppg);
  CheckResult r = check_derivation(s, step("hyp", Judgment::of(stray,
                                                               Deco::ppg)));
  CHECK_FALSE(r.ok);
  CHECK(r.reason == "operation nope is not declared");

  CheckResult composite = check_derivation(
      s, step("hyp", Judgment::of(id(ObjType::base("X")), Deco::pure)));
  CHECK_FALSE(composite.ok);
  CHECK(composite.reason == "hypothesis must be a declared operation");
}

TEST_CASE("a derivation is rejected when its rule token is swapped") {
  DecoratedSpec s = hyp2();
  TermPtr f = s.find_gen("f");
  Judgment concl =
      Judgment::of(Strength::strong, comp(f, id(f->src)), f);
  DerivPtr hyp_f = step("hyp", Judgment::of(f, Deco::ppg));

  CHECK(check_derivation(s, step("a.unitr", concl, {hyp_f})).ok);

  CheckResult relabeled =
      check_derivation(s, step("a.unitl", concl, {hyp_f}));
  CHECK_FALSE(relabeled.ok);
  CHECK(relabeled.rule == "a.unitl");

  CheckResult unknown =
      check_derivation(s, step("b.nonsense", concl, {hyp_f}));
  CHECK_FALSE(unknown.ok);
  CHECK(unknown.reason == "unknown rule b.nonsense");
}

TEST_CASE("axiom steps must cite a declared axiom verbatim") {
  DecoratedSpec s = hyp2();
  TypePtr P1 = ObjType::base("P1");
  TermPtr lhs = comp(s.untag(1), s.tag(1));

  DerivPtr ok = step("axiom ut_1",
                     Judgment::of(Strength::weak, lhs, id(P1)));
  CHECK(check_derivation(s, ok).ok);

  CheckResult missing = check_derivation(
      s, step("axiom nope", Judgment::of(Strength::weak, lhs, id(P1))));
  CHECK_FALSE(missing.ok);
  CHECK(missing.reason == "no axiom named nope");

  // strengthening the axiom's ~ into == is exactly the unsound step
  CheckResult twisted = check_derivation(
      s, step("axiom ut_1", Judgment::of(Strength::strong, lhs, id(P1))));
  CHECK_FALSE(twisted.ok);
  CHECK(twisted.reason.find("conclusion differs from axiom ut_1") !=
        std::string::npos);
}

TEST_CASE("failures report the path to the offending node") {
  DecoratedSpec s = hyp2();
  TermPtr f = s.find_gen("f");
  DerivPtr inner = step("hyp", Judgment::of(f, Deco::pure));
  DerivPtr mid = step("b.toppg", Judgment::of(f, Deco::ppg), {inner});
  DerivPtr outer = step("b.toctc", Judgment::of(f, Deco::ctc), {mid});
  CheckResult r = check_derivation(s, outer);
  CHECK_FALSE(r.ok);
  CHECK(r.path == "1.1");
  CHECK(r.rule == "hyp");
}

TEST_CASE("the rule inventory is fixed") {
  const auto& tokens = all_rule_tokens();
  CHECK(tokens.size() == 40);
  std::set<std::string> uniq(tokens.begin(), tokens.end());
  CHECK(uniq.size() == 40);
  for (const char* t : {"a.comp", "b.wsubst", "c.form", "d.pure", "e.unique",
                        "f.unique", "sp.strong"})
    CHECK(uniq.count(t) == 1);
}

TEST_CASE("underivable weak equations have countermodels") {
  DecoratedSpec s = tags_only_spec(2);
  TypePtr P1 = ObjType::base("P1");
  // dropping the recovery is observably different from recovering
  Equation wrong{Strength::weak, comp(s.untag(1), s.tag(1)),
                 comp(empty_map(P1), s.tag(1))};
  FiniteModel m = random_models(s, 1, 5, 2).front();
  Value w, lv, rv;
  REQUIRE_FALSE(oracle_holds(s, m, wrong, &w, &lv, &rv));
  // the left side recovers the tagged value, the right stays raised
  CHECK(value_eq(lv, w));
  CHECK(rv.is_exc());
}
