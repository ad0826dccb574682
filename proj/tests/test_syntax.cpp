// Round trips and error reporting for the three text formats.
#include <catch2/catch_amalgamated.hpp>

#include "dexc/battery.hpp"
#include "dexc/expand.hpp"
#include "dexc/library.hpp"
#include "dexc/parse.hpp"

using namespace dexc;

static std::string data_dir = DEXC_DATA_DIR;

static DecoratedSpec load_spec(const std::string& name) {
  return parse_spec(read_file(data_dir + "/specs/" + name));
}

TEST_CASE("specifications round trip through their text form") {
  for (const char* name : {"hyp2.dexc", "calc.dexc"}) {
    DecoratedSpec s = load_spec(name);
    std::string printed = print_spec(s);
    DecoratedSpec back = parse_spec(printed);
    CHECK(print_spec(back) == printed);
    CHECK(back.name == s.name);
    CHECK(back.bases == s.bases);
    REQUIRE(back.sig.size() == s.sig.size());
    REQUIRE(back.axioms.size() == s.axioms.size());
    for (size_t i = 0; i < s.axioms.size(); ++i) {
      CHECK(back.axioms[i].name == s.axioms[i].name);
      CHECK(eq_eq(back.axioms[i].eq, s.axioms[i].eq));
    }
  }
}

TEST_CASE("decorated terms round trip through their printed form") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  auto terms = term_battery(s, {4, 12});
  REQUIRE(terms.size() > 100);
  for (const auto& t : terms) {
    TermPtr back = parse_term(s, print_term(t));
    INFO(print_term(t));
    CHECK(term_eq(back, t));
  }
}

TEST_CASE("explicit terms round trip through their printed form") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  for (const auto& t : term_battery(s, {3, 8})) {
    TermPtr xt = expand_term(s, t);
    TermPtr back = parse_term(s, print_term(xt), true);
    INFO(print_term(xt));
    CHECK(term_eq(back, xt));
  }
}

TEST_CASE("models round trip through their text form") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  FiniteModel demo =
      parse_model(s, read_file(data_dir + "/models/hyp2_demo.dmodel"));
  std::string printed = print_model(s, demo);
  FiniteModel back = parse_model(s, printed);
  CHECK(print_model(s, back) == printed);
  CHECK(back.name == demo.name);
  CHECK(back.carriers == demo.carriers);

  std::mt19937 rng = seeded(2);
  FiniteModel rnd = random_model(s, rng, 2);
  rnd.name = "rt";
  CHECK(print_model(s, parse_model(s, print_model(s, rnd))) ==
        print_model(s, rnd));
}

TEST_CASE("proof scripts round trip block by block") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  std::vector<NamedDerivation> lib;
  for (const auto& f : shipped_proof_files()) {
    auto blocks = parse_proofs(s, read_file(data_dir + "/proofs/" + f), lib);
    for (auto& b : blocks) {
      // printing splices every `use`, so the result is self contained
      std::string printed = print_proof(b.name, b.deriv);
      auto again = parse_proofs(s, printed, {});
      REQUIRE(again.size() == 1);
      CHECK(again[0].name == b.name);
      CHECK(judgment_eq(again[0].deriv->concl, b.deriv->concl));
      CHECK(print_proof(again[0].name, again[0].deriv) == printed);
      lib.push_back(std::move(b));
    }
  }
}

TEST_CASE("raising and handling sugar elaborates to the builders") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  TypePtr Y = ObjType::base("Y");
  CHECK(term_eq(parse_term(s, "throw{1,Y}"), build_throw(s, 1, Y)));
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1"), g2 = s.find_gen("g2");
  CHECK(term_eq(parse_term(s, "try(f | 1 => g1)"),
                build_try_catch(s, f, {{1, g1}})));
  CHECK(term_eq(parse_term(s, "try(f | 1 => g1 | 2 => g2)"),
                build_try_catch(s, f, {{1, g1}, {2, g2}})));
  CHECK(term_eq(parse_term(s, "{t1 | t2}"),
                tag_cotuple({s.tag(1), s.tag(2)}, s.param_types())));
}

TEST_CASE("parse errors carry their line and reason") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  CHECK_THROWS_AS(parse_term(s, "nosuch"), ParseError);
  CHECK_THROWS_AS(parse_term(s, "f o g1"), ParseError);   // types clash
  CHECK_THROWS_AS(parse_term(s, "in{X}"), ParseError);    // explicit only
  CHECK_THROWS_AS(parse_term(s, "try(f)"), ParseError);   // no clauses
  CHECK_THROWS_AS(parse_spec("types X"), ParseError);     // missing header
  // rows outside the carriers parse but do not validate
  FiniteModel stray = parse_model(
      s, "model m\ncarriers\n  X = a\nops\n  f : a -> nosuch\n");
  CHECK_FALSE(validate_model(s, stray).empty());
  // tagging is canonical, never tabulated
  CHECK_THROWS_AS(
      parse_model(s, "model m\ncarriers\nops\n  t1 : p -> exc 1(p)\n"),
      ParseError);
  // an indentation jump of two levels cannot attach to any parent
  std::string bad =
      "proof p\n  a.id |- id{X} : X -> X [ctc]\n      hyp |- f : X -> Y "
      "[ppg]\n";
  CHECK_THROWS_AS(parse_proofs(s, bad, {}), ParseError);
}
