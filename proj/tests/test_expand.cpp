// The translation to the explicit logic: term expansion, equation
// expansion, whole-spec expansion and the bounded entailment search.
#include <catch2/catch_amalgamated.hpp>

#include "dexc/battery.hpp"
#include "dexc/correspond.hpp"
#include "dexc/parse.hpp"

using namespace dexc;

static std::string data_dir = DEXC_DATA_DIR;

static DecoratedSpec load_spec(const std::string& name) {
  return parse_spec(read_file(data_dir + "/specs/" + name));
}

TEST_CASE("operations expand to their explicit faces") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  TypePtr X = ObjType::base("X"), Y = ObjType::base("Y");
  TypePtr P1 = ObjType::base("P1"), E = ObjType::exc();

  // a pure operation stays itself
  CHECK(term_eq(expand_term(s, s.find_gen("p")), xgen("p", X, Y)));
  // a propagator becomes its face X -> Y+E
  CHECK(term_eq(expand_term(s, s.find_gen("f")),
                xgen("f", X, ObjType::coprod(Y, E))));
  // tags target E itself, untags split it
  CHECK(term_eq(expand_term(s, s.tag(1)), xgen("t1", P1, E)));
  CHECK(term_eq(expand_term(s, s.untag(1)),
                xgen("c1", E, ObjType::coprod(P1, E))));
}

TEST_CASE("identity and empty map expand by decoration") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  TypePtr Y = ObjType::base("Y"), E = ObjType::exc();
  CHECK(term_eq(expand_term(s, id(Y)), xid(Y)));
  // the propagator form of a pure term is in o itself
  TermPtr f1 = propagator_form(s, id(Y));
  CHECK(term_eq(f1, xin(Y)));
  CHECK(term_eq(expand_term(s, empty_map(Y)), xempty(Y)));
  (void)E;
}

TEST_CASE("raising expands to its explicit twin") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  TypePtr Y = ObjType::base("Y");
  for (int i : {1, 2}) {
    TermPtr dec = build_throw(s, i, Y);
    CHECK(term_eq(expand_term(s, dec), build_throw_explicit(s, i, Y)));
  }
}

TEST_CASE("handling expands to its explicit twin") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1"), g2 = s.find_gen("g2");
  TypePtr Y = ObjType::base("Y"), E = ObjType::exc();
  TermPtr xf = xgen("f", ObjType::base("X"), ObjType::coprod(Y, E));
  TermPtr xg1 = xgen("g1", ObjType::base("P1"), ObjType::coprod(Y, E));
  TermPtr xg2 = xgen("g2", ObjType::base("P2"), ObjType::coprod(Y, E));

  TermPtr one = build_try_catch(s, f, {{1, g1}});
  CHECK(term_eq(expand_term(s, one),
                build_try_catch_explicit(s, Y, xf, {{1, xg1}})));
  TermPtr two = build_try_catch(s, f, {{1, g1}, {2, g2}});
  CHECK(term_eq(expand_term(s, two),
                build_try_catch_explicit(s, Y, xf, {{1, xg1}, {2, xg2}})));
}

TEST_CASE("expansion output is normalized") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  for (const auto& t : term_battery(s, {4, 10})) {
    TermPtr xt = expand_term(s, t);
    INFO(print_term(t));
    CHECK(term_eq(normalize_explicit(xt), xt));
  }
}

TEST_CASE("weak axioms expand to the hand written explicit axioms") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  ExplicitSpec direct = direct_explicit_spec(s);
  REQUIRE(s.axioms.size() == direct.axioms.size());
  for (size_t i = 0; i < s.axioms.size(); ++i) {
    Equation x = expand_equation(s, s.axioms[i].eq);
    INFO(s.axioms[i].name);
    CHECK(x.strength == Strength::expl);
    CHECK(eq_eq(x, direct.axioms[i].eq));
  }
}

TEST_CASE("strong equations expand at the joined decoration") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  // pure against pure: both sides stay plain
  Equation pp{Strength::strong, s.find_gen("p"), s.find_gen("p")};
  Equation xpp = expand_equation(s, pp);
  CHECK(term_eq(xpp.lhs, xgen("p", ObjType::base("X"), ObjType::base("Y"))));
  // catcher against catcher: both sides take the sum as source
  Equation cc{Strength::strong, s.untag(1), s.untag(1)};
  Equation xcc = expand_equation(s, cc);
  CHECK(type_eq(xcc.lhs->src, ObjType::exc()));
  // weak equations always compare propagator forms: ordinary inputs only
  Equation wc{Strength::weak, s.untag(1), s.untag(1)};
  Equation xwc = expand_equation(s, wc);
  CHECK(is_zero(xwc.lhs->src));
}

TEST_CASE("spec expansion equals the direct explicit construction") {
  for (const char* name : {"hyp2.dexc", "calc.dexc"}) {
    DecoratedSpec s = load_spec(name);
    CHECK(explicit_spec_eq(expand_spec(s), direct_explicit_spec(s)));
  }
  std::mt19937 rng = seeded(4);
  for (int i = 0; i < 20; ++i) {
    DecoratedSpec g = random_pure_spec(rng, i);
    INFO(g.name);
    CHECK(explicit_spec_eq(expand_spec(g), direct_explicit_spec(g)));
  }
}

TEST_CASE("bounded entailment rewrites with its premises") {
  DecoratedSpec s = load_spec("hyp2.dexc");
  TypePtr X = ObjType::base("X"), Y = ObjType::base("Y"), E = ObjType::exc();
  TermPtr xf = xgen("f", X, ObjType::coprod(Y, E));
  TermPtr xg = xgen("g", X, ObjType::coprod(Y, E));
  TermPtr xp = xgen("p", X, Y);

  // reflexivity needs no premises
  CHECK(syntactic_entails({}, {Strength::expl, xf, xf}));
  // a premise rewrites the whole side
  CHECK(syntactic_entails({{Strength::expl, xf, xg}},
                          {Strength::expl, xg, xf}));
  // and inside a composition spine
  TermPtr inY = xin(Y);
  CHECK(syntactic_entails({{Strength::expl, xf, xcomp(inY, xp)}},
                          {Strength::expl, xcomp(xcot(xin(Y), xina(Y)), xf),
                           xcomp(xcot(xin(Y), xina(Y)), xcomp(inY, xp))}));
  // distinct operations are not identified out of thin air
  CHECK_FALSE(syntactic_entails({}, {Strength::expl, xf, xg}));
}

TEST_CASE("explicit factories collapse the empty summand") {
  TypePtr E = ObjType::exc(), Y = ObjType::base("Y");
  // 0+E is E: the insertions degenerate
  CHECK(term_eq(xin(ObjType::zero()), xempty(E)));
  CHECK(term_eq(xina(ObjType::zero()), xid(E)));
  // a case split whose left branch starts at 0 is its right branch
  TermPtr k = xgen("k", E, ObjType::coprod(Y, E));
  CHECK(term_eq(xcot(xempty(ObjType::coprod(Y, E)), k), k));
}
