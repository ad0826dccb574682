// Handler construction and its differential check against the reference
// reading: leftmost clause wins, uncaught exceptions propagate, malformed
// clause lists are refused, and a dishonest build is actually caught.
#include <catch2/catch_amalgamated.hpp>

#include "dexc/battery.hpp"
#include "dexc/handler.hpp"

using namespace dexc;

namespace {

DecoratedSpec two_clause_spec() {
  TypePtr X = ObjType::base("X"), Y = ObjType::base("Y");
  TypePtr P1 = ObjType::base("P1"), P2 = ObjType::base("P2");
  return make_deco_spec("twoclause", {"X", "Y", "P1", "P2"},
                        {{"f", X, Y, Deco::ppg},
                         {"g1", P1, Y, Deco::ppg},
                         {"g2", P2, Y, Deco::ppg},
                         {"h2", P1, Y, Deco::ppg},
                         {"h4", P1, X, Deco::ppg},
                         {"kb", X, Y, Deco::ctc},
                         {"kc", P1, Y, Deco::ctc}},
                        {{1, P1}, {2, P2}});
}

FiniteModel two_clause_model() {
  FiniteModel m;
  m.name = "two";
  m.carriers = {{"X", {"x1", "x2"}},
                {"Y", {"y1", "y2"}},
                {"P1", {"a"}},
                {"P2", {"b"}}};
  Value x1 = Value::at("X", "x1"), x2 = Value::at("X", "x2");
  Value a = Value::at("P1", "a"), b = Value::at("P2", "b");
  Value y1 = Value::at("Y", "y1"), y2 = Value::at("Y", "y2");
  m.tables["f"] = {{x1, Value::exc(1, a)}, {x2, Value::exc(2, b)}};
  m.tables["g1"] = {{a, y1}};
  m.tables["g2"] = {{b, y2}};
  m.tables["h2"] = {{a, y2}};
  m.tables["h4"] = {{a, x1}};
  m.tables["kb"] = {{x1, y1}, {x2, y1}};
  m.tables["kc"] = {{a, y1}};
  return m;
}

}  // namespace

TEST_CASE("raising has the declared type and behaviour") {
  DecoratedSpec s = two_clause_spec();
  FiniteModel m = two_clause_model();
  TypePtr Y = ObjType::base("Y");
  TermPtr t = build_throw(s, 1, Y);
  CHECK(type_eq(t->src, ObjType::base("P1")));
  CHECK(type_eq(t->tgt, Y));
  REQUIRE(t->decorated());
  CHECK(*t->deco == Deco::ppg);
  Value a = Value::at("P1", "a");
  CHECK(value_eq(eval_decorated(s, m, t, a), Value::exc(1, a)));
  CHECK_THROWS_AS(build_throw(s, 9, Y), HandlerError);
}

TEST_CASE("the leftmost clause for an index wins") {
  DecoratedSpec s = two_clause_spec();
  FiniteModel m = two_clause_model();
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1"), h2 = s.find_gen("h2");
  Value x1 = Value::at("X", "x1");
  Value y1 = Value::at("Y", "y1"), y2 = Value::at("Y", "y2");

  // duplicate clauses for index 1: only the first ever runs
  std::vector<CatchClause> dup{{1, g1}, {1, h2}};
  TermPtr t = build_try_catch(s, f, dup);
  CHECK(value_eq(eval_decorated(s, m, t, x1), y1));
  CHECK(value_eq(java_reference_eval(s, m, f, dup, x1), y1));
  CHECK_FALSE(handler_divergence(s, m, f, dup).has_value());

  // swapping the duplicates flips the observed recovery
  std::vector<CatchClause> swapped{{1, h2}, {1, g1}};
  TermPtr u = build_try_catch(s, f, swapped);
  CHECK(value_eq(eval_decorated(s, m, u, x1), y2));
  CHECK_FALSE(handler_divergence(s, m, f, swapped).has_value());
}

TEST_CASE("unlisted exceptions keep propagating") {
  DecoratedSpec s = two_clause_spec();
  FiniteModel m = two_clause_model();
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1");
  Value x2 = Value::at("X", "x2");
  Value raised = Value::exc(2, Value::at("P2", "b"));

  std::vector<CatchClause> only1{{1, g1}};
  TermPtr t = build_try_catch(s, f, only1);
  CHECK(value_eq(eval_decorated(s, m, t, x2), raised));
  CHECK(value_eq(java_reference_eval(s, m, f, only1, x2), raised));
  CHECK_FALSE(handler_divergence(s, m, f, only1).has_value());
}

TEST_CASE("an abrupt input skips the whole statement") {
  DecoratedSpec s = two_clause_spec();
  FiniteModel m = two_clause_model();
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1");
  Value abrupt = Value::exc(1, Value::at("P1", "a"));
  // even though clause 1 could recover it, the statement never starts
  CHECK(value_eq(java_reference_eval(s, m, f, {{1, g1}}, abrupt), abrupt));
  TermPtr t = build_try_catch(s, f, {{1, g1}});
  CHECK(value_eq(eval_decorated(s, m, t, abrupt), abrupt));
}

TEST_CASE("the display form evaluates like the definitional form") {
  DecoratedSpec s = two_clause_spec();
  FiniteModel m = two_clause_model();
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1"), g2 = s.find_gen("g2");
  std::vector<CatchClause> both{{1, g1}, {2, g2}};
  TermPtr full = build_try_catch(s, f, both);
  TermPtr disp = simplified_try_catch(s, f, both);
  CHECK_FALSE(term_eq(full, disp));
  for (const auto& x : values_of(s, m, f->src))
    CHECK(value_eq(eval_decorated(s, m, full, x),
                   eval_decorated(s, m, disp, x)));
}

TEST_CASE("malformed clause lists are refused") {
  DecoratedSpec s = two_clause_spec();
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1"), g2 = s.find_gen("g2");
  TermPtr h4 = s.find_gen("h4"), kb = s.find_gen("kb"), kc = s.find_gen("kc");

  CHECK_THROWS_AS(build_try_catch(s, f, {}), HandlerError);
  CHECK_THROWS_WITH(build_try_catch(s, f, {}),
                    "try: at least one catch clause is required");

  // body source must be the exception's parameter type
  CHECK_THROWS_WITH(
      build_try_catch(s, f, {{1, g2}}),
      "catch: clause for index 1 must have source P1");
  // body target must be the block's target
  CHECK_THROWS_WITH(build_try_catch(s, f, {{1, h4}}),
                    "catch: clause bodies must target Y");
  // neither the block nor a body may be a full catcher
  CHECK_THROWS_WITH(build_try_catch(s, kb, {{1, g1}}),
                    "try: the handled term must be at most a propagator");
  CHECK_THROWS_WITH(build_try_catch(s, f, {{1, kc}}),
                    "catch: clause bodies must be at most propagators");
  CHECK_THROWS_WITH(build_try_catch(s, f, {{9, g1}}),
                    "catch: unknown exception index 9");
}

TEST_CASE("a chain that catches more than declared is detected") {
  DecoratedSpec s = two_clause_spec();
  FiniteModel m = two_clause_model();
  TermPtr f = s.find_gen("f"), g1 = s.find_gen("g1"), g2 = s.find_gen("g2");
  TypePtr Y = ObjType::base("Y");
  Value x2 = Value::at("X", "x2");

  // the honest chain for [1 => g1] ends in []{Y}: index 2 stays raised
  std::vector<CatchClause> only1{{1, g1}};
  // a dishonest build quietly appends a clause for index 2
  TermPtr tail = comp(cotuple(g2, empty_map(Y)), s.untag(2));
  TermPtr k1 = comp(cotuple(g1, tail), s.untag(1));
  TermPtr dishonest = downcast(comp(cotuple(id(Y), k1), f));

  Value got = eval_decorated(s, m, dishonest, x2);
  Value ref = java_reference_eval(s, m, f, only1, x2);
  CHECK(value_eq(got, Value::at("Y", "y2")));
  CHECK(value_eq(ref, Value::exc(2, Value::at("P2", "b"))));
  CHECK_FALSE(value_eq(got, ref));

  // while the generated builds stay divergence-free on every clause list
  for (const auto& clauses : handler_clause_lists(s, 3))
    CHECK_FALSE(handler_divergence(s, m, f, clauses).has_value());
}
