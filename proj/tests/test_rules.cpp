// Every kernel rule owes us its translated obligation: the explicit
// reading of the conclusion must follow from the explicit reading of the
// premises, syntactically where rewriting suffices and over the model
// battery where it does not.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "dexc/expand_rules.hpp"

using namespace dexc;

static const std::vector<RuleObligation>& obligations() {
  static const std::vector<RuleObligation> obs = expand_all_rules();
  return obs;
}

TEST_CASE("every rule discharges its translated obligation") {
  const auto& obs = obligations();
  CHECK(obs.size() == all_rule_tokens().size());
  std::set<std::string> seen;
  for (const auto& o : obs) {
    INFO(o.rule << " (" << o.method << "): " << o.detail);
    CHECK(o.discharged);
    CHECK((o.method == "syntactic" || o.method == "semantic"));
    seen.insert(o.rule);
  }
  // one obligation per rule token, none skipped
  CHECK(seen.size() == obs.size());
  for (const auto& t : all_rule_tokens()) CHECK(seen.count(t) == 1);
}

TEST_CASE("the purely equational families rewrite through") {
  // categorical laws and empty-type laws hold explicitly on the nose; if
  // one of these ever needs the battery, the translation has drifted
  for (const auto& o : obligations())
    if (o.rule.rfind("a.", 0) == 0 || o.rule.rfind("d.", 0) == 0) {
      INFO(o.rule);
      CHECK(o.method == "syntactic");
    }
}

TEST_CASE("only the uniqueness shaped rules need models") {
  std::set<std::string> semantic;
  for (const auto& o : obligations())
    if (o.method == "semantic") semantic.insert(o.rule);
  std::set<std::string> expected{"e.unique", "f.weak", "f.unique",
                                 "sp.strong", "sp.unique"};
  CHECK(semantic == expected);
}

TEST_CASE("semantic obligations report the battery they quantified over") {
  for (const auto& o : obligations())
    if (o.method == "semantic") {
      INFO(o.rule << ": " << o.detail);
      CHECK(o.detail.find("models") != std::string::npos);
    }
  CHECK(std::string(battery_version()) == "battery-v1");
  CHECK(battery_max_carrier == 3);
}

TEST_CASE("obligations record their expanded premises and conclusions") {
  std::map<std::string, const RuleObligation*> by;
  for (const auto& o : obligations()) by[o.rule] = &o;

  // weak-to-strong keeps the decoration claims in the instance signature,
  // leaving one equational premise and one strengthened conclusion
  REQUIRE(by.count("b.w2s"));
  CHECK(by.at("b.w2s")->premises.size() == 1);
  CHECK(by.at("b.w2s")->conclusions.size() == 1);
  // reflexivity needs no premises at all
  REQUIRE(by.count("a.refl"));
  CHECK(by.at("a.refl")->premises.empty());
  // uniqueness rules pin the determined operation before comparing
  REQUIRE(by.count("f.unique"));
  CHECK(by.at("f.unique")->detail.find("pinned") != std::string::npos);
  REQUIRE(by.count("e.unique"));
  CHECK(by.at("e.unique")->detail.find("pinned") != std::string::npos);

  for (const auto& o : obligations()) {
    INFO(o.rule);
    CHECK_FALSE(o.instance.empty());
    CHECK_FALSE(o.conclusions.empty());
  }
}
