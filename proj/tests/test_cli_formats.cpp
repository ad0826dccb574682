// End-to-end checks of the command line binary: exit codes, both output
// formats, the structured report schema, and byte-for-byte determinism.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

const std::string cli = DEXC_CLI_PATH;
const std::string data = DEXC_DATA_DIR;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = cli + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WEXITSTATUS(status), std::move(out)};
}

std::string spec(const std::string& n) { return data + "/specs/" + n; }
std::string model(const std::string& n) { return data + "/models/" + n; }
std::string proof(const std::string& n) { return data + "/proofs/" + n; }

}  // namespace

TEST_CASE("checking a shipped script succeeds in both formats") {
  RunResult human = run("check --spec " + spec("hyp2.dexc") + " --proof " +
                        proof("compose_empty.dproof"));
  CHECK(human.exit_code == 0);
  CHECK(human.out.find("[pass] check.compose_empty") != std::string::npos);

  RunResult st = run("check --spec " + spec("hyp2.dexc") + " --proof " +
                     proof("compose_empty.dproof") + " --format structured");
  CHECK(st.exit_code == 0);
  auto doc = nlohmann::json::parse(st.out);
  CHECK(doc["command"] == "check");
  CHECK(doc["verdict"] == "pass");
  REQUIRE(doc["items"].is_array());
  REQUIRE_FALSE(doc["items"].empty());
  for (const auto& it : doc["items"]) {
    CHECK(it.contains("item"));
    CHECK(it.contains("anchor"));
    CHECK(it["verdict"] == "pass");
  }
}

TEST_CASE("later proof files may use blocks of earlier ones") {
  // catch_raise.dproof splices the untag_tag block from the file before it
  RunResult r = run("check --spec " + spec("hyp2.dexc") + " --proof " +
                    proof("untag_tag.dproof") + " --proof " +
                    proof("catch_raise.dproof"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[pass] check.untag_tag") != std::string::npos);
  CHECK(r.out.find("[pass] check.catch_raise") != std::string::npos);

  // without its dependencies the same file cannot even parse
  RunResult alone = run("check --spec " + spec("hyp2.dexc") + " --proof " +
                        proof("catch_raise.dproof"));
  CHECK(alone.exit_code == 2);
  CHECK(alone.out.find("error:") != std::string::npos);
}

TEST_CASE("a kernel rejection reports node, rule and message") {
  std::string path = "/tmp/dexc_broken.dproof";
  {
    std::ofstream f(path);
    f << "proof broken\n"
      << "  axiom ut_1 |- c1 o t1 == id{P1}\n";
  }
  RunResult st = run("check --spec " + spec("hyp2.dexc") + " --proof " +
                     path + " --format structured");
  CHECK(st.exit_code == 1);
  auto doc = nlohmann::json::parse(st.out);
  CHECK(doc["verdict"] == "fail");
  REQUIRE(doc["items"].size() == 1);
  const auto& it = doc["items"][0];
  CHECK(it["item"] == "check.broken");
  CHECK(it["verdict"] == "fail");
  CHECK(it["node"] == "");
  CHECK(it["rule"] == "axiom ut_1");
  std::string msg = it["message"];
  CHECK(msg.find("conclusion differs from axiom ut_1") != std::string::npos);

  RunResult human = run("check --spec " + spec("hyp2.dexc") + " --proof " +
                        path);
  CHECK(human.exit_code == 1);
  CHECK(human.out.find("[FAIL] check.broken") != std::string::npos);
  CHECK(human.out.find("at node  [axiom ut_1]:") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("expansion prints the explicit spec") {
  RunResult human = run("expand --spec " + spec("calc.dexc"));
  CHECK(human.exit_code == 0);
  CHECK(human.out.find("explicit spec calc") != std::string::npos);
  CHECK(human.out.find("pred : N -> N+E") != std::string::npos);
  CHECK(human.out.find("t1 : 1 -> E") != std::string::npos);
  CHECK(human.out.find("c1 : E -> 1+E") != std::string::npos);

  RunResult st = run("expand --spec " + spec("calc.dexc") +
                     " --format structured");
  CHECK(st.exit_code == 0);
  auto doc = nlohmann::json::parse(st.out);
  CHECK(doc["command"] == "expand");
  CHECK(doc["spec"] == "calc");
  bool saw_ut = false;
  for (const auto& a : doc["axioms"])
    if (a["name"] == "ut_1") {
      saw_ut = true;
      CHECK(a["lhs"] == "c1 o t1");
      CHECK(a["rhs"] == "in{1}");
    }
  CHECK(saw_ut);
}

TEST_CASE("evaluation prints the computed value") {
  std::string base = "eval --spec " + spec("calc.dexc") + " --model " +
                     model("calc_three.dmodel") + " ";
  RunResult ok = run(base + "'pred o pred' n2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "n0\n");

  RunResult raised = run(base + "'pred o pred' n1");
  CHECK(raised.exit_code == 0);
  CHECK(raised.out == "exc 1(*)\n");

  RunResult st = run(base + "'try(pred | 1 => zero)' n0 --format structured");
  CHECK(st.exit_code == 0);
  auto doc = nlohmann::json::parse(st.out);
  CHECK(doc["command"] == "eval");
  CHECK(doc["input"] == "n0");
  CHECK(doc["value"] == "n0");
}

TEST_CASE("equivalence checking reports witnesses and exits 1") {
  std::string base = "equiv --spec " + spec("hyp2.dexc") + " --model " +
                     model("hyp2_demo.dmodel") + " ";
  RunResult weak = run(base + "'c1 o t1 ~ id{P1}'");
  CHECK(weak.exit_code == 0);
  CHECK(weak.out.find("[pass] equiv") != std::string::npos);

  RunResult strong = run(base + "'c1 o t1 == id{P1}' --format structured");
  CHECK(strong.exit_code == 1);
  auto doc = nlohmann::json::parse(strong.out);
  CHECK(doc["verdict"] == "fail");
  std::string witness = doc["items"][0]["witness"];
  CHECK(witness.find("exc 1(p1)") != std::string::npos);

  // a declaration is not an equation
  RunResult decl = run(base + "'f : X -> Y [ppg]'");
  CHECK(decl.exit_code == 2);
}

TEST_CASE("demo names are validated") {
  RunResult bad = run("demo nosuch");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("unknown demo") != std::string::npos);

  RunResult ex = run("demo exceptions");
  CHECK(ex.exit_code == 0);
  CHECK(ex.out.find("unfold.n1") != std::string::npos);
}

TEST_CASE("usage problems exit 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("check --proof x.dproof").exit_code == 2);  // --spec missing
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("demo logic --battery tiny").exit_code == 2);
  // parse errors in arguments surface as usage problems too
  std::string base = "eval --spec " + spec("calc.dexc") + " --model " +
                     model("calc_three.dmodel") + " ";
  RunResult bad_term = run(base + "'mystery o pred' n0");
  CHECK(bad_term.exit_code == 2);
  CHECK(bad_term.out.find("error:") != std::string::npos);
}

TEST_CASE("the structured report is deterministic and well formed") {
  RunResult a = run("report structured --battery small");
  RunResult b = run("report structured --battery small");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["command"] == "demo logic");
  CHECK(doc["battery"] == "battery-v1 small");
  CHECK(doc["verdict"] == "pass");
  REQUIRE(doc["items"].is_array());
  CHECK(doc["items"].size() >= 100);
  for (const auto& it : doc["items"]) {
    CHECK(it.contains("item"));
    CHECK(it.contains("anchor"));
    CHECK(it.contains("verdict"));
    CHECK(it.contains("witness"));
  }
}
