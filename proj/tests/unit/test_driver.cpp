#include <doctest.h>

#include <json.hpp>

#include "helpers.hpp"
#include "spinel/driver.hpp"

using namespace spinel;
using nlohmann::json;

namespace {

const std::string kProgram = std::string(testing::kPrelude) + R"(
check pair (\x. x) z : Pair (Nat -> Nat) Nat.
synth right z.
check pair (\x:B. x) z : Pair (Nat -> Nat) Nat.
synth id [Nat] z.
)";

}  // namespace

TEST_CASE("report per goal in file order") {
  RunReport r = run_program(parse_program(kProgram), {true, true});
  REQUIRE(r.goals.size() == 4);
  CHECK(r.goals[0].ok);
  CHECK_FALSE(r.goals[1].ok);
  CHECK_FALSE(r.goals[2].ok);
  CHECK(r.goals[3].ok);
  CHECK_FALSE(r.passed());
  REQUIRE(r.goals[0].spec);
  CHECK(r.goals[0].spec->accepted);
  CHECK_FALSE(r.goals[0].trace.empty());
}

TEST_CASE("json and text come from the same diagnostic") {
  RunReport r = run_program(parse_program(kProgram));
  json ok = json::parse(goal_to_json(r.goals[0]));
  CHECK(ok["status"] == "ok");
  CHECK(ok["elaboration"] == "pair [Nat -> Nat] [Nat] (\\x:Nat. x) z");
  CHECK(ok["diagnostic"].is_null());

  json unsolved = json::parse(goal_to_json(r.goals[1]));
  CHECK(unsolved["status"] == "error");
  CHECK(unsolved["diagnostic"]["kind"] == "UnsolvedMetaVariables");
  CHECK(unsolved["diagnostic"]["synthesized"] == "(?X + Nat)");

  json mismatch = json::parse(goal_to_json(r.goals[2]));
  const json& d = mismatch["diagnostic"];
  CHECK(d["kind"] == "TypeMismatch");
  CHECK(d["expected"] == "?X");
  CHECK(d["synthesized"] == "B -> B");
  CHECK(d["contextual_match"]["partial"] == "Pair ?X ?Y");
  CHECK(d["contextual_match"]["against"] == "Pair (Nat -> Nat) Nat");
  CHECK(d["synthetic_match"].is_null());
  CHECK(d["span"]["line"].get<int>() > 0);

  std::string text = render_goal(r.goals[2], false, false);
  CHECK(text.find("contextual match: Pair ?X ?Y := Pair (Nat -> Nat) Nat") != std::string::npos);
  CHECK(text.find("error: type mismatch") != std::string::npos);
}

TEST_CASE("rendering options") {
  RunReport r = run_program(parse_program(kProgram));
  std::string plain = render_goal(r.goals[0], false, false);
  CHECK(plain.find("elaboration") == std::string::npos);
  std::string elab = render_goal(r.goals[0], true, false, "prog.sf");
  CHECK(elab.find("elaboration: pair [Nat -> Nat] [Nat] (\\x:Nat. x) z") != std::string::npos);
  CHECK(elab.rfind("prog.sf:", 0) == 0);
  std::string color = render_goal(r.goals[1], false, true);
  CHECK(color.find("\x1b[1;31m") != std::string::npos);
}

TEST_CASE("runs are deterministic") {
  auto once = [] {
    std::string out;
    for (const auto& g : run_program(parse_program(kProgram), {true, true}).goals)
      out += goal_to_json(g) + "\n" + render_goal(g, true, false);
    return out;
  };
  CHECK(once() == once());
}
