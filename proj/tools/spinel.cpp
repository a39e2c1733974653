#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinel/driver.hpp"
#include "spinel/parser.hpp"
#include "spinel/pretty.hpp"

namespace {

enum Exit { kOk = 0, kGoalFailed = 1, kParseError = 2, kInternal = 3 };

bool use_color() {
  const char* env = std::getenv("SPINEL_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return isatty(fileno(stdout));
}

struct RunFlags {
  std::string file;
  bool elab = false;
  bool json = false;
  bool trace = false;
  bool spec_verify = false;
};

int cmd_run(const RunFlags& f) {
  std::ifstream in(f.file);
  if (!in) {
    std::cerr << f.file << ": cannot open file\n";
    return kParseError;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  spinel::Program program;
  try {
    program = spinel::parse_program(buf.str());
  } catch (const spinel::ParseError& e) {
    std::cerr << f.file << ":" << e.what() << "\n";
    return kParseError;
  }

  spinel::RunOptions opts{f.trace, f.spec_verify};
  bool color = !f.json && use_color();
  bool all = true;
  try {
    for (const auto& st : program.statements) {
      if (st.kind != spinel::Statement::Kind::Goal) continue;
      spinel::GoalReport r = spinel::run_goal(st, opts);
      all = all && r.passed();
      if (f.json)
        std::cout << spinel::goal_to_json(r) << "\n";
      else
        std::cout << spinel::render_goal(r, f.elab, color, f.file);
    }
  } catch (const spinel::InternalError& e) {
    std::cout.flush();
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return all ? kOk : kGoalFailed;
}

const char* kReplHelp =
    "  :type N/k.  :type X       declare a constructor or a type variable\n"
    "  :assume x : T             bind a term variable\n"
    "  :check t : T              check t against T\n"
    "  :synth t                  synthesize a type for t\n"
    "  :ctx                      list the session context\n"
    "  :quit\n";

int cmd_repl() {
  bool interactive = isatty(fileno(stdin));
  bool color = use_color();
  spinel::Context ctx;
  std::string line;
  while (true) {
    if (interactive) std::cout << "spinel> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    if (line == ":quit" || line == ":q") break;
    if (line == ":help") {
      std::cout << kReplHelp;
      continue;
    }
    if (line == ":ctx") {
      for (const auto& e : ctx.entries()) {
        if (e.type)
          std::cout << "  " << e.name << " : " << spinel::pretty_type(*e.type) << "\n";
        else
          std::cout << "  type " << e.name << "\n";
      }
      for (const auto& [name, arity] : ctx.signature())
        std::cout << "  type " << name << "/" << arity << "\n";
      continue;
    }
    if (line.front() == ':') line = line.substr(1);
    try {
      spinel::Statement st = spinel::parse_statement(line, ctx);
      if (st.kind != spinel::Statement::Kind::Goal) {
        ctx = st.ctx;
        continue;
      }
      std::cout << spinel::render_goal(spinel::run_goal(st), true, color);
    } catch (const spinel::ParseError& e) {
      std::cout << "parse error: " << e.what() << "\n";
    } catch (const spinel::InternalError& e) {
      std::cout << "internal error: " << e.what() << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spine-local type inference for System F"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run = app.add_subcommand("run", "Run the goals of a program file");
  run->add_option("file", flags.file, "Program file")->required();
  run->add_flag("--elab", flags.elab, "Print elaborations");
  run->add_flag("--json", flags.json, "One JSON object per goal");
  run->add_flag("--trace", flags.trace, "Print the inference rules applied");
  run->add_flag("--spec-verify", flags.spec_verify,
                "Check successful applications against the declarative rules");

  auto* repl = app.add_subcommand("repl", "Interactive session");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }
  if (run->parsed()) return cmd_run(flags);
  if (repl->parsed()) return cmd_repl();
  return kOk;
}
