#ifndef SPINEL_DRIVER_HPP
#define SPINEL_DRIVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "spinel/diagnostic.hpp"
#include "spinel/parser.hpp"
#include "spinel/spec_oracle.hpp"
#include "spinel/syntax.hpp"

namespace spinel {

struct RunOptions {
  bool trace = false;
  bool spec_verify = false;
};

/// Outcome of one goal.
struct GoalReport {
  GoalKind kind = GoalKind::Synth;
  std::string text;
  std::optional<Type> expected;
  bool ok = false;
  std::optional<Type> type;
  std::optional<Term> elaboration;
  std::optional<Diagnostic> diagnostic;
  std::vector<std::string> trace;
  /// Present when spec verification ran (successful application goals).
  std::optional<SpecVerdict> spec;
  Span span;

  /// Success, and spec verification (when it ran) accepted.
  bool passed() const { return ok && (!spec || spec->accepted); }
};

struct RunReport {
  std::vector<GoalReport> goals;
  bool passed() const;
};

/// Runs one goal statement. Engine invariant violations propagate as
/// InternalError.
GoalReport run_goal(const Statement& goal, const RunOptions& options = {});

/// Runs every goal of the program in order.
RunReport run_program(const Program& program, const RunOptions& options = {});

/// Human-readable block for a goal. `origin` prefixes locations (a file name).
std::string render_goal(const GoalReport& r, bool show_elab, bool color,
                        const std::string& origin = "");

/// One JSON object (single line) per goal.
std::string goal_to_json(const GoalReport& r);
std::string diagnostic_to_json(const Diagnostic& d);

}  // namespace spinel

#endif  // SPINEL_DRIVER_HPP
