#include "spinel/driver.hpp"

#include <json.hpp>

#include "spinel/infer.hpp"
#include "spinel/pretty.hpp"

namespace spinel {

using nlohmann::json;

bool RunReport::passed() const {
  for (const auto& g : goals)
    if (!g.passed()) return false;
  return true;
}

GoalReport run_goal(const Statement& goal, const RunOptions& options) {
  GoalReport r;
  r.kind = goal.goal;
  r.text = goal.text;
  r.expected = goal.type;
  r.span = goal.span;
  const Term& t = *goal.term;
  Mode mode = goal.goal == GoalKind::Check ? Mode::check(*goal.type) : Mode::synth();

  Engine engine(options.trace);
  try {
    InferOutcome out = engine.infer(goal.ctx, mode, t);
    r.ok = true;
    r.type = out.type;
    r.elaboration = out.elaboration;
    if (options.spec_verify && t.is_app() && out.spine) {
      SpecTriple claimed{strip(out.spine->deco), out.spine->partial, out.spine->solution};
      r.spec = verify_spec(goal.ctx, mode.expected, t, claimed);
    }
  } catch (const TypeError& e) {
    r.diagnostic = e.diagnostic;
  }
  r.trace = engine.trace();
  return r;
}

RunReport run_program(const Program& program, const RunOptions& options) {
  RunReport report;
  for (const auto& st : program.statements)
    if (st.kind == Statement::Kind::Goal) report.goals.push_back(run_goal(st, options));
  return report;
}

namespace {

std::string location(const Span& s, const std::string& origin) {
  std::string loc = origin.empty() ? "" : origin + ":";
  if (s.valid()) loc += std::to_string(s.line) + ":" + std::to_string(s.col) + ":";
  return loc;
}

std::string indent(const std::string& block, const std::string& pad) {
  std::string out;
  std::size_t start = 0;
  while (start < block.size()) {
    std::size_t nl = block.find('\n', start);
    if (nl == std::string::npos) nl = block.size();
    out += pad + block.substr(start, nl - start) + "\n";
    start = nl + 1;
  }
  return out;
}

json span_json(const Span& s) {
  return {{"line", s.line}, {"col", s.col}, {"end_line", s.end_line}, {"end_col", s.end_col}};
}

json diagnostic_json(const Diagnostic& d) {
  json j;
  j["kind"] = std::string(to_string(d.kind));
  j["message"] = d.message;
  j["expected"] = d.expected ? json(pretty_type(*d.expected)) : json(nullptr);
  j["expected_solved"] = d.expected_solved ? json(pretty_type(*d.expected_solved)) : json(nullptr);
  j["synthesized"] = d.synthesized ? json(pretty_type(*d.synthesized)) : json(nullptr);
  if (d.contextual_match)
    j["contextual_match"] = {{"partial", pretty_type(d.contextual_match->partial)},
                             {"against", pretty_type(d.contextual_match->against)}};
  else
    j["contextual_match"] = nullptr;
  if (d.synthetic_match)
    j["synthetic_match"] = {{"partial", pretty_type(d.synthetic_match->partial)},
                            {"against", pretty_type(d.synthetic_match->against)},
                            {"arg_index", d.synthetic_match->arg_index}};
  else
    j["synthetic_match"] = nullptr;
  j["span"] = span_json(d.span);
  return j;
}

}  // namespace

std::string render_goal(const GoalReport& r, bool show_elab, bool color,
                        const std::string& origin) {
  std::string verb = r.kind == GoalKind::Check ? "check" : "synth";
  std::string head = origin.empty() ? "" : location(r.span, origin);
  if (!head.empty()) head += " ";
  head += verb + " " + r.text;
  if (r.expected && r.kind == GoalKind::Check) head += " : " + pretty_type(*r.expected);

  std::string out;
  if (r.ok) {
    out += head + "\n";
    out += "  type: " + pretty_type(*r.type) + "\n";
    if (show_elab) out += "  elaboration: " + pretty_term(*r.elaboration) + "\n";
  } else {
    const Diagnostic& d = *r.diagnostic;
    std::string where = location(d.span.valid() ? d.span : r.span, origin);
    out += head + "\n";
    if (!where.empty()) out += "  at " + where.substr(0, where.size() - 1) + "\n";
    out += indent(render_text(d, color), "  ");
  }
  if (!r.trace.empty()) {
    out += "  rules:";
    for (const auto& rule : r.trace) out += " " + rule;
    out += "\n";
  }
  if (r.spec) {
    if (r.spec->accepted) {
      out += "  spec: accepted (";
      for (std::size_t i = 0; i < r.spec->trace.size(); ++i)
        out += (i ? " " : "") + r.spec->trace[i];
      out += ")\n";
    } else {
      out += "  spec: rejected: " + r.spec->reason + "\n";
    }
  }
  return out;
}

std::string diagnostic_to_json(const Diagnostic& d) { return diagnostic_json(d).dump(); }

std::string goal_to_json(const GoalReport& r) {
  json j;
  j["goal"] = r.text;
  j["mode"] = r.kind == GoalKind::Check ? "check" : "synth";
  j["expected_type"] = r.expected ? json(pretty_type(*r.expected)) : json(nullptr);
  j["status"] = r.ok ? "ok" : "error";
  j["type"] = r.type ? json(pretty_type(*r.type)) : json(nullptr);
  j["elaboration"] = r.elaboration ? json(pretty_term(*r.elaboration)) : json(nullptr);
  j["diagnostic"] = r.diagnostic ? diagnostic_json(*r.diagnostic) : json(nullptr);
  if (!r.trace.empty()) j["trace"] = r.trace;
  if (r.spec)
    j["spec_verify"] = {{"accepted", r.spec->accepted},
                        {"trace", r.spec->trace},
                        {"reason", r.spec->reason}};
  j["span"] = span_json(r.span);
  return j.dump();
}

}  // namespace spinel
