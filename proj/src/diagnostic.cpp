#include "spinel/diagnostic.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "spinel/pretty.hpp"

namespace spinel {

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::UnannotatedLambda: return "UnannotatedLambda";
    case DiagnosticKind::UnsolvedMetaVariables: return "UnsolvedMetaVariables";
    case DiagnosticKind::ApplicandNotArrow: return "ApplicandNotArrow";
    case DiagnosticKind::ApplicandNotForall: return "ApplicandNotForall";
    case DiagnosticKind::TypeMismatch: return "TypeMismatch";
    case DiagnosticKind::SolutionConflict: return "SolutionConflict";
    case DiagnosticKind::ExplicitArgConflict: return "ExplicitArgConflict";
    case DiagnosticKind::UnboundName: return "UnboundName";
    case DiagnosticKind::ShadowedTypeVariable: return "ShadowedTypeVariable";
  }
  return "Unknown";
}

TypeError::TypeError(Diagnostic d) : std::runtime_error(d.message), diagnostic(std::move(d)) {}

std::string render_text(const Diagnostic& d, bool color) {
  std::vector<std::pair<std::string, std::string>> rows;
  bool applicand = d.kind == DiagnosticKind::ApplicandNotArrow ||
                   d.kind == DiagnosticKind::ApplicandNotForall;
  if (d.synthesized)
    rows.emplace_back(applicand ? "applicand type" : "synthesized type", pretty_type(*d.synthesized));
  if (d.expected) {
    std::string text = pretty_type(*d.expected);
    if (d.expected_solved) text += " := " + pretty_type(*d.expected_solved);
    rows.emplace_back("expected type", text);
  }
  if (d.contextual_match)
    rows.emplace_back("contextual match", pretty_type(d.contextual_match->partial) + " := " +
                                              pretty_type(d.contextual_match->against));
  if (d.synthetic_match)
    rows.emplace_back("synthetic match",
                      pretty_type(d.synthetic_match->partial) + " := " +
                          pretty_type(d.synthetic_match->against) + " (argument " +
                          std::to_string(d.synthetic_match->arg_index) + ")");
  rows.emplace_back("error", d.message);

  std::size_t width = 0;
  for (const auto& [label, _] : rows) width = std::max(width, label.size());

  std::string out;
  for (const auto& [label, text] : rows) {
    std::string padded = std::string(width - label.size(), ' ') + label + ":";
    if (color) padded = (label == "error" ? "\x1b[1;31m" : "\x1b[1m") + padded + "\x1b[0m";
    out += padded + " " + text + "\n";
  }
  return out;
}

}  // namespace spinel
