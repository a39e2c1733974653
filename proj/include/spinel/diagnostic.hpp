#ifndef SPINEL_DIAGNOSTIC_HPP
#define SPINEL_DIAGNOSTIC_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spinel/syntax.hpp"

namespace spinel {

enum class DiagnosticKind {
  UnannotatedLambda,
  UnsolvedMetaVariables,
  ApplicandNotArrow,
  ApplicandNotForall,
  TypeMismatch,
  SolutionConflict,
  ExplicitArgConflict,
  UnboundName,
  ShadowedTypeVariable,
};

std::string_view to_string(DiagnosticKind kind);

/// The two sides of the match that explains an expected type.
struct MatchNote {
  Type partial;
  Type against;
  std::size_t arg_index = 0;  ///< synthetic matches only; leftmost argument is 1
};

/// A type error, carrying the pieces needed to explain it locally: the
/// expected type (possibly with meta-variables), what was synthesized, and
/// the contextual or synthetic match that informed the expectation.
struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
  std::optional<Type> expected;
  /// The expected type after applying known solutions, when that differs.
  std::optional<Type> expected_solved;
  std::optional<Type> synthesized;
  std::optional<MatchNote> contextual_match;
  std::optional<MatchNote> synthetic_match;
  Span span;
};

/// Thrown by the engine; carries the diagnostic.
struct TypeError : std::runtime_error {
  explicit TypeError(Diagnostic d);
  Diagnostic diagnostic;
  /// Nesting depth of the judgment that raised it; lets callers tell an
  /// argument's own failure from one deep inside it.
  int depth = 0;
};

/// Labelled block in the style
///
///     synthesized type: B -> B
///        expected type: ?X := Nat -> Nat
///     contextual match: Pair ?X ?Y := Pair (Nat -> Nat) Nat
///                error: type mismatch
std::string render_text(const Diagnostic& d, bool color = false);

}  // namespace spinel

#endif  // SPINEL_DIAGNOSTIC_HPP
