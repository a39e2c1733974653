#ifndef SPINEL_PARSER_HPP
#define SPINEL_PARSER_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinel/decorated.hpp"
#include "spinel/syntax.hpp"

namespace spinel {

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, Span span);
  Span span;
  std::string message;
};

enum class GoalKind { Check, Synth };

/// One statement of a program file. Declarations extend the context seen by
/// every later statement. `ctx` is the context a goal runs in, or the context
/// a declaration produces.
struct Statement {
  enum class Kind { Constructor, TypeVar, Assume, Goal };

  Kind kind;
  std::string name;             ///< declared name (not goals)
  std::size_t arity = 0;        ///< constructors
  std::optional<Type> type;     ///< assumed type, or a check goal's expected type
  std::optional<Term> term;     ///< goals
  GoalKind goal = GoalKind::Synth;
  Context ctx;
  Span span;
  std::string text;             ///< source of the goal's term
};

struct Program {
  std::vector<Statement> statements;
  Context context;  ///< after the last declaration
};

/// Grammar, one statement per `.`:
///
///     type Pair/2.        type (+)/2.        type X.
///     assume pair : forall X. forall Y. X -> Y -> Pair X Y.
///     check pair (\x. x) z : Pair (Nat -> Nat) Nat.
///     synth z.
///
/// `--` starts a line comment. Throws ParseError.
Program parse_program(std::string_view source, const Context& seed = Context{});

/// Parses one statement (without requiring the final `.`) against `ctx`.
/// Used by the REPL.
Statement parse_statement(std::string_view source, const Context& ctx);

/// With `allow_free`, unbound type variables and `?X` meta-variables are
/// accepted instead of rejected.
Type parse_type(std::string_view source, const Context& ctx, bool allow_free = false);
Term parse_term(std::string_view source, const Context& ctx, bool allow_free = false);
/// `?`, a type, or `? -> P`.
Prototype parse_prototype(std::string_view source, const Context& ctx, bool allow_free = false);

}  // namespace spinel

#endif  // SPINEL_PARSER_HPP
