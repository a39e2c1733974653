#ifndef SPINEL_SPEC_ORACLE_HPP
#define SPINEL_SPEC_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinel/decorated.hpp"
#include "spinel/syntax.hpp"

namespace spinel {

// Executable form of the declarative rules for type-argument inference.
// Nondeterministic guesses of contextual type arguments are resolved either
// by a claimed solution (verify_spec) or by enumerating a finite candidate
// set (search_spec, spec_infer_all).

struct SpecVerdict {
  bool accepted = false;
  std::vector<std::string> trace;  ///< rules applied, in order
  std::string reason;              ///< why it was rejected
};

/// A spine judgment's conclusion: partial type, partial elaboration, and the
/// guessed (contextual) solution.
struct SpecTriple {
  Type type;
  Term partial;
  Solution solution;
};

/// Typing judgment result: type and elaboration.
struct SpecTyping {
  Type type;
  Term elaboration;
};

/// Thrown when a search exceeds its step budget.
struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  /// Extra guesses offered at every quantifier, on top of the sub-terms of
  /// the contextual type of the application being typed.
  std::vector<Type> extra_candidates;
  std::size_t max_steps = 2'000'000;
};

/// Replays the rules on `t` (an application) guided by `claimed`: at each
/// quantifier the inserted type argument of the claimed partial elaboration
/// names the meta-variable, and it is guessed exactly when the claimed
/// solution binds it. Nested arguments are judged with spec_infer_all.
/// Finally checks the shim premise and, when `ctx_ty` is present, the
/// checking side conditions (otherwise the synthesizing ones).
SpecVerdict verify_spec(const Context& ctx, const std::optional<Type>& ctx_ty, const Term& t,
                        const SpecTriple& claimed);

/// All spine derivations of the application `t`, guessing each contextual
/// type argument from `candidates` or declining. No side conditions are
/// applied. When `candidates` is empty the default closure is used: the
/// well-formed sub-terms of `ctx_ty`, of the context's binding types, and of
/// the types synthesized by the spine's arguments.
std::vector<SpecTriple> search_spec(const Context& ctx, const std::optional<Type>& ctx_ty,
                                    const Term& t,
                                    const std::optional<std::vector<Type>>& candidates = {},
                                    std::size_t max_steps = 2'000'000);

/// Every (type, elaboration) the declarative system derives for `t`,
/// synthesizing when `ctx_ty` is empty and checking against it otherwise.
/// Guesses at a maximal application are drawn from the well-formed sub-terms
/// of its contextual type (complete: a justified guess must appear in it)
/// plus `options.extra_candidates`. Results are deduplicated.
std::vector<SpecTyping> spec_infer_all(const Context& ctx, const std::optional<Type>& ctx_ty,
                                       const Term& t, const SearchOptions& options = {});

/// Partial erasures of an internal term: annotations may be dropped and each
/// run of type arguments before a term argument may lose a suffix.
std::vector<Term> enumerate_erasures(const Term& e);

/// Conditions (1)-(4) of the weak completeness guarantee, evaluated over
/// corresponding sub-expressions of `e` and its erasure `t`. Spine judgments
/// in the conditions are the declarative ones with no guesses.
bool check_weak_completeness_conditions(const Context& ctx, const Term& e, const Term& t);

}  // namespace spinel

#endif  // SPINEL_SPEC_ORACLE_HPP
