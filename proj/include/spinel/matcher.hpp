#ifndef SPINEL_MATCHER_HPP
#define SPINEL_MATCHER_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinel/decorated.hpp"
#include "spinel/syntax.hpp"

namespace spinel {

/// One-sided first-order matching: finds the substitution over `metas` that
/// makes `pattern` alpha-equal to `target`. Metas may not be solved to types
/// mentioning variables bound inside the pattern or target.
std::optional<TypeSubst> match_first_order(const NameSet& metas, const Type& pattern,
                                           const Type& target);

struct MatchResult {
  Solution solution;
  Decorated decorated;
};

/// Why prototype matching failed.
struct MatchFailure {
  enum class Reason {
    Arity,     ///< the prototype demands an arrow the type cannot reveal
    Mismatch,  ///< first-order matching against an exact prototype failed
  };
  Reason reason;
  Type partial;                  ///< the sub-type that failed to match
  std::optional<Type> against;   ///< the exact prototype type, for Mismatch
};

/// Prototype matching. `rules`, when given, receives the rule applied at each
/// step (MArr, MType, M?, MForall, MCurr).
std::variant<MatchResult, MatchFailure> match_proto_explained(
    const NameSet& metas, const Type& t, const Prototype& p,
    std::vector<std::string>* rules = nullptr);

std::optional<MatchResult> match_proto(const NameSet& metas, const Type& t, const Prototype& p);

}  // namespace spinel

#endif  // SPINEL_MATCHER_HPP
