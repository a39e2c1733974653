#ifndef SPINEL_CORPUS_HPP
#define SPINEL_CORPUS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "spinel/decorated.hpp"
#include "spinel/syntax.hpp"

namespace spinel {

/// Declarations of the base context used by the generated test corpora:
/// constructors Nat, Bool, Pair/2, Sum/2 and a handful of polymorphic
/// combinators (pair, fst, left, right, id, konst, rapp, twice, bot, ...).
const std::string& corpus_prelude();
Context corpus_context();

struct TypedTerm {
  Term term;
  Type type;
};

struct CorpusConfig {
  std::size_t max_size = 6;         ///< term nodes, counting type arguments
  std::size_t max_lambda_depth = 2;
  std::size_t max_type_lambda_depth = 1;
  std::size_t per_size_limit = 600;  ///< terms kept per (scope, size)
  /// Lambda annotations; declared type variables in scope are added.
  std::vector<Type> annotations;
  /// Explicit type arguments; declared type variables in scope are added.
  std::vector<Type> type_arguments;
};

/// The default annotation and type-argument pools over corpus_context().
CorpusConfig default_corpus_config();

/// Well-typed internal terms of `ctx` up to `config.max_size`, smallest
/// first, each with its type. Deterministic.
std::vector<TypedTerm> enumerate_internal_terms(const Context& ctx, const CorpusConfig& config);

/// Every type built from `vars` and the constructors of `ctx`'s signature
/// with at most `max_size` nodes. Quantifiers bind names from `binders`.
std::vector<Type> enumerate_types(const Context& ctx, const std::vector<std::string>& vars,
                                  const std::vector<std::string>& binders, std::size_t max_size);

/// Prototypes whose exact leaves come from `leaves`, with at most
/// `max_arrows` leading `? ->`.
std::vector<Prototype> enumerate_prototypes(const std::vector<Type>& leaves,
                                            std::size_t max_arrows);

std::size_t prototype_size(const Prototype& p);

}  // namespace spinel

#endif  // SPINEL_CORPUS_HPP
