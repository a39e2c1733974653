#ifndef SPINEL_INFER_HPP
#define SPINEL_INFER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinel/decorated.hpp"
#include "spinel/diagnostic.hpp"
#include "spinel/syntax.hpp"

namespace spinel {

/// Synthesize when `expected` is empty, otherwise check against it.
struct Mode {
  std::optional<Type> expected;

  static Mode synth() { return {}; }
  static Mode check(Type t) { return {std::move(t)}; }
  bool is_check() const { return expected.has_value(); }
};

/// Result of a spine judgment.
struct SpineOutcome {
  Decorated deco;
  Term partial;
  /// Contextual solutions only; synthetic ones are applied eagerly to
  /// `partial` and `deco`.
  Solution solution;
  /// Synthetic solutions, kept for diagnostics.
  Solution synthetic;
  /// `partial` before synthetic solutions were applied.
  Term shadow;
  /// Synthesized type of the spine head.
  Type head_type;
  /// Prototype the spine was inferred under.
  Prototype proto;
  /// Per term argument, left to right: true when it was checked, false when
  /// its type was synthesized.
  std::vector<bool> checked_args;
};

struct InferOutcome {
  Type type;
  Term elaboration;
  /// For applications: the outcome of the maximal spine before discharge.
  std::optional<SpineOutcome> spine;
};

/// One inference run. Holds the meta-variable supply, an optional rule trace,
/// and an optional observer that sees every spine judgment as it completes.
/// Failures throw TypeError; broken engine invariants throw InternalError.
class Engine {
 public:
  using SpineObserver = std::function<void(const Context&, const Prototype&, const Term&,
                                           const SpineOutcome&)>;

  explicit Engine(bool record_trace = false) : record_trace_(record_trace) {}

  InferOutcome infer(const Context& ctx, const Mode& mode, const Term& t);

  /// Spine judgment. Entered with `?` or an exact prototype at a term
  /// application; type applications and heads require an arrow prototype.
  SpineOutcome spine_infer(const Context& ctx, const Prototype& p, const Term& t);

  /// Application judgment: applies `applicand` to term argument `arg`, the
  /// `index`-th term argument of its spine (leftmost is 1).
  SpineOutcome apply_arg(const Context& ctx, const SpineOutcome& applicand, const Term& arg,
                         std::size_t index, Span app_span = {});

  void set_observer(SpineObserver obs) { observer_ = std::move(obs); }
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  InferOutcome infer_app(const Context& ctx, const Mode& mode, const Term& t);
  std::string mint_meta(const std::string& bound);
  std::optional<Type> contextual_partial(const Decorated& w, const Prototype& proto) const;
  [[noreturn]] void fail(Diagnostic d) const;
  void rule(const char* name);

  bool record_trace_;
  std::vector<std::string> trace_;
  SpineObserver observer_;
  NameSet metas_;  // minted in the current maximal application
  Span root_span_;
  int depth_ = 0;
};

/// Runs a fresh engine and reports failure as a value.
std::variant<InferOutcome, Diagnostic> try_infer(const Context& ctx, const Mode& mode,
                                                 const Term& t);

}  // namespace spinel

#endif  // SPINEL_INFER_HPP
