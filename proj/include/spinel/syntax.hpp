#ifndef SPINEL_SYNTAX_HPP
#define SPINEL_SYNTAX_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinel {

/// Source extent of a parsed node. Lines and columns are 1-based; a
/// default-constructed span means "synthesized, no source".
struct Span {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return line > 0; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// Raised when the engine detects a broken invariant of its own. These are
/// bugs, never user errors.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

using NameSet = std::set<std::string>;

/// Meta-variables live in a reserved namespace: their names start with '?',
/// which the surface syntax cannot produce.
inline bool is_meta_name(std::string_view name) {
  return !name.empty() && name.front() == '?';
}

// ---------------------------------------------------------------------------
// Types

/// System F types plus uninterpreted constructors. Immutable; copies share
/// structure.
class Type {
 public:
  enum class Kind { Var, Arrow, Forall, Con };

  static Type var(std::string name);
  static Type arrow(Type dom, Type cod);
  static Type forall(std::string bound, Type body);
  static Type con(std::string name, std::vector<Type> args = {});

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_forall() const { return kind() == Kind::Forall; }
  bool is_con() const { return kind() == Kind::Con; }

  /// Variable name, quantifier bound name, or constructor name.
  const std::string& name() const { return node_->name; }
  const Type& dom() const { return node_->children.at(0); }
  const Type& cod() const { return node_->children.at(1); }
  const Type& body() const { return node_->children.at(0); }
  const std::vector<Type>& args() const { return node_->children; }

  /// Number of constructors (nodes) in the type.
  std::size_t size() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Type> children;
  };
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using TypeSubst = std::map<std::string, Type>;

NameSet free_type_vars(const Type& t);

/// Equality up to consistent renaming of bound variables.
bool alpha_equal(const Type& a, const Type& b);

/// Simultaneous capture-avoiding substitution.
Type substitute(const TypeSubst& s, const Type& t);

/// [replacement/name]t
Type substitute(const std::string& name, const Type& replacement, const Type& t);

/// Returns `base` if it is not in `avoid`, otherwise `base` suffixed with the
/// smallest positive integer that makes it fresh.
std::string fresh_name(const std::string& base, const NameSet& avoid);

/// Collects every subterm of `t` (including `t`), deduplicated up to
/// alpha-equivalence.
std::vector<Type> subterms(const Type& t);

// ---------------------------------------------------------------------------
// Terms

/// One AST for external and internal terms. A term is internal when every
/// lambda carries an annotation.
class Term {
 public:
  enum class Kind { Var, Lam, TLam, App, TApp };

  static Term var(std::string name, Span span = {});
  static Term lam(std::string bound, std::optional<Type> ann, Term body, Span span = {});
  static Term tlam(std::string bound, Term body, Span span = {});
  static Term app(Term fun, Term arg, Span span = {});
  static Term tapp(Term fun, Type targ, Span span = {});

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_lam() const { return kind() == Kind::Lam; }
  bool is_tlam() const { return kind() == Kind::TLam; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_tapp() const { return kind() == Kind::TApp; }
  /// Term or type application (the App predicate).
  bool is_application() const { return is_app() || is_tapp(); }

  /// Variable name or binder name.
  const std::string& name() const { return node_->name; }
  const std::optional<Type>& annotation() const { return node_->type; }
  const Type& type_arg() const { return *node_->type; }
  const Term& body() const { return node_->children.at(0); }
  const Term& fun() const { return node_->children.at(0); }
  const Term& arg() const { return node_->children.at(1); }
  const Span& span() const { return node_->span; }

  /// Same node with a different span.
  Term with_span(Span span) const;

  std::size_t size() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::optional<Type> type;
    std::vector<Term> children;
    Span span;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Structural equality modulo alpha-renaming of term and type binders;
/// spans are ignored.
bool term_alpha_equal(const Term& a, const Term& b);

/// Every lambda annotated.
bool is_internal(const Term& t);

/// One element of an application spine.
struct SpineArg {
  std::optional<Term> term;  ///< set for term arguments
  std::optional<Type> type;  ///< set for type arguments
  bool is_type() const { return type.has_value(); }
};

/// Head and arguments of the application spine of `t`, left to right.
struct Spine {
  Term head;
  std::vector<SpineArg> args;
};
Spine spine_of(const Term& t);

/// Applies `s` to the type arguments along the spine of `t` only; heads and
/// term arguments are left untouched.
Term substitute_spine(const TypeSubst& s, const Term& t);

// ---------------------------------------------------------------------------
// Contexts

using Signature = std::map<std::string, std::size_t, std::less<>>;

/// Ordered context of type-variable declarations and term bindings together
/// with the active constructor signature. Extension is O(1) and shares the
/// prefix.
class Context {
 public:
  struct Entry {
    enum class Kind { TypeVar, Term } kind;
    std::string name;
    std::optional<Type> type;
  };

  Context() = default;
  explicit Context(Signature sig);

  Context with_type_var(std::string name) const;
  Context with_term(std::string name, Type type) const;
  Context with_constructor(std::string name, std::size_t arity) const;

  /// Innermost binding of a term variable.
  std::optional<Type> lookup(std::string_view name) const;
  bool declares_type_var(std::string_view name) const;
  bool binds_term(std::string_view name) const;
  std::optional<std::size_t> arity(std::string_view con) const;

  const Signature& signature() const;
  /// Entries in declaration order.
  std::vector<Entry> entries() const;

 private:
  struct Node {
    Entry entry;
    std::shared_ptr<const Node> prev;
  };

  std::shared_ptr<const Signature> sig_;
  std::shared_ptr<const Node> tail_;
};

NameSet declared_type_vars(const Context& ctx);

/// FV(t) is declared in `ctx` and every constructor use matches its arity.
bool is_well_formed(const Context& ctx, const Type& t);

/// FV(t) - DTV(ctx).
NameSet meta_vars_of_type(const Context& ctx, const Type& t);

/// Meta-variables of a partial elaboration: the undeclared variables used as
/// type arguments along its spine.
NameSet meta_vars_of_term(const Context& ctx, const Term& p);

}  // namespace spinel

#endif  // SPINEL_SYNTAX_HPP
