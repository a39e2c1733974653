#ifndef SPINEL_DECORATED_HPP
#define SPINEL_DECORATED_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "spinel/syntax.hpp"

namespace spinel {

/// Contextual-type skeleton handed down an application spine:
/// `?`, an exact type, or `? -> P`.
class Prototype {
 public:
  enum class Kind { Unknown, Exact, ArrowTo };

  static Prototype unknown();
  static Prototype exact(Type t);
  static Prototype arrow_to(Prototype rest);

  Kind kind() const { return node_->kind; }
  bool is_unknown() const { return kind() == Kind::Unknown; }
  bool is_exact() const { return kind() == Kind::Exact; }
  bool is_arrow_to() const { return kind() == Kind::ArrowTo; }

  const Type& type() const { return *node_->type; }
  const Prototype& rest() const { return *node_->rest; }

  /// The Unknown or Exact prototype terminating the ArrowTo chain.
  const Prototype& base() const;

 private:
  struct Node {
    Kind kind;
    std::optional<Type> type;
    std::shared_ptr<const Prototype> rest;
  };
  explicit Prototype(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Output of prototype matching. `Forall` with no decoration is the
/// uninformative `X=X` case; `Stuck` records a meta-variable that must later
/// match an over-applied arrow prototype.
class Decorated {
 public:
  enum class Kind { Plain, Arrow, Forall, Stuck };

  static Decorated plain(Type t);
  static Decorated arrow(Type dom, Decorated cod);
  static Decorated forall(std::string bound, std::optional<Type> deco, Decorated body);
  static Decorated stuck(std::string meta, Prototype proto);

  Kind kind() const { return node_->kind; }
  bool is_plain() const { return kind() == Kind::Plain; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_forall() const { return kind() == Kind::Forall; }
  bool is_stuck() const { return kind() == Kind::Stuck; }

  /// Plain: the type. Arrow: the domain.
  const Type& type() const { return *node_->type; }
  const Type& dom() const { return *node_->type; }
  const Decorated& cod() const { return *node_->child; }
  const Decorated& body() const { return *node_->child; }
  /// Forall bound name, or the stuck meta-variable.
  const std::string& name() const { return node_->name; }
  /// Forall decoration; empty when uninformative.
  const std::optional<Type>& decoration() const { return node_->type; }
  const Prototype& proto() const { return *node_->proto; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::optional<Type> type;
    std::shared_ptr<const Decorated> child;
    std::shared_ptr<const Prototype> proto;
  };
  explicit Decorated(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Where a meta-variable's solution came from. `partial` and `against` are
/// the two sides of the match that produced it, kept for diagnostics.
struct Provenance {
  enum class Origin { Contextual, Synthetic, Explicit };

  Origin origin = Origin::Explicit;
  std::optional<Type> partial;
  std::optional<Type> against;
  std::size_t arg_index = 0;  ///< 1-based term argument, synthetic only

  static Provenance contextual(std::optional<Type> partial, Type against);
  static Provenance synthetic(std::size_t arg_index, Type partial, Type against);
  static Provenance explicit_arg();
};

/// Finite map from meta-variables to types with provenance.
class Solution {
 public:
  struct Binding {
    Type type;
    Provenance origin;
  };
  using Map = std::map<std::string, Binding>;

  Solution() = default;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  bool contains(const std::string& meta) const { return map_.contains(meta); }
  const Binding* find(const std::string& meta) const;
  NameSet domain() const;

  /// [type/meta] o this. The meta must not already be bound.
  Solution compose(const std::string& meta, Type type, Provenance origin) const;
  Solution without(const std::string& meta) const;

  TypeSubst as_subst() const;
  Type apply(const Type& t) const { return substitute(as_subst(), t); }

  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

 private:
  Map map_;
};

/// Same domain and alpha-equal ranges; provenance is ignored.
bool solution_equal(const Solution& a, const Solution& b);

Type subst_type(const Solution& s, const Type& t);

Solution compose(const Solution& s, const std::string& meta, Type type, Provenance origin);

/// Partial substitution on decorated types. A stuck decoration whose
/// meta-variable is mapped gets re-matched against its prototype; the result
/// is empty when that match fails.
std::optional<Decorated> subst_decorated(const Solution& s, const Decorated& w);
std::optional<Decorated> subst_decorated(const TypeSubst& s, const Decorated& w);

/// Renames free occurrences of a variable, including stuck meta-variables.
Decorated rename_decorated(const Decorated& w, const std::string& from, const std::string& to);

/// The plain type underneath the decorations.
Type strip(const Decorated& w);

/// Leading ArrowTo constructors.
std::size_t proto_arity(const Prototype& p);
/// Leading decorated arrows (quantifiers stop the count).
std::size_t deco_arity(const Decorated& w);

bool prototype_alpha_equal(const Prototype& a, const Prototype& b);
bool decorated_alpha_equal(const Decorated& a, const Decorated& b);

NameSet free_type_vars(const Prototype& p);
NameSet free_type_vars(const Decorated& w);

}  // namespace spinel

#endif  // SPINEL_DECORATED_HPP
