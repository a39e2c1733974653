#include "spinel/corpus.hpp"

#include <map>
#include <utility>

#include "spinel/parser.hpp"
#include "spinel/pretty.hpp"

namespace spinel {

const std::string& corpus_prelude() {
  static const std::string text = R"(type Nat/0.
type Bool/0.
type Pair/2.
type Sum/2.
assume z : Nat.
assume tt : Bool.
assume s : Nat -> Nat.
assume pair : forall X. forall Y. X -> Y -> Pair X Y.
assume fst : forall X. forall Y. Pair X Y -> X.
assume left : forall X. forall Y. X -> Sum X Y.
assume right : forall X. forall Y. Y -> Sum X Y.
assume id : forall X. X -> X.
assume konst : forall X. forall Y. X -> Y -> X.
assume rapp : forall X. forall Y. X -> (X -> Y) -> Y.
assume twice : forall X. (X -> X) -> X -> X.
assume bot : forall X. X.
assume poly : (forall X. X -> X) -> Nat.
)";
  return text;
}

Context corpus_context() {
  static const Context ctx = parse_program(corpus_prelude()).context;
  return ctx;
}

CorpusConfig default_corpus_config() {
  const Context& ctx = corpus_context();
  CorpusConfig c;
  for (const char* src : {"Nat", "Bool", "Nat -> Nat"}) c.annotations.push_back(parse_type(src, ctx));
  for (const char* src : {"Nat", "Bool", "Nat -> Nat", "forall Y. Y -> Y"})
    c.type_arguments.push_back(parse_type(src, ctx));
  return c;
}

namespace {

struct Scope {
  Context ctx;
  std::size_t lambda_depth = 0;
  std::size_t type_lambda_depth = 0;
  std::vector<std::string> type_vars;  // introduced by type lambdas
  std::string key;
};

class TermEnumerator {
 public:
  TermEnumerator(const CorpusConfig& config) : config_(config) {}

  const std::vector<TypedTerm>& level(const Scope& scope, std::size_t n) {
    auto& levels = memo_[scope.key];
    if (levels.size() > n) return levels[n];
    if (levels.size() < n) level(scope, n - 1);
    levels.push_back(build(scope, n));
    return memo_[scope.key][n];
  }

 private:
  std::vector<TypedTerm> build(const Scope& scope, std::size_t n) {
    std::vector<TypedTerm> out;
    auto full = [&] { return out.size() >= config_.per_size_limit; };
    if (n == 0) return out;
    if (n == 1) {
      for (const auto& e : scope.ctx.entries())
        if (e.kind == Context::Entry::Kind::Term) out.push_back({Term::var(e.name), *e.type});
      return out;
    }
    std::vector<Type> targs = config_.type_arguments;
    std::vector<Type> anns = config_.annotations;
    for (const auto& v : scope.type_vars) {
      targs.push_back(Type::var(v));
      anns.push_back(Type::var(v));
    }
    // Type applications.
    for (const auto& f : level(scope, n - 1)) {
      if (!f.type.is_forall()) continue;
      for (const auto& s : targs) {
        if (full()) return out;
        out.push_back({Term::tapp(f.term, s), substitute(f.type.name(), s, f.type.body())});
      }
    }
    // Term applications.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      std::size_t j = n - 1 - i;
      for (const auto& f : level(scope, i)) {
        if (!f.type.is_arrow()) continue;
        for (const auto& a : level(scope, j)) {
          if (!alpha_equal(f.type.dom(), a.type)) continue;
          if (full()) return out;
          out.push_back({Term::app(f.term, a.term), f.type.cod()});
        }
      }
    }
    // Lambdas.
    if (scope.lambda_depth < config_.max_lambda_depth) {
      std::string x = "x" + std::to_string(scope.lambda_depth + 1);
      for (std::size_t k = 0; k < anns.size(); ++k) {
        Scope inner = scope;
        inner.ctx = scope.ctx.with_term(x, anns[k]);
        inner.lambda_depth++;
        inner.key = scope.key + "|" + x + ":" + pretty_type(anns[k]);
        for (const auto& b : level(inner, n - 1)) {
          if (full()) return out;
          out.push_back({Term::lam(x, anns[k], b.term), Type::arrow(anns[k], b.type)});
        }
      }
    }
    if (scope.type_lambda_depth < config_.max_type_lambda_depth) {
      std::string a = scope.type_lambda_depth == 0 ? "A" : "A" + std::to_string(scope.type_lambda_depth);
      Scope inner = scope;
      inner.ctx = scope.ctx.with_type_var(a);
      inner.type_lambda_depth++;
      inner.type_vars.push_back(a);
      inner.key = scope.key + "|" + a;
      for (const auto& b : level(inner, n - 1)) {
        if (full()) return out;
        out.push_back({Term::tlam(a, b.term), Type::forall(a, b.type)});
      }
    }
    return out;
  }

  const CorpusConfig& config_;
  std::map<std::string, std::vector<std::vector<TypedTerm>>> memo_;
};

}  // namespace

std::vector<TypedTerm> enumerate_internal_terms(const Context& ctx, const CorpusConfig& config) {
  TermEnumerator en(config);
  Scope root{ctx, 0, 0, {}, ""};
  std::vector<TypedTerm> out;
  for (std::size_t n = 1; n <= config.max_size; ++n)
    for (const auto& t : en.level(root, n)) out.push_back(t);
  return out;
}

namespace {

class TypeEnumerator {
 public:
  TypeEnumerator(const Context& ctx, std::vector<std::string> binders)
      : binders_(std::move(binders)) {
    for (const auto& [name, arity] : ctx.signature()) cons_.emplace_back(name, arity);
  }

  const std::vector<Type>& of_size(const std::vector<std::string>& vars, std::size_t depth,
                                   std::size_t n) {
    std::string key = std::to_string(depth) + ":" + std::to_string(n);
    for (const auto& v : vars) key += "," + v;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Type> out;
    if (n == 1) {
      for (const auto& v : vars) out.push_back(Type::var(v));
      for (const auto& [c, k] : cons_)
        if (k == 0) out.push_back(Type::con(c));
    } else {
      for (std::size_t i = 1; i + 1 < n; ++i)
        for (const auto& a : of_size(vars, depth, i))
          for (const auto& b : of_size(vars, depth, n - 1 - i)) out.push_back(Type::arrow(a, b));
      for (const auto& [c, k] : cons_) {
        if (k == 0) continue;
        con_apps(vars, depth, c, k, n - 1, out);
      }
      if (depth < binders_.size()) {
        auto inner = vars;
        inner.push_back(binders_[depth]);
        for (const auto& b : of_size(inner, depth + 1, n - 1))
          out.push_back(Type::forall(binders_[depth], b));
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  // All argument vectors of length k whose sizes sum to `budget`.
  void con_apps(const std::vector<std::string>& vars, std::size_t depth, const std::string& con,
                std::size_t k, std::size_t budget, std::vector<Type>& out) {
    std::vector<std::pair<std::vector<Type>, std::size_t>> frontier{{{}, budget}};
    for (std::size_t pos = 0; pos < k; ++pos) {
      std::vector<std::pair<std::vector<Type>, std::size_t>> next;
      std::size_t remaining_slots = k - pos - 1;
      for (auto& [prefix, left] : frontier) {
        for (std::size_t sz = 1; sz + remaining_slots <= left; ++sz) {
          if (remaining_slots == 0 && sz != left) continue;
          for (const auto& t : of_size(vars, depth, sz)) {
            auto p = prefix;
            p.push_back(t);
            next.emplace_back(std::move(p), left - sz);
          }
        }
      }
      frontier = std::move(next);
    }
    for (auto& [a, left] : frontier)
      if (left == 0) out.push_back(Type::con(con, a));
  }

  std::vector<std::pair<std::string, std::size_t>> cons_;
  std::vector<std::string> binders_;
  std::map<std::string, std::vector<Type>> memo_;
};

}  // namespace

std::vector<Type> enumerate_types(const Context& ctx, const std::vector<std::string>& vars,
                                  const std::vector<std::string>& binders, std::size_t max_size) {
  TypeEnumerator en(ctx, binders);
  std::vector<Type> out;
  for (std::size_t n = 1; n <= max_size; ++n)
    for (const auto& t : en.of_size(vars, 0, n)) out.push_back(t);
  return out;
}

std::vector<Prototype> enumerate_prototypes(const std::vector<Type>& leaves,
                                            std::size_t max_arrows) {
  std::vector<Prototype> bases{Prototype::unknown()};
  for (const auto& t : leaves) bases.push_back(Prototype::exact(t));
  std::vector<Prototype> out;
  for (const auto& b : bases) {
    Prototype p = b;
    out.push_back(p);
    for (std::size_t i = 0; i < max_arrows; ++i) {
      p = Prototype::arrow_to(p);
      out.push_back(p);
    }
  }
  return out;
}

std::size_t prototype_size(const Prototype& p) {
  switch (p.kind()) {
    case Prototype::Kind::Unknown:
      return 1;
    case Prototype::Kind::Exact:
      return p.type().size();
    case Prototype::Kind::ArrowTo:
      return 2 + prototype_size(p.rest());
  }
  return 0;
}

}  // namespace spinel
