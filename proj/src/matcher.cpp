#include "spinel/matcher.hpp"

#include <map>
#include <utility>

namespace spinel {

namespace {

class FirstOrderMatcher {
 public:
  explicit FirstOrderMatcher(const NameSet& metas) : metas_(metas) {}

  bool match(const Type& pat, const Type& tgt, int depth) {
    if (pat.is_var()) return match_var(pat, tgt);
    if (pat.kind() != tgt.kind()) return false;
    switch (pat.kind()) {
      case Type::Kind::Arrow:
        return match(pat.dom(), tgt.dom(), depth) && match(pat.cod(), tgt.cod(), depth);
      case Type::Kind::Con: {
        if (pat.name() != tgt.name() || pat.args().size() != tgt.args().size()) return false;
        for (std::size_t i = 0; i < pat.args().size(); ++i)
          if (!match(pat.args()[i], tgt.args()[i], depth)) return false;
        return true;
      }
      case Type::Kind::Forall: {
        pat_levels_.emplace_back(&pat.name(), depth);
        tgt_levels_.emplace_back(&tgt.name(), depth);
        bool ok = match(pat.body(), tgt.body(), depth + 1);
        pat_levels_.pop_back();
        tgt_levels_.pop_back();
        return ok;
      }
      case Type::Kind::Var:
        break;
    }
    return false;
  }

  TypeSubst take() { return std::move(solution_); }

 private:
  // Binders in scope, innermost last; names point into the types being matched.
  using Levels = std::vector<std::pair<const std::string*, int>>;

  static const int* level(const Levels& l, const std::string& k) {
    for (auto it = l.rbegin(); it != l.rend(); ++it)
      if (*it->first == k) return &it->second;
    return nullptr;
  }

  bool match_var(const Type& pat, const Type& tgt) {
    if (const int* lvl = level(pat_levels_, pat.name())) {
      if (!tgt.is_var()) return false;
      const int* t = level(tgt_levels_, tgt.name());
      return t && *t == *lvl;
    }
    if (metas_.contains(pat.name())) {
      // A solution may not mention variables bound at this occurrence.
      if (!tgt_levels_.empty())
        for (const auto& v : free_type_vars(tgt))
          if (level(tgt_levels_, v)) return false;
      auto [it, inserted] = solution_.emplace(pat.name(), tgt);
      return inserted || alpha_equal(it->second, tgt);
    }
    return tgt.is_var() && !level(tgt_levels_, tgt.name()) && tgt.name() == pat.name();
  }

  const NameSet& metas_;
  TypeSubst solution_;
  Levels pat_levels_;
  Levels tgt_levels_;
};

struct ProtoMatcher {
  std::vector<std::string>* rules;

  void note(const char* rule) const {
    if (rules) rules->emplace_back(rule);
  }

  std::variant<MatchResult, MatchFailure> run(const NameSet& metas, const Type& t,
                                              const Prototype& p) const {
    switch (p.kind()) {
      case Prototype::Kind::Unknown:
        note("M?");
        return MatchResult{Solution{}, Decorated::plain(t)};

      case Prototype::Kind::Exact: {
        note("MType");
        auto sub = match_first_order(metas, t, p.type());
        if (!sub) return MatchFailure{MatchFailure::Reason::Mismatch, t, p.type()};
        Solution sol;
        for (auto& [meta, ty] : *sub)
          sol = sol.compose(meta, ty, Provenance::contextual(t, p.type()));
        return MatchResult{std::move(sol), Decorated::plain(t)};
      }

      case Prototype::Kind::ArrowTo:
        switch (t.kind()) {
          case Type::Kind::Arrow: {
            note("MArr");
            auto r = run(metas, t.cod(), p.rest());
            if (auto* ok = std::get_if<MatchResult>(&r))
              return MatchResult{std::move(ok->solution), Decorated::arrow(t.dom(), ok->decorated)};
            return r;
          }
          case Type::Kind::Forall: {
            note("MForall");
            // The bound variable becomes solvable; keep it distinct from the
            // caller's metas and from anything the prototype mentions.
            NameSet avoid = free_type_vars(t.body());
            avoid.erase(t.name());
            avoid.insert(metas.begin(), metas.end());
            avoid.merge(free_type_vars(p));
            std::string bound = fresh_name(t.name(), avoid);
            Type body = bound == t.name() ? t.body() : substitute(t.name(), Type::var(bound), t.body());
            NameSet inner = metas;
            inner.insert(bound);
            auto r = run(inner, body, p);
            auto* ok = std::get_if<MatchResult>(&r);
            if (!ok) return r;
            std::optional<Type> deco;
            if (const auto* b = ok->solution.find(bound)) deco = b->type;
            return MatchResult{ok->solution.without(bound),
                               Decorated::forall(bound, std::move(deco), ok->decorated)};
          }
          case Type::Kind::Var:
            if (metas.contains(t.name())) {
              note("MCurr");
              return MatchResult{Solution{}, Decorated::stuck(t.name(), p)};
            }
            return MatchFailure{MatchFailure::Reason::Arity, t, std::nullopt};
          case Type::Kind::Con:
            return MatchFailure{MatchFailure::Reason::Arity, t, std::nullopt};
        }
    }
    throw InternalError("match_proto: unknown prototype");
  }
};

}  // namespace

std::optional<TypeSubst> match_first_order(const NameSet& metas, const Type& pattern,
                                           const Type& target) {
  FirstOrderMatcher m(metas);
  if (!m.match(pattern, target, 0)) return std::nullopt;
  return m.take();
}

std::variant<MatchResult, MatchFailure> match_proto_explained(const NameSet& metas,
                                                              const Type& t, const Prototype& p,
                                                              std::vector<std::string>* rules) {
  return ProtoMatcher{rules}.run(metas, t, p);
}

std::optional<MatchResult> match_proto(const NameSet& metas, const Type& t, const Prototype& p) {
  auto r = match_proto_explained(metas, t, p);
  if (auto* ok = std::get_if<MatchResult>(&r)) return std::move(*ok);
  return std::nullopt;
}

}  // namespace spinel
