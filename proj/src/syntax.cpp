#include "spinel/syntax.hpp"

#include <algorithm>
#include <utility>

namespace spinel {

// ---------------------------------------------------------------------------
// Types

Type Type::var(std::string name) {
  return Type(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}}));
}

Type Type::arrow(Type dom, Type cod) {
  return Type(std::make_shared<const Node>(
      Node{Kind::Arrow, {}, {std::move(dom), std::move(cod)}}));
}

Type Type::forall(std::string bound, Type body) {
  return Type(std::make_shared<const Node>(
      Node{Kind::Forall, std::move(bound), {std::move(body)}}));
}

Type Type::con(std::string name, std::vector<Type> args) {
  return Type(std::make_shared<const Node>(
      Node{Kind::Con, std::move(name), std::move(args)}));
}

std::size_t Type::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

namespace {

void collect_free(const Type& t, NameSet& bound, NameSet& out) {
  switch (t.kind()) {
    case Type::Kind::Var:
      if (!bound.contains(t.name())) out.insert(t.name());
      return;
    case Type::Kind::Arrow:
      collect_free(t.dom(), bound, out);
      collect_free(t.cod(), bound, out);
      return;
    case Type::Kind::Forall: {
      bool inserted = bound.insert(t.name()).second;
      collect_free(t.body(), bound, out);
      if (inserted) bound.erase(t.name());
      return;
    }
    case Type::Kind::Con:
      for (const auto& a : t.args()) collect_free(a, bound, out);
      return;
  }
}

// Binder environments map a bound name to its de Bruijn level.
using Levels = std::map<std::string, int, std::less<>>;

bool alpha_eq(const Type& a, const Type& b, Levels& la, Levels& lb, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Var: {
      auto ia = la.find(a.name());
      auto ib = lb.find(b.name());
      if (ia == la.end() && ib == lb.end()) return a.name() == b.name();
      if (ia == la.end() || ib == lb.end()) return false;
      return ia->second == ib->second;
    }
    case Type::Kind::Arrow:
      return alpha_eq(a.dom(), b.dom(), la, lb, depth) &&
             alpha_eq(a.cod(), b.cod(), la, lb, depth);
    case Type::Kind::Forall: {
      auto saved_a = la.find(a.name()) != la.end() ? std::optional<int>(la[a.name()]) : std::nullopt;
      auto saved_b = lb.find(b.name()) != lb.end() ? std::optional<int>(lb[b.name()]) : std::nullopt;
      la[a.name()] = depth;
      lb[b.name()] = depth;
      bool ok = alpha_eq(a.body(), b.body(), la, lb, depth + 1);
      if (saved_a) la[a.name()] = *saved_a; else la.erase(a.name());
      if (saved_b) lb[b.name()] = *saved_b; else lb.erase(b.name());
      return ok;
    }
    case Type::Kind::Con: {
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_eq(a.args()[i], b.args()[i], la, lb, depth)) return false;
      return true;
    }
  }
  return false;
}

NameSet range_free_vars(const TypeSubst& s) {
  NameSet out;
  for (const auto& [_, ty] : s) {
    auto fv = free_type_vars(ty);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

Type subst(const TypeSubst& s, const Type& t) {
  if (s.empty()) return t;
  switch (t.kind()) {
    case Type::Kind::Var: {
      auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case Type::Kind::Arrow:
      return Type::arrow(subst(s, t.dom()), subst(s, t.cod()));
    case Type::Kind::Con: {
      std::vector<Type> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(subst(s, a));
      return Type::con(t.name(), std::move(args));
    }
    case Type::Kind::Forall: {
      TypeSubst inner = s;
      inner.erase(t.name());
      // Only bindings that actually reach the body matter for capture.
      NameSet body_fv = free_type_vars(t.body());
      for (auto it = inner.begin(); it != inner.end();) {
        if (!body_fv.contains(it->first)) it = inner.erase(it); else ++it;
      }
      if (inner.empty()) return t;
      NameSet range_fv = range_free_vars(inner);
      if (!range_fv.contains(t.name()))
        return Type::forall(t.name(), subst(inner, t.body()));
      NameSet avoid = range_fv;
      avoid.insert(body_fv.begin(), body_fv.end());
      for (const auto& [k, _] : inner) avoid.insert(k);
      std::string fresh = fresh_name(t.name(), avoid);
      inner.insert_or_assign(t.name(), Type::var(fresh));
      return Type::forall(fresh, subst(inner, t.body()));
    }
  }
  return t;
}

void collect_subterms(const Type& t, std::vector<Type>& out) {
  for (const auto& seen : out)
    if (alpha_equal(seen, t)) goto children;
  out.push_back(t);
children:
  switch (t.kind()) {
    case Type::Kind::Var:
      return;
    case Type::Kind::Arrow:
      collect_subterms(t.dom(), out);
      collect_subterms(t.cod(), out);
      return;
    case Type::Kind::Forall:
      collect_subterms(t.body(), out);
      return;
    case Type::Kind::Con:
      for (const auto& a : t.args()) collect_subterms(a, out);
      return;
  }
}

}  // namespace

NameSet free_type_vars(const Type& t) {
  NameSet bound, out;
  collect_free(t, bound, out);
  return out;
}

bool alpha_equal(const Type& a, const Type& b) {
  Levels la, lb;
  return alpha_eq(a, b, la, lb, 0);
}

Type substitute(const TypeSubst& s, const Type& t) { return subst(s, t); }

Type substitute(const std::string& name, const Type& replacement, const Type& t) {
  return subst(TypeSubst{{name, replacement}}, t);
}

std::string fresh_name(const std::string& base, const NameSet& avoid) {
  if (!avoid.contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

std::vector<Type> subterms(const Type& t) {
  std::vector<Type> out;
  collect_subterms(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Terms

Term Term::var(std::string name, Span span) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}, span}));
}

Term Term::lam(std::string bound, std::optional<Type> ann, Term body, Span span) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Lam, std::move(bound), std::move(ann), {std::move(body)}, span}));
}

Term Term::tlam(std::string bound, Term body, Span span) {
  return Term(std::make_shared<const Node>(
      Node{Kind::TLam, std::move(bound), {}, {std::move(body)}, span}));
}

Term Term::app(Term fun, Term arg, Span span) {
  return Term(std::make_shared<const Node>(
      Node{Kind::App, {}, {}, {std::move(fun), std::move(arg)}, span}));
}

Term Term::tapp(Term fun, Type targ, Span span) {
  return Term(std::make_shared<const Node>(
      Node{Kind::TApp, {}, std::move(targ), {std::move(fun)}, span}));
}

Term Term::with_span(Span span) const {
  Node copy = *node_;
  copy.span = span;
  return Term(std::make_shared<const Node>(std::move(copy)));
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

namespace {

struct TermLevels {
  Levels terms_a, terms_b, types_a, types_b;
};

// Renames the bound type variables of both sides to a shared canonical name
// so that annotation types can be compared with plain alpha_equal.
bool term_eq(const Term& a, const Term& b, TermLevels& env, int depth,
             TypeSubst& ren_a, TypeSubst& ren_b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      auto ia = env.terms_a.find(a.name());
      auto ib = env.terms_b.find(b.name());
      if (ia == env.terms_a.end() && ib == env.terms_b.end()) return a.name() == b.name();
      if (ia == env.terms_a.end() || ib == env.terms_b.end()) return false;
      return ia->second == ib->second;
    }
    case Term::Kind::Lam: {
      if (a.annotation().has_value() != b.annotation().has_value()) return false;
      if (a.annotation() &&
          !alpha_equal(subst(ren_a, *a.annotation()), subst(ren_b, *b.annotation())))
        return false;
      auto sa = env.terms_a.contains(a.name()) ? std::optional<int>(env.terms_a[a.name()]) : std::nullopt;
      auto sb = env.terms_b.contains(b.name()) ? std::optional<int>(env.terms_b[b.name()]) : std::nullopt;
      env.terms_a[a.name()] = depth;
      env.terms_b[b.name()] = depth;
      bool ok = term_eq(a.body(), b.body(), env, depth + 1, ren_a, ren_b);
      if (sa) env.terms_a[a.name()] = *sa; else env.terms_a.erase(a.name());
      if (sb) env.terms_b[b.name()] = *sb; else env.terms_b.erase(b.name());
      return ok;
    }
    case Term::Kind::TLam: {
      std::string canon = "%" + std::to_string(depth);
      TypeSubst ra = ren_a, rb = ren_b;
      ra.insert_or_assign(a.name(), Type::var(canon));
      rb.insert_or_assign(b.name(), Type::var(canon));
      return term_eq(a.body(), b.body(), env, depth + 1, ra, rb);
    }
    case Term::Kind::App:
      return term_eq(a.fun(), b.fun(), env, depth, ren_a, ren_b) &&
             term_eq(a.arg(), b.arg(), env, depth, ren_a, ren_b);
    case Term::Kind::TApp:
      return alpha_equal(subst(ren_a, a.type_arg()), subst(ren_b, b.type_arg())) &&
             term_eq(a.fun(), b.fun(), env, depth, ren_a, ren_b);
  }
  return false;
}

}  // namespace

bool term_alpha_equal(const Term& a, const Term& b) {
  TermLevels env;
  TypeSubst ra, rb;
  return term_eq(a, b, env, 0, ra, rb);
}

bool is_internal(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::Lam:
      return t.annotation().has_value() && is_internal(t.body());
    case Term::Kind::TLam:
      return is_internal(t.body());
    case Term::Kind::App:
      return is_internal(t.fun()) && is_internal(t.arg());
    case Term::Kind::TApp:
      return is_internal(t.fun());
  }
  return false;
}

Spine spine_of(const Term& t) {
  std::vector<SpineArg> rev;
  const Term* cur = &t;
  while (cur->is_application()) {
    if (cur->is_app()) rev.push_back(SpineArg{cur->arg(), std::nullopt});
    else rev.push_back(SpineArg{std::nullopt, cur->type_arg()});
    cur = &cur->fun();
  }
  std::reverse(rev.begin(), rev.end());
  return Spine{*cur, std::move(rev)};
}

Term substitute_spine(const TypeSubst& s, const Term& t) {
  if (s.empty()) return t;
  if (t.is_app()) return Term::app(substitute_spine(s, t.fun()), t.arg(), t.span());
  if (t.is_tapp())
    return Term::tapp(substitute_spine(s, t.fun()), subst(s, t.type_arg()), t.span());
  return t;
}

// ---------------------------------------------------------------------------
// Contexts

Context::Context(Signature sig) : sig_(std::make_shared<const Signature>(std::move(sig))) {}

Context Context::with_type_var(std::string name) const {
  Context out = *this;
  out.tail_ = std::make_shared<const Node>(
      Node{Entry{Entry::Kind::TypeVar, std::move(name), std::nullopt}, tail_});
  return out;
}

Context Context::with_term(std::string name, Type type) const {
  Context out = *this;
  out.tail_ = std::make_shared<const Node>(
      Node{Entry{Entry::Kind::Term, std::move(name), std::move(type)}, tail_});
  return out;
}

Context Context::with_constructor(std::string name, std::size_t arity) const {
  Context out = *this;
  Signature sig = sig_ ? *sig_ : Signature{};
  sig[std::move(name)] = arity;
  out.sig_ = std::make_shared<const Signature>(std::move(sig));
  return out;
}

std::optional<Type> Context::lookup(std::string_view name) const {
  for (const Node* n = tail_.get(); n != nullptr; n = n->prev.get()) {
    if (n->entry.kind == Entry::Kind::Term && n->entry.name == name) return n->entry.type;
  }
  return std::nullopt;
}

bool Context::declares_type_var(std::string_view name) const {
  for (const Node* n = tail_.get(); n != nullptr; n = n->prev.get()) {
    if (n->entry.kind == Entry::Kind::TypeVar && n->entry.name == name) return true;
  }
  return false;
}

bool Context::binds_term(std::string_view name) const { return lookup(name).has_value(); }

std::optional<std::size_t> Context::arity(std::string_view con) const {
  if (!sig_) return std::nullopt;
  auto it = sig_->find(con);
  if (it == sig_->end()) return std::nullopt;
  return it->second;
}

const Signature& Context::signature() const {
  static const Signature empty;
  return sig_ ? *sig_ : empty;
}

std::vector<Context::Entry> Context::entries() const {
  std::vector<Entry> out;
  for (const Node* n = tail_.get(); n != nullptr; n = n->prev.get()) out.push_back(n->entry);
  std::reverse(out.begin(), out.end());
  return out;
}

NameSet declared_type_vars(const Context& ctx) {
  NameSet out;
  for (const auto& e : ctx.entries())
    if (e.kind == Context::Entry::Kind::TypeVar) out.insert(e.name);
  return out;
}

namespace {

bool arities_ok(const Context& ctx, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Var:
      return true;
    case Type::Kind::Arrow:
      return arities_ok(ctx, t.dom()) && arities_ok(ctx, t.cod());
    case Type::Kind::Forall:
      return arities_ok(ctx, t.body());
    case Type::Kind::Con: {
      auto n = ctx.arity(t.name());
      if (!n || *n != t.args().size()) return false;
      for (const auto& a : t.args())
        if (!arities_ok(ctx, a)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_well_formed(const Context& ctx, const Type& t) {
  for (const auto& v : free_type_vars(t))
    if (!ctx.declares_type_var(v)) return false;
  return arities_ok(ctx, t);
}

NameSet meta_vars_of_type(const Context& ctx, const Type& t) {
  NameSet out;
  for (const auto& v : free_type_vars(t))
    if (!ctx.declares_type_var(v)) out.insert(v);
  return out;
}

NameSet meta_vars_of_term(const Context& ctx, const Term& p) {
  NameSet out;
  const Term* cur = &p;
  while (cur->is_application()) {
    if (cur->is_tapp()) {
      const Type& arg = cur->type_arg();
      if (arg.is_var() && !ctx.declares_type_var(arg.name())) out.insert(arg.name());
    }
    cur = &cur->fun();
  }
  return out;
}

}  // namespace spinel
