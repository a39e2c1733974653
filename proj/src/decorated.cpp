#include "spinel/decorated.hpp"

#include <utility>

#include "spinel/matcher.hpp"

namespace spinel {

// ---------------------------------------------------------------------------
// Prototypes

Prototype Prototype::unknown() {
  return Prototype(std::make_shared<const Node>(Node{Kind::Unknown, std::nullopt, nullptr}));
}

Prototype Prototype::exact(Type t) {
  return Prototype(std::make_shared<const Node>(Node{Kind::Exact, std::move(t), nullptr}));
}

Prototype Prototype::arrow_to(Prototype rest) {
  return Prototype(std::make_shared<const Node>(
      Node{Kind::ArrowTo, std::nullopt, std::make_shared<const Prototype>(std::move(rest))}));
}

const Prototype& Prototype::base() const {
  const Prototype* p = this;
  while (p->is_arrow_to()) p = &p->rest();
  return *p;
}

std::size_t proto_arity(const Prototype& p) {
  std::size_t n = 0;
  for (const Prototype* cur = &p; cur->is_arrow_to(); cur = &cur->rest()) ++n;
  return n;
}

bool prototype_alpha_equal(const Prototype& a, const Prototype& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Prototype::Kind::Unknown:
      return true;
    case Prototype::Kind::Exact:
      return alpha_equal(a.type(), b.type());
    case Prototype::Kind::ArrowTo:
      return prototype_alpha_equal(a.rest(), b.rest());
  }
  return false;
}

NameSet free_type_vars(const Prototype& p) {
  const Prototype& b = p.base();
  return b.is_exact() ? free_type_vars(b.type()) : NameSet{};
}

// ---------------------------------------------------------------------------
// Decorated types

Decorated Decorated::plain(Type t) {
  return Decorated(std::make_shared<const Node>(
      Node{Kind::Plain, {}, std::move(t), nullptr, nullptr}));
}

Decorated Decorated::arrow(Type dom, Decorated cod) {
  return Decorated(std::make_shared<const Node>(
      Node{Kind::Arrow, {}, std::move(dom), std::make_shared<const Decorated>(std::move(cod)),
           nullptr}));
}

Decorated Decorated::forall(std::string bound, std::optional<Type> deco, Decorated body) {
  return Decorated(std::make_shared<const Node>(
      Node{Kind::Forall, std::move(bound), std::move(deco),
           std::make_shared<const Decorated>(std::move(body)), nullptr}));
}

Decorated Decorated::stuck(std::string meta, Prototype proto) {
  return Decorated(std::make_shared<const Node>(
      Node{Kind::Stuck, std::move(meta), std::nullopt, nullptr,
           std::make_shared<const Prototype>(std::move(proto))}));
}

NameSet free_type_vars(const Decorated& w) {
  switch (w.kind()) {
    case Decorated::Kind::Plain:
      return free_type_vars(w.type());
    case Decorated::Kind::Arrow: {
      NameSet out = free_type_vars(w.dom());
      out.merge(free_type_vars(w.cod()));
      return out;
    }
    case Decorated::Kind::Forall: {
      NameSet out = free_type_vars(w.body());
      out.erase(w.name());
      if (w.decoration()) out.merge(free_type_vars(*w.decoration()));
      return out;
    }
    case Decorated::Kind::Stuck: {
      NameSet out = free_type_vars(w.proto());
      out.insert(w.name());
      return out;
    }
  }
  return {};
}

Type strip(const Decorated& w) {
  switch (w.kind()) {
    case Decorated::Kind::Plain:
      return w.type();
    case Decorated::Kind::Arrow:
      return Type::arrow(w.dom(), strip(w.cod()));
    case Decorated::Kind::Forall:
      return Type::forall(w.name(), strip(w.body()));
    case Decorated::Kind::Stuck:
      return Type::var(w.name());
  }
  throw InternalError("strip: unknown decorated type");
}

std::size_t deco_arity(const Decorated& w) {
  std::size_t n = 0;
  for (const Decorated* cur = &w; cur->is_arrow(); cur = &cur->cod()) ++n;
  return n;
}

Decorated rename_decorated(const Decorated& w, const std::string& from, const std::string& to) {
  if (from == to) return w;
  switch (w.kind()) {
    case Decorated::Kind::Plain:
      return Decorated::plain(substitute(from, Type::var(to), w.type()));
    case Decorated::Kind::Arrow:
      return Decorated::arrow(substitute(from, Type::var(to), w.dom()),
                              rename_decorated(w.cod(), from, to));
    case Decorated::Kind::Forall: {
      if (w.name() == from) return w;
      if (w.name() != to) {
        return Decorated::forall(w.name(), w.decoration(), rename_decorated(w.body(), from, to));
      }
      NameSet avoid = free_type_vars(w.body());
      avoid.insert(from);
      avoid.insert(to);
      std::string fresh = fresh_name(w.name(), avoid);
      Decorated body = rename_decorated(w.body(), w.name(), fresh);
      return Decorated::forall(fresh, w.decoration(), rename_decorated(body, from, to));
    }
    case Decorated::Kind::Stuck:
      return w.name() == from ? Decorated::stuck(to, w.proto()) : w;
  }
  return w;
}

namespace {

std::optional<Decorated> subst_deco(const TypeSubst& s, const Decorated& w) {
  if (s.empty()) return w;
  switch (w.kind()) {
    case Decorated::Kind::Plain:
      return Decorated::plain(substitute(s, w.type()));
    case Decorated::Kind::Arrow: {
      auto cod = subst_deco(s, w.cod());
      if (!cod) return std::nullopt;
      return Decorated::arrow(substitute(s, w.dom()), *cod);
    }
    case Decorated::Kind::Forall: {
      TypeSubst inner = s;
      inner.erase(w.name());
      NameSet body_fv = free_type_vars(w.body());
      for (auto it = inner.begin(); it != inner.end();) {
        if (!body_fv.contains(it->first)) it = inner.erase(it); else ++it;
      }
      if (inner.empty()) return w;
      NameSet range_fv;
      for (const auto& [_, ty] : inner) range_fv.merge(free_type_vars(ty));
      std::string bound = w.name();
      Decorated body = w.body();
      if (range_fv.contains(bound)) {
        NameSet avoid = range_fv;
        avoid.insert(body_fv.begin(), body_fv.end());
        for (const auto& [k, _] : inner) avoid.insert(k);
        std::string fresh = fresh_name(bound, avoid);
        body = rename_decorated(body, bound, fresh);
        bound = fresh;
      }
      auto sub = subst_deco(inner, body);
      if (!sub) return std::nullopt;
      return Decorated::forall(bound, w.decoration(), *sub);
    }
    case Decorated::Kind::Stuck: {
      auto it = s.find(w.name());
      if (it == s.end()) return w;
      auto m = match_proto(NameSet{}, it->second, w.proto());
      if (!m || !m->solution.empty()) return std::nullopt;
      return m->decorated;
    }
  }
  return std::nullopt;
}

// Renames every quantifier binder to a depth-indexed canonical name.
Decorated canonical(const Decorated& w, int depth) {
  switch (w.kind()) {
    case Decorated::Kind::Plain:
    case Decorated::Kind::Stuck:
      return w;
    case Decorated::Kind::Arrow:
      return Decorated::arrow(w.dom(), canonical(w.cod(), depth));
    case Decorated::Kind::Forall: {
      std::string canon = "%" + std::to_string(depth);
      return Decorated::forall(canon, w.decoration(),
                               canonical(rename_decorated(w.body(), w.name(), canon), depth + 1));
    }
  }
  return w;
}

bool structurally_equal(const Decorated& a, const Decorated& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Decorated::Kind::Plain:
      return alpha_equal(a.type(), b.type());
    case Decorated::Kind::Arrow:
      return alpha_equal(a.dom(), b.dom()) && structurally_equal(a.cod(), b.cod());
    case Decorated::Kind::Forall:
      if (a.name() != b.name()) return false;
      if (a.decoration().has_value() != b.decoration().has_value()) return false;
      if (a.decoration() && !alpha_equal(*a.decoration(), *b.decoration())) return false;
      return structurally_equal(a.body(), b.body());
    case Decorated::Kind::Stuck:
      return a.name() == b.name() && prototype_alpha_equal(a.proto(), b.proto());
  }
  return false;
}

}  // namespace

std::optional<Decorated> subst_decorated(const TypeSubst& s, const Decorated& w) {
  return subst_deco(s, w);
}

std::optional<Decorated> subst_decorated(const Solution& s, const Decorated& w) {
  return subst_deco(s.as_subst(), w);
}

bool decorated_alpha_equal(const Decorated& a, const Decorated& b) {
  return structurally_equal(canonical(a, 0), canonical(b, 0));
}

// ---------------------------------------------------------------------------
// Solutions

Provenance Provenance::contextual(std::optional<Type> partial, Type against) {
  return Provenance{Origin::Contextual, std::move(partial), std::move(against), 0};
}

Provenance Provenance::synthetic(std::size_t arg_index, Type partial, Type against) {
  return Provenance{Origin::Synthetic, std::move(partial), std::move(against), arg_index};
}

Provenance Provenance::explicit_arg() { return Provenance{}; }

const Solution::Binding* Solution::find(const std::string& meta) const {
  auto it = map_.find(meta);
  return it == map_.end() ? nullptr : &it->second;
}

NameSet Solution::domain() const {
  NameSet out;
  for (const auto& [k, _] : map_) out.insert(k);
  return out;
}

Solution Solution::compose(const std::string& meta, Type type, Provenance origin) const {
  if (map_.contains(meta))
    throw InternalError("compose: meta-variable " + meta + " is already solved");
  Solution out = *this;
  out.map_.emplace(meta, Binding{std::move(type), std::move(origin)});
  return out;
}

Solution Solution::without(const std::string& meta) const {
  Solution out = *this;
  out.map_.erase(meta);
  return out;
}

TypeSubst Solution::as_subst() const {
  TypeSubst out;
  for (const auto& [k, b] : map_) out.emplace(k, b.type);
  return out;
}

bool solution_equal(const Solution& a, const Solution& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, binding] : a) {
    const auto* other = b.find(k);
    if (other == nullptr || !alpha_equal(binding.type, other->type)) return false;
  }
  return true;
}

Type subst_type(const Solution& s, const Type& t) { return s.apply(t); }

Solution compose(const Solution& s, const std::string& meta, Type type, Provenance origin) {
  return s.compose(meta, std::move(type), std::move(origin));
}

}  // namespace spinel
