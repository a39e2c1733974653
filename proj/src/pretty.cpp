#include "spinel/pretty.hpp"

#include <cctype>

namespace spinel {

namespace {

// Type precedence levels: 0 anything, 1 no bare arrow or forall, 2 atomic.
enum TypeLevel { kTop = 0, kOperand = 1, kAtom = 2 };

std::string parens_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

std::string type_at(const Type& t, int level) {
  switch (t.kind()) {
    case Type::Kind::Var:
      return t.name();
    case Type::Kind::Arrow:
      return parens_if(level > kTop, type_at(t.dom(), kOperand) + " -> " + type_at(t.cod(), kTop));
    case Type::Kind::Forall:
      return parens_if(level > kTop, "forall " + t.name() + ". " + type_at(t.body(), kTop));
    case Type::Kind::Con: {
      if (t.args().empty()) return t.name();
      if (is_operator_name(t.name()) && t.args().size() == 2)
        return "(" + type_at(t.args()[0], kOperand) + " " + t.name() + " " +
               type_at(t.args()[1], kOperand) + ")";
      std::string out = t.name();
      for (const auto& a : t.args()) out += " " + type_at(a, kAtom);
      return parens_if(level >= kAtom, out);
    }
  }
  return "?";
}

// Term levels: 0 anything, 1 applicand (no bare binder), 2 argument (atomic).
std::string term_at(const Term& t, int level) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name();
    case Term::Kind::Lam: {
      std::string head = "\\" + t.name();
      if (t.annotation()) {
        const Type& ann = *t.annotation();
        head += ":" + (ann.is_forall() ? "(" + pretty_type(ann) + ")" : pretty_type(ann));
      }
      return parens_if(level > 0, head + ". " + term_at(t.body(), 0));
    }
    case Term::Kind::TLam:
      return parens_if(level > 0, "/\\" + t.name() + ". " + term_at(t.body(), 0));
    case Term::Kind::App:
      return parens_if(level >= 2, term_at(t.fun(), 1) + " " + term_at(t.arg(), 2));
    case Term::Kind::TApp:
      return parens_if(level >= 2, term_at(t.fun(), 1) + " [" + pretty_type(t.type_arg()) + "]");
  }
  return "?";
}

std::string decorated_at(const Decorated& w, int level) {
  switch (w.kind()) {
    case Decorated::Kind::Plain:
      return type_at(w.type(), level);
    case Decorated::Kind::Arrow:
      return parens_if(level > kTop,
                       type_at(w.dom(), kOperand) + " -> " + decorated_at(w.cod(), kTop));
    case Decorated::Kind::Forall: {
      std::string head = "forall " + w.name();
      if (w.decoration()) head += "=" + type_at(*w.decoration(), kAtom);
      return parens_if(level > kTop, head + ". " + decorated_at(w.body(), kTop));
    }
    case Decorated::Kind::Stuck:
      return "(" + w.name() + ", " + pretty_prototype(w.proto()) + ")";
  }
  return "?";
}

}  // namespace

bool is_operator_name(const std::string& name) {
  return !name.empty() && !std::isalpha(static_cast<unsigned char>(name.front())) &&
         name.front() != '_' && name.front() != '?';
}

std::string pretty_type(const Type& t) { return type_at(t, kTop); }

std::string pretty_term(const Term& t) { return term_at(t, 0); }

std::string pretty_prototype(const Prototype& p) {
  switch (p.kind()) {
    case Prototype::Kind::Unknown:
      return "?";
    case Prototype::Kind::Exact:
      return pretty_type(p.type());
    case Prototype::Kind::ArrowTo:
      return "? -> " + pretty_prototype(p.rest());
  }
  return "?";
}

std::string pretty_decorated(const Decorated& w) { return decorated_at(w, kTop); }

std::string pretty_solution(const Solution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [meta, binding] : s) {
    if (!first) out += ", ";
    first = false;
    out += meta + " := " + pretty_type(binding.type);
  }
  return out + "}";
}

}  // namespace spinel
