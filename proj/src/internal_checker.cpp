#include "spinel/internal_checker.hpp"

#include "spinel/pretty.hpp"

namespace spinel {

namespace {

using Reason = InternalTypeError::Reason;

void require_well_formed(const Context& ctx, const Type& t) {
  if (!is_well_formed(ctx, t))
    throw InternalTypeError(Reason::IllFormedType, "ill-formed type " + pretty_type(t));
}

}  // namespace

Type check_internal(const Context& ctx, const Term& e) {
  switch (e.kind()) {
    case Term::Kind::Var: {
      auto t = ctx.lookup(e.name());
      if (!t) throw InternalTypeError(Reason::UnboundVariable, "unbound variable " + e.name());
      return *t;
    }
    case Term::Kind::Lam: {
      if (!e.annotation())
        throw InternalTypeError(Reason::MissingAnnotation,
                                "lambda binding " + e.name() + " has no annotation");
      require_well_formed(ctx, *e.annotation());
      Type body = check_internal(ctx.with_term(e.name(), *e.annotation()), e.body());
      return Type::arrow(*e.annotation(), body);
    }
    case Term::Kind::TLam: {
      if (ctx.declares_type_var(e.name()))
        throw InternalTypeError(Reason::Shadowing, "type variable " + e.name() + " shadows");
      return Type::forall(e.name(), check_internal(ctx.with_type_var(e.name()), e.body()));
    }
    case Term::Kind::App: {
      Type fun = check_internal(ctx, e.fun());
      if (!fun.is_arrow())
        throw InternalTypeError(Reason::NotAnArrow,
                                "applicand has non-arrow type " + pretty_type(fun));
      Type arg = check_internal(ctx, e.arg());
      if (!alpha_equal(fun.dom(), arg))
        throw InternalTypeError(Reason::DomainMismatch, "expected argument of type " +
                                                            pretty_type(fun.dom()) + ", got " +
                                                            pretty_type(arg));
      return fun.cod();
    }
    case Term::Kind::TApp: {
      require_well_formed(ctx, e.type_arg());
      Type fun = check_internal(ctx, e.fun());
      if (!fun.is_forall())
        throw InternalTypeError(Reason::NotAForall,
                                "type applicand has non-quantified type " + pretty_type(fun));
      return substitute(fun.name(), e.type_arg(), fun.body());
    }
  }
  throw InternalError("check_internal: unknown term");
}

}  // namespace spinel
