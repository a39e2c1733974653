#include "spinel/infer.hpp"

#include <utility>

#include "spinel/matcher.hpp"
#include "spinel/pretty.hpp"

namespace spinel {

namespace {

const char* kUnannotated = "We are not in checking mode, so bound variable {} must be annotated";
const char* kUnsolved = "This maximal application has unsolved meta-variables";
const char* kNotArrow = "The type of an applicand in a term application must reveal an arrow";
const char* kNotForall = "The type of an applicand in a type application must reveal a quantifier";

std::string fill(const char* pattern, const std::string& arg) {
  std::string out = pattern;
  auto pos = out.find("{}");
  if (pos != std::string::npos) out.replace(pos, 2, arg);
  return out;
}

Diagnostic make(DiagnosticKind kind, std::string message, Span span) {
  Diagnostic d{kind, std::move(message), {}, {}, {}, {}, {}, span};
  return d;
}

// Quantified type variables left over from a failed match are shown the way
// meta-variables are.
Type show_as_metas(const Context& ctx, const Type& t) {
  TypeSubst s;
  for (const auto& v : meta_vars_of_type(ctx, t))
    if (!is_meta_name(v)) s.emplace(v, Type::var("?" + v));
  return s.empty() ? t : substitute(s, t);
}

// Expected domain of the next argument, computed from the head type along a
// spine whose inferred type arguments are still meta-variables.
std::optional<Type> shadow_domain(const Type& head_type, const Term& shadow) {
  Type cur = head_type;
  for (const auto& a : spine_of(shadow).args) {
    if (a.is_type()) {
      if (!cur.is_forall()) return std::nullopt;
      cur = substitute(cur.name(), *a.type, cur.body());
    } else {
      if (!cur.is_arrow()) return std::nullopt;
      cur = cur.cod();
    }
  }
  if (!cur.is_arrow()) return std::nullopt;
  return cur.dom();
}

bool has_meta(const Type& t) {
  for (const auto& v : free_type_vars(t))
    if (is_meta_name(v)) return true;
  return false;
}

// Explains an argument's own failure with where its expected type came from.
void explain_argument(Diagnostic& d, const std::optional<Type>& shadow, const Type& solved,
                      const SpineOutcome& applicand) {
  if (d.kind != DiagnosticKind::TypeMismatch && d.kind != DiagnosticKind::UnannotatedLambda)
    return;
  if (d.contextual_match || d.synthetic_match) return;
  Type shown = shadow && has_meta(*shadow) ? *shadow : solved;
  d.expected = shown;
  d.expected_solved.reset();
  if (!alpha_equal(shown, solved)) d.expected_solved = solved;
  for (const auto& v : free_type_vars(shown)) {
    if (!is_meta_name(v)) continue;
    if (const auto* b = applicand.solution.find(v); b && b->origin.partial && !d.contextual_match)
      d.contextual_match = MatchNote{*b->origin.partial, *b->origin.against, 0};
    if (const auto* b = applicand.synthetic.find(v); b && b->origin.partial && !d.synthetic_match)
      d.synthetic_match = MatchNote{*b->origin.partial, *b->origin.against, b->origin.arg_index};
  }
}

struct DepthGuard {
  int& depth;
  explicit DepthGuard(int& d) : depth(d) { ++depth; }
  ~DepthGuard() { --depth; }
};

}  // namespace

void Engine::fail(Diagnostic d) const {
  TypeError err(std::move(d));
  err.depth = depth_;
  throw err;
}

void Engine::rule(const char* name) {
  if (record_trace_) trace_.emplace_back(name);
}

std::string Engine::mint_meta(const std::string& bound) {
  std::string m = fresh_name("?" + bound, metas_);
  metas_.insert(m);
  return m;
}

std::optional<Type> Engine::contextual_partial(const Decorated& w, const Prototype& proto) const {
  std::size_t k = proto_arity(proto);
  NameSet used = metas_;
  Decorated cur = w;
  std::size_t arrows = 0;
  while (true) {
    if (cur.is_forall()) {
      std::string m = fresh_name("?" + cur.name(), used);
      used.insert(m);
      cur = rename_decorated(cur.body(), cur.name(), m);
      continue;
    }
    if (arrows == k) break;
    if (cur.is_arrow()) {
      cur = cur.cod();
    } else if (cur.is_plain() && cur.type().is_arrow()) {
      cur = Decorated::plain(cur.type().cod());
    } else {
      return std::nullopt;
    }
    ++arrows;
  }
  if (cur.is_stuck()) return std::nullopt;
  return strip(cur);
}

InferOutcome Engine::infer(const Context& ctx, const Mode& mode, const Term& t) {
  DepthGuard guard(depth_);

  auto mismatch = [&](const Type& synthesized) {
    Diagnostic d = make(DiagnosticKind::TypeMismatch, "type mismatch", t.span());
    d.expected = mode.expected;
    d.synthesized = synthesized;
    fail(std::move(d));
  };
  auto require_wf = [&](const Type& ty) {
    if (!is_well_formed(ctx, ty))
      fail(make(DiagnosticKind::UnboundName,
                "type " + pretty_type(ty) + " is not well-formed here", t.span()));
  };
  // Best-effort synthesized type for a term whose checking failed.
  auto probe = [&]() -> std::optional<Type> {
    try {
      Engine side;
      return side.infer(ctx, Mode::synth(), t).type;
    } catch (const TypeError&) {
      return std::nullopt;
    }
  };

  switch (t.kind()) {
    case Term::Kind::Var: {
      rule("Var");
      auto ty = ctx.lookup(t.name());
      if (!ty) fail(make(DiagnosticKind::UnboundName, "unbound variable " + t.name(), t.span()));
      if (mode.is_check() && !alpha_equal(*ty, *mode.expected)) mismatch(*ty);
      return {*ty, t, std::nullopt};
    }

    case Term::Kind::Lam: {
      if (t.annotation()) {
        rule("AAbs");
        const Type& ann = *t.annotation();
        require_wf(ann);
        Context inner = ctx.with_term(t.name(), ann);
        if (!mode.is_check()) {
          InferOutcome body = infer(inner, Mode::synth(), t.body());
          return {Type::arrow(ann, body.type), Term::lam(t.name(), ann, body.elaboration, t.span()),
                  std::nullopt};
        }
        const Type& expected = *mode.expected;
        if (!expected.is_arrow() || !alpha_equal(expected.dom(), ann)) {
          Diagnostic d = make(DiagnosticKind::TypeMismatch, "type mismatch", t.span());
          d.expected = expected;
          d.synthesized = probe();
          fail(std::move(d));
        }
        InferOutcome body = infer(inner, Mode::check(expected.cod()), t.body());
        return {expected, Term::lam(t.name(), ann, body.elaboration, t.span()), std::nullopt};
      }
      rule("Abs");
      if (!mode.is_check())
        fail(make(DiagnosticKind::UnannotatedLambda, fill(kUnannotated, t.name()), t.span()));
      const Type& expected = *mode.expected;
      if (!expected.is_arrow()) {
        Diagnostic d = make(DiagnosticKind::TypeMismatch,
                            "an unannotated lambda can only be checked against an arrow type",
                            t.span());
        d.expected = expected;
        fail(std::move(d));
      }
      InferOutcome body =
          infer(ctx.with_term(t.name(), expected.dom()), Mode::check(expected.cod()), t.body());
      return {expected, Term::lam(t.name(), expected.dom(), body.elaboration, t.span()),
              std::nullopt};
    }

    case Term::Kind::TLam: {
      rule("TAbs");
      if (ctx.declares_type_var(t.name()))
        fail(make(DiagnosticKind::ShadowedTypeVariable,
                  "type variable " + t.name() + " is already declared", t.span()));
      Context inner = ctx.with_type_var(t.name());
      if (!mode.is_check()) {
        InferOutcome body = infer(inner, Mode::synth(), t.body());
        return {Type::forall(t.name(), body.type), Term::tlam(t.name(), body.elaboration, t.span()),
                std::nullopt};
      }
      const Type& expected = *mode.expected;
      if (!expected.is_forall()) mismatch(probe().value_or(expected));
      Type goal = substitute(expected.name(), Type::var(t.name()), expected.body());
      InferOutcome body = infer(inner, Mode::check(goal), t.body());
      return {expected, Term::tlam(t.name(), body.elaboration, t.span()), std::nullopt};
    }

    case Term::Kind::TApp: {
      rule("TApp");
      require_wf(t.type_arg());
      InferOutcome fun = infer(ctx, Mode::synth(), t.fun());
      if (!fun.type.is_forall()) {
        Diagnostic d = make(DiagnosticKind::ApplicandNotForall, kNotForall, t.span());
        d.synthesized = fun.type;
        fail(std::move(d));
      }
      Type ty = substitute(fun.type.name(), t.type_arg(), fun.type.body());
      if (mode.is_check() && !alpha_equal(ty, *mode.expected)) mismatch(ty);
      return {ty, Term::tapp(fun.elaboration, t.type_arg(), t.span()), std::nullopt};
    }

    case Term::Kind::App:
      return infer_app(ctx, mode, t);
  }
  throw InternalError("infer: unknown term kind");
}

InferOutcome Engine::infer_app(const Context& ctx, const Mode& mode, const Term& t) {
  // Meta-variables never leave a maximal application, so each one gets its
  // own namespace.
  struct Restore {
    Engine& engine;
    NameSet metas;
    Span root;
    ~Restore() {
      engine.metas_ = std::move(metas);
      engine.root_span_ = root;
    }
  } restore{*this, std::exchange(metas_, {}), std::exchange(root_span_, t.span())};

  if (!mode.is_check()) {
    rule("AppSyn");
    SpineOutcome out = spine_infer(ctx, Prototype::unknown(), t);
    Type ty = strip(out.deco);
    if (!out.solution.empty() || !meta_vars_of_term(ctx, out.partial).empty()) {
      Diagnostic d = make(DiagnosticKind::UnsolvedMetaVariables, kUnsolved, t.span());
      d.synthesized = ty;
      fail(std::move(d));
    }
    if (!meta_vars_of_type(ctx, ty).empty())
      throw InternalError("AppSyn: synthesized type " + pretty_type(ty) +
                          " has meta-variables the elaboration lacks");
    if (!out.deco.is_plain())
      throw InternalError("AppSyn: decorated type " + pretty_decorated(out.deco) +
                          " is not plain at discharge");
    Term e = out.partial;
    return {ty, e, std::move(out)};
  }

  rule("AppChk");
  const Type& expected = *mode.expected;
  SpineOutcome out = spine_infer(ctx, Prototype::exact(expected), t);
  Type partial_ty = strip(out.deco);
  if (meta_vars_of_term(ctx, out.partial) != out.solution.domain()) {
    Diagnostic d = make(DiagnosticKind::UnsolvedMetaVariables, kUnsolved, t.span());
    d.synthesized = partial_ty;
    d.expected = expected;
    fail(std::move(d));
  }
  if (!out.deco.is_plain())
    throw InternalError("AppChk: decorated type " + pretty_decorated(out.deco) +
                        " is not plain at discharge");
  if (meta_vars_of_type(ctx, partial_ty) != out.solution.domain())
    throw InternalError("AppChk: meta-variables of " + pretty_type(partial_ty) +
                        " differ from the solution domain " + pretty_solution(out.solution));
  Type solved = out.solution.apply(partial_ty);
  if (!alpha_equal(solved, expected))
    throw InternalError("AppChk: solved type " + pretty_type(solved) +
                        " differs from the contextual type " + pretty_type(expected));
  Term e = substitute_spine(out.solution.as_subst(), out.partial);
  return {expected, e, std::move(out)};
}

SpineOutcome Engine::spine_infer(const Context& ctx, const Prototype& p, const Term& t) {
  SpineOutcome out = [&]() -> SpineOutcome {
    switch (t.kind()) {
      case Term::Kind::App: {
        rule("?App");
        SpineOutcome fun = spine_infer(ctx, Prototype::arrow_to(p), t.fun());
        std::size_t index = fun.checked_args.size() + 1;
        SpineOutcome res = apply_arg(ctx, fun, t.arg(), index, t.span());
        res.proto = p;
        return res;
      }

      case Term::Kind::TApp: {
        rule("?TApp");
        if (!p.is_arrow_to())
          throw InternalError("?TApp reached with prototype " + pretty_prototype(p));
        const Type& s = t.type_arg();
        if (!is_well_formed(ctx, s))
          fail(make(DiagnosticKind::UnboundName,
                    "type " + pretty_type(s) + " is not well-formed here", t.span()));
        SpineOutcome fun = spine_infer(ctx, p, t.fun());
        Decorated w = fun.deco;
        if (w.is_plain() && w.type().is_forall())
          w = Decorated::forall(w.type().name(), std::nullopt, Decorated::plain(w.type().body()));
        if (!w.is_forall()) {
          Diagnostic d = make(DiagnosticKind::ApplicandNotForall, kNotForall, t.span());
          d.synthesized = strip(w);
          fail(std::move(d));
        }
        if (w.decoration() && !alpha_equal(*w.decoration(), s)) {
          Diagnostic d = make(DiagnosticKind::ExplicitArgConflict,
                              "explicit type argument " + pretty_type(s) +
                                  " conflicts with the contextually inferred " +
                                  pretty_type(*w.decoration()),
                              t.span());
          d.expected = *w.decoration();
          d.synthesized = s;
          fail(std::move(d));
        }
        auto body = subst_decorated(TypeSubst{{w.name(), s}}, w.body());
        if (!body) {
          Diagnostic d = make(DiagnosticKind::SolutionConflict,
                              "type argument " + pretty_type(s) +
                                  " does not fit the arity the context demands",
                              t.span());
          d.synthesized = s;
          fail(std::move(d));
        }
        SpineOutcome res = std::move(fun);
        res.deco = *body;
        res.partial = Term::tapp(res.partial, s, t.span());
        res.shadow = Term::tapp(res.shadow, s, t.span());
        res.proto = p;
        return res;
      }

      default: {
        rule("?Head");
        if (!p.is_arrow_to())
          throw InternalError("?Head reached with prototype " + pretty_prototype(p));
        InferOutcome head = infer(ctx, Mode::synth(), t);
        auto m = match_proto_explained({}, head.type, p);
        if (auto* f = std::get_if<MatchFailure>(&m)) {
          if (f->reason == MatchFailure::Reason::Arity) {
            Diagnostic d = make(DiagnosticKind::ApplicandNotArrow, kNotArrow, t.span());
            d.synthesized = show_as_metas(ctx, f->partial);
            fail(std::move(d));
          }
          Type partial = show_as_metas(ctx, f->partial);
          Diagnostic d = make(DiagnosticKind::TypeMismatch, "type mismatch",
                              root_span_.valid() ? root_span_ : t.span());
          d.expected = *f->against;
          d.synthesized = partial;
          d.contextual_match = MatchNote{partial, *f->against, 0};
          fail(std::move(d));
        }
        auto& r = std::get<MatchResult>(m);
        if (!r.solution.empty())
          throw InternalError("?Head: matching a closed type produced " +
                              pretty_solution(r.solution));
        return SpineOutcome{r.decorated, head.elaboration, {}, {}, head.elaboration,
                            head.type,   p,               {}};
      }
    }
  }();
  if (observer_) observer_(ctx, p, t, out);
  return out;
}

SpineOutcome Engine::apply_arg(const Context& ctx, const SpineOutcome& applicand,
                               const Term& arg, std::size_t index, Span app_span) {
  SpineOutcome cur = applicand;
  Decorated w = cur.deco;

  while (true) {
    if (w.is_plain() && w.type().is_forall())
      w = Decorated::forall(w.type().name(), std::nullopt, Decorated::plain(w.type().body()));
    if (!w.is_forall()) break;
    rule("?Forall");
    std::optional<Type> partial;
    if (w.decoration()) partial = contextual_partial(w, cur.proto);
    std::string meta = mint_meta(w.name());
    if (w.decoration()) {
      Type against = cur.proto.base().is_exact() ? cur.proto.base().type() : *w.decoration();
      cur.solution = cur.solution.compose(meta, *w.decoration(),
                                          Provenance::contextual(partial, against));
    }
    cur.partial = Term::tapp(cur.partial, Type::var(meta));
    cur.shadow = Term::tapp(cur.shadow, Type::var(meta));
    w = rename_decorated(w.body(), w.name(), meta);
  }

  Type dom = Type::var("_");
  Decorated rest = w;
  if (w.is_arrow()) {
    dom = w.dom();
    rest = w.cod();
  } else if (w.is_plain() && w.type().is_arrow()) {
    dom = w.type().dom();
    rest = Decorated::plain(w.type().cod());
  } else {
    Diagnostic d = make(DiagnosticKind::ApplicandNotArrow, kNotArrow,
                        app_span.valid() ? app_span : arg.span());
    d.synthesized = strip(w);
    fail(std::move(d));
  }

  Type expected = cur.solution.apply(dom);
  std::optional<Type> shadow = shadow_domain(cur.head_type, cur.shadow);
  NameSet unsolved = meta_vars_of_type(ctx, expected);

  auto run_arg = [&](const Mode& mode) {
    try {
      return infer(ctx, mode, arg);
    } catch (TypeError& e) {
      if (e.depth == depth_ + 1) explain_argument(e.diagnostic, shadow, expected, cur);
      throw;
    }
  };

  SpineOutcome res = cur;
  res.proto = cur.proto.is_arrow_to() ? cur.proto.rest() : Prototype::unknown();

  if (unsolved.empty()) {
    rule("?Chk");
    InferOutcome e = run_arg(Mode::check(expected));
    res.deco = rest;
    res.partial = Term::app(cur.partial, e.elaboration, app_span);
    res.shadow = Term::app(cur.shadow, e.elaboration, app_span);
    res.checked_args.push_back(true);
    return res;
  }

  rule("?Syn");
  InferOutcome e = run_arg(Mode::synth());
  auto inst = match_first_order(unsolved, expected, e.type);
  if (!inst) {
    Diagnostic d = make(DiagnosticKind::TypeMismatch, "type mismatch", arg.span());
    d.expected = expected;
    d.synthesized = e.type;
    explain_argument(d, shadow, expected, cur);
    // Prefer the earlier argument that fixed part of the expected type.
    if (!d.synthetic_match) d.synthetic_match = MatchNote{expected, e.type, index};
    fail(std::move(d));
  }
  auto next = subst_decorated(*inst, rest);
  if (!next) {
    Diagnostic d = make(DiagnosticKind::SolutionConflict,
                        "the type of argument " + std::to_string(index) +
                            " conflicts with the arity the context demands",
                        arg.span());
    d.expected = expected;
    d.synthesized = e.type;
    d.synthetic_match = MatchNote{expected, e.type, index};
    fail(std::move(d));
  }
  for (const auto& [meta, ty] : *inst)
    res.synthetic = res.synthetic.compose(meta, ty, Provenance::synthetic(index, expected, e.type));
  res.deco = *next;
  res.partial = Term::app(substitute_spine(*inst, cur.partial), e.elaboration, app_span);
  res.shadow = Term::app(cur.shadow, e.elaboration, app_span);
  res.checked_args.push_back(false);
  return res;
}

std::variant<InferOutcome, Diagnostic> try_infer(const Context& ctx, const Mode& mode,
                                                 const Term& t) {
  if (mode.is_check() && !is_well_formed(ctx, *mode.expected))
    return make(DiagnosticKind::UnboundName,
                "type " + pretty_type(*mode.expected) + " is not well-formed here", t.span());
  try {
    Engine engine;
    return engine.infer(ctx, mode, t);
  } catch (const TypeError& e) {
    return e.diagnostic;
  }
}

}  // namespace spinel
