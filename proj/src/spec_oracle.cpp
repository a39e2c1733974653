#include "spinel/spec_oracle.hpp"

#include <utility>

#include "spinel/matcher.hpp"
#include "spinel/pretty.hpp"

namespace spinel {

namespace {

void add_well_formed_subterms(const Context& ctx, const Type& t, std::vector<Type>& out) {
  for (const auto& s : subterms(t)) {
    if (!is_well_formed(ctx, s)) continue;
    bool seen = false;
    for (const auto& o : out)
      if (alpha_equal(o, s)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(s);
  }
}

void push_unique(std::vector<SpecTyping>& out, SpecTyping r) {
  for (const auto& o : out)
    if (alpha_equal(o.type, r.type) && term_alpha_equal(o.elaboration, r.elaboration)) return;
  out.push_back(std::move(r));
}

NameSet names_in_use(const Context& ctx, const SpecTriple& tr) {
  NameSet used = meta_vars_of_term(ctx, tr.partial);
  for (const auto& v : free_type_vars(tr.type)) used.insert(v);
  for (const auto& v : tr.solution.domain()) used.insert(v);
  for (const auto& v : declared_type_vars(ctx)) used.insert(v);
  return used;
}

Type strip_quantifiers(Type t) {
  while (t.is_forall()) t = t.body();
  return t;
}

class Oracle {
 public:
  explicit Oracle(SearchOptions opts) : opts_(std::move(opts)) {}

  std::vector<SpecTyping> infer_all(const Context& ctx, const std::optional<Type>& ctx_ty,
                                    const Term& t) {
    tick();
    std::vector<SpecTyping> out;
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto ty = ctx.lookup(t.name());
        if (ty && (!ctx_ty || alpha_equal(*ty, *ctx_ty))) out.push_back({*ty, t});
        return out;
      }
      case Term::Kind::Lam: {
        if (t.annotation()) {
          const Type& ann = *t.annotation();
          if (!is_well_formed(ctx, ann)) return out;
          Context inner = ctx.with_term(t.name(), ann);
          if (!ctx_ty) {
            for (auto& r : infer_all(inner, std::nullopt, t.body()))
              push_unique(out, {Type::arrow(ann, r.type), Term::lam(t.name(), ann, r.elaboration)});
          } else if (ctx_ty->is_arrow() && alpha_equal(ctx_ty->dom(), ann)) {
            for (auto& r : infer_all(inner, ctx_ty->cod(), t.body()))
              push_unique(out, {*ctx_ty, Term::lam(t.name(), ann, r.elaboration)});
          }
          return out;
        }
        if (!ctx_ty || !ctx_ty->is_arrow()) return out;
        for (auto& r : infer_all(ctx.with_term(t.name(), ctx_ty->dom()), ctx_ty->cod(), t.body()))
          push_unique(out, {*ctx_ty, Term::lam(t.name(), ctx_ty->dom(), r.elaboration)});
        return out;
      }
      case Term::Kind::TLam: {
        if (ctx.declares_type_var(t.name())) return out;
        Context inner = ctx.with_type_var(t.name());
        if (!ctx_ty) {
          for (auto& r : infer_all(inner, std::nullopt, t.body()))
            push_unique(out, {Type::forall(t.name(), r.type), Term::tlam(t.name(), r.elaboration)});
        } else if (ctx_ty->is_forall()) {
          Type goal = substitute(ctx_ty->name(), Type::var(t.name()), ctx_ty->body());
          for (auto& r : infer_all(inner, goal, t.body()))
            push_unique(out, {*ctx_ty, Term::tlam(t.name(), r.elaboration)});
        }
        return out;
      }
      case Term::Kind::TApp: {
        const Type& s = t.type_arg();
        if (!is_well_formed(ctx, s)) return out;
        for (auto& r : infer_all(ctx, std::nullopt, t.fun())) {
          if (!r.type.is_forall()) continue;
          Type ty = substitute(r.type.name(), s, r.type.body());
          if (ctx_ty && !alpha_equal(ty, *ctx_ty)) continue;
          push_unique(out, {ty, Term::tapp(r.elaboration, s)});
        }
        return out;
      }
      case Term::Kind::App: {
        std::vector<Type> cands;
        if (ctx_ty) {
          add_well_formed_subterms(ctx, *ctx_ty, cands);
          for (const auto& c : opts_.extra_candidates) add_well_formed_subterms(ctx, c, cands);
        }
        for (auto& tr : spine_all(ctx, t, cands, ctx_ty.has_value())) {
          if (meta_vars_of_type(ctx, tr.type) != tr.solution.domain()) continue;
          if (!ctx_ty) {
            if (!tr.solution.empty() || !meta_vars_of_term(ctx, tr.partial).empty()) continue;
            push_unique(out, {tr.type, tr.partial});
          } else {
            if (meta_vars_of_term(ctx, tr.partial) != tr.solution.domain()) continue;
            if (!alpha_equal(tr.solution.apply(tr.type), *ctx_ty)) continue;
            push_unique(out, {*ctx_ty, substitute_spine(tr.solution.as_subst(), tr.partial)});
          }
        }
        return out;
      }
    }
    return out;
  }

  std::vector<SpecTriple> spine_all(const Context& ctx, const Term& t,
                                    const std::vector<Type>& cands, bool guess) {
    tick();
    std::vector<SpecTriple> out;
    if (t.is_tapp()) {
      const Type& s = t.type_arg();
      if (!is_well_formed(ctx, s)) return out;
      for (auto& tr : spine_all(ctx, t.fun(), cands, guess)) {
        if (!tr.type.is_forall()) continue;
        out.push_back({substitute(tr.type.name(), s, tr.type.body()), Term::tapp(tr.partial, s),
                       tr.solution});
      }
      return out;
    }
    if (t.is_app()) {
      for (auto& tr : spine_all(ctx, t.fun(), cands, guess))
        apply_all(ctx, tr, t.arg(), cands, guess, out);
      return out;
    }
    for (auto& r : infer_all(ctx, std::nullopt, t)) out.push_back({r.type, r.elaboration, {}});
    return out;
  }

  void apply_all(const Context& ctx, const SpecTriple& tr, const Term& arg,
                 const std::vector<Type>& cands, bool guess, std::vector<SpecTriple>& out) {
    tick();
    const Type& ty = tr.type;
    if (ty.is_forall()) {
      std::string meta = fresh_name("?" + ty.name(), names_in_use(ctx, tr));
      Type body = substitute(ty.name(), Type::var(meta), ty.body());
      Term p = Term::tapp(tr.partial, Type::var(meta));
      apply_all(ctx, {body, p, tr.solution}, arg, cands, guess, out);
      if (!guess) return;
      for (const auto& s : cands)
        apply_all(ctx, {body, p, tr.solution.compose(meta, s, Provenance::contextual({}, s))}, arg,
                  cands, guess, out);
      return;
    }
    if (!ty.is_arrow()) return;
    Type expected = tr.solution.apply(ty.dom());
    NameSet unsolved = meta_vars_of_type(ctx, expected);
    if (unsolved.empty()) {
      for (auto& r : infer_all(ctx, expected, arg))
        out.push_back({ty.cod(), Term::app(tr.partial, r.elaboration), tr.solution});
      return;
    }
    for (auto& r : infer_all(ctx, std::nullopt, arg)) {
      auto inst = match_first_order(unsolved, expected, r.type);
      if (!inst) continue;
      out.push_back({substitute(*inst, ty.cod()),
                     Term::app(substitute_spine(*inst, tr.partial), r.elaboration), tr.solution});
    }
  }

  // Spine judgments with every guess declined; for heads this is synthesis.
  std::vector<SpecTriple> declining(const Context& ctx, const Term& t) {
    if (t.is_application()) return spine_all(ctx, t, {}, false);
    std::vector<SpecTriple> out;
    for (auto& r : infer_all(ctx, std::nullopt, t)) out.push_back({r.type, r.elaboration, {}});
    return out;
  }

 private:
  void tick() {
    if (++steps_ > opts_.max_steps) throw SearchBudgetExceeded("declarative search budget exhausted");
  }

  SearchOptions opts_;
  std::size_t steps_ = 0;
};

// ---- weak completeness

struct ConditionWalker {
  Oracle& oracle;

  bool walk(const Context& ctx, const Term& e, const Term& t, bool maximal) {
    switch (e.kind()) {
      case Term::Kind::Var:
        return true;
      case Term::Kind::Lam:
        if (!t.is_lam()) return false;
        if (!t.annotation()) return false;  // (1)
        return walk(ctx.with_term(e.name(), *e.annotation()), e.body(), t.body(), true);
      case Term::Kind::TLam:
        if (!t.is_tlam()) return false;
        return walk(ctx.with_type_var(e.name()), e.body(), t.body(), true);
      case Term::Kind::App:
        return walk_app(ctx, e, t, maximal);
      case Term::Kind::TApp:
        if (!t.is_tapp()) return false;
        if (!reveals_forall(ctx, t.fun())) return false;  // (4)
        return walk(ctx, e.fun(), t.fun(), true);
    }
    return false;
  }

  bool walk_app(const Context& ctx, const Term& e, const Term& t, bool maximal) {
    if (!t.is_app()) return false;
    if (maximal) {  // (2)
      for (const auto& tr : oracle.declining(ctx, t))
        if (!meta_vars_of_term(ctx, tr.partial).empty()) return false;
    }
    for (const auto& tr : oracle.declining(ctx, t.fun()))  // (3)
      if (!strip_quantifiers(tr.type).is_arrow()) return false;
    return walk_applicand(ctx, e.fun(), t.fun()) && walk(ctx, e.arg(), t.arg(), true);
  }

  // The applicand keeps a prefix of its trailing type arguments.
  bool walk_applicand(const Context& ctx, const Term& e, const Term& t) {
    std::vector<Term> e_chain{e}, t_chain{t};
    while (e_chain.back().is_tapp()) e_chain.push_back(e_chain.back().fun());
    while (t_chain.back().is_tapp()) t_chain.push_back(t_chain.back().fun());
    std::size_t k = e_chain.size() - 1, j = t_chain.size() - 1;
    if (j > k) return false;
    // t_chain[i] is the applicand with i trailing type arguments removed.
    for (std::size_t i = 0; i < j; ++i)
      if (!reveals_forall(ctx, t_chain[i + 1])) return false;  // (4)
    const Term& e0 = e_chain.back();
    const Term& t0 = t_chain.back();
    if (e0.is_app()) return walk_app(ctx, e0, t0, false);
    return walk(ctx, e0, t0, false);
  }

  bool reveals_forall(const Context& ctx, const Term& t) {
    for (const auto& tr : oracle.declining(ctx, t))
      if (!tr.type.is_forall()) return false;
    return true;
  }
};

void erase(const Term& e, std::vector<Term>& out);

void erase_applicand(const Term& e, std::vector<Term>& out) {
  if (!e.is_tapp()) {
    erase(e, out);
    return;
  }
  erase_applicand(e.fun(), out);
  std::vector<Term> kept;
  erase(e.fun(), kept);
  for (auto& t : kept) out.push_back(Term::tapp(t, e.type_arg(), e.span()));
}

void erase(const Term& e, std::vector<Term>& out) {
  switch (e.kind()) {
    case Term::Kind::Var:
      out.push_back(e);
      return;
    case Term::Kind::Lam: {
      std::vector<Term> bodies;
      erase(e.body(), bodies);
      for (auto& b : bodies) {
        out.push_back(Term::lam(e.name(), e.annotation(), b, e.span()));
        out.push_back(Term::lam(e.name(), std::nullopt, b, e.span()));
      }
      return;
    }
    case Term::Kind::TLam: {
      std::vector<Term> bodies;
      erase(e.body(), bodies);
      for (auto& b : bodies) out.push_back(Term::tlam(e.name(), b, e.span()));
      return;
    }
    case Term::Kind::App: {
      std::vector<Term> funs, args;
      erase_applicand(e.fun(), funs);
      erase(e.arg(), args);
      for (auto& f : funs)
        for (auto& a : args) out.push_back(Term::app(f, a, e.span()));
      return;
    }
    case Term::Kind::TApp: {
      std::vector<Term> funs;
      erase(e.fun(), funs);
      for (auto& f : funs) out.push_back(Term::tapp(f, e.type_arg(), e.span()));
      return;
    }
  }
}

}  // namespace

SpecVerdict verify_spec(const Context& ctx, const std::optional<Type>& ctx_ty, const Term& t,
                        const SpecTriple& claimed) {
  SpecVerdict v;
  auto reject = [&](std::string why) {
    v.accepted = false;
    v.reason = std::move(why);
    return v;
  };
  if (!t.is_app()) return reject("subject is not a term application");
  v.trace.push_back(ctx_ty ? "AppChk" : "AppSyn");
  v.trace.push_back("shim");

  Oracle oracle{SearchOptions{}};
  Spine ts = spine_of(t);
  Spine ps = spine_of(claimed.partial);

  Type ty = Type::var("_");
  {
    v.trace.push_back("PHead");
    bool found = false;
    for (auto& r : oracle.infer_all(ctx, std::nullopt, ts.head))
      if (term_alpha_equal(r.elaboration, ps.head)) {
        ty = r.type;
        found = true;
        break;
      }
    if (!found) return reject("head elaboration " + pretty_term(ps.head) + " is not derivable");
  }

  SpecTriple run{ty, ps.head, {}};
  std::size_t pi = 0;
  auto claimed_arg = [&]() -> const SpineArg* { return pi < ps.args.size() ? &ps.args[pi] : nullptr; };

  for (const auto& a : ts.args) {
    if (a.is_type()) {
      v.trace.push_back("PTApp");
      const SpineArg* c = claimed_arg();
      if (!c || !c->is_type() || !alpha_equal(*c->type, *a.type))
        return reject("explicit type argument " + pretty_type(*a.type) + " is not replayed");
      if (!run.type.is_forall()) return reject("type applicand is not quantified");
      run.type = substitute(run.type.name(), *a.type, run.type.body());
      run.partial = Term::tapp(run.partial, *a.type);
      ++pi;
      continue;
    }
    v.trace.push_back("PApp");
    while (run.type.is_forall()) {
      v.trace.push_back("PForall");
      const SpineArg* c = claimed_arg();
      if (!c || !c->is_type()) return reject("missing inserted type argument");
      NameSet used = names_in_use(ctx, run);
      std::string meta;
      if (c->type->is_var() && !used.contains(c->type->name()))
        meta = c->type->name();
      else
        meta = fresh_name("?" + run.type.name(), used);
      if (const auto* b = claimed.solution.find(meta)) {
        if (!is_well_formed(ctx, b->type)) return reject("guess for " + meta + " is ill-formed");
        run.solution = run.solution.compose(meta, b->type, b->origin);
      }
      run.type = substitute(run.type.name(), Type::var(meta), run.type.body());
      run.partial = Term::tapp(run.partial, Type::var(meta));
      ++pi;
    }
    if (!run.type.is_arrow()) return reject("applicand type " + pretty_type(run.type) +
                                            " reveals no arrow");
    const SpineArg* c = claimed_arg();
    if (!c || c->is_type()) return reject("missing term argument");
    const Term& elab = *c->term;
    ++pi;
    Type expected = run.solution.apply(run.type.dom());
    NameSet unsolved = meta_vars_of_type(ctx, expected);
    if (unsolved.empty()) {
      v.trace.push_back("PChk");
      bool ok = false;
      for (auto& r : oracle.infer_all(ctx, expected, *a.term))
        if (term_alpha_equal(r.elaboration, elab)) {
          ok = true;
          break;
        }
      if (!ok) return reject("argument " + pretty_term(elab) + " does not check against " +
                             pretty_type(expected));
      run.type = run.type.cod();
      run.partial = Term::app(run.partial, elab);
    } else {
      v.trace.push_back("PSyn");
      std::optional<TypeSubst> inst;
      for (auto& r : oracle.infer_all(ctx, std::nullopt, *a.term))
        if (term_alpha_equal(r.elaboration, elab)) {
          inst = match_first_order(unsolved, expected, r.type);
          break;
        }
      if (!inst) return reject("argument " + pretty_term(elab) + " does not synthesize an instance of " +
                               pretty_type(expected));
      run.type = substitute(*inst, run.type.cod());
      run.partial = Term::app(substitute_spine(*inst, run.partial), elab);
    }
  }
  if (pi != ps.args.size()) return reject("claimed elaboration has extra arguments");
  if (!alpha_equal(run.type, claimed.type))
    return reject("replayed type " + pretty_type(run.type) + " differs from " +
                  pretty_type(claimed.type));
  if (!term_alpha_equal(run.partial, claimed.partial))
    return reject("replayed elaboration " + pretty_term(run.partial) + " differs");
  if (!solution_equal(run.solution, claimed.solution)) return reject("replayed solution differs");

  if (meta_vars_of_type(ctx, run.type) != run.solution.domain())
    return reject("meta-variables of the type differ from the solution domain");
  NameSet mv = meta_vars_of_term(ctx, run.partial);
  if (!ctx_ty) {
    if (!run.solution.empty()) return reject("synthesis requires the identity solution");
    if (!mv.empty()) return reject("elaboration has unsolved meta-variables");
  } else {
    if (mv != run.solution.domain()) return reject("unsolved meta-variables remain");
    if (!alpha_equal(run.solution.apply(run.type), *ctx_ty))
      return reject("solution does not reproduce the contextual type");
  }
  v.accepted = true;
  return v;
}

std::vector<SpecTriple> search_spec(const Context& ctx, const std::optional<Type>& ctx_ty,
                                    const Term& t, const std::optional<std::vector<Type>>& candidates,
                                    std::size_t max_steps) {
  SearchOptions opts;
  opts.max_steps = max_steps;
  Oracle oracle(opts);
  std::vector<Type> cands;
  if (candidates) {
    for (const auto& c : *candidates)
      if (is_well_formed(ctx, c)) add_well_formed_subterms(ctx, c, cands);
  } else {
    if (ctx_ty) add_well_formed_subterms(ctx, *ctx_ty, cands);
    for (const auto& entry : ctx.entries())
      if (entry.type) add_well_formed_subterms(ctx, *entry.type, cands);
    for (const auto& a : spine_of(t).args) {
      if (a.is_type()) continue;
      for (auto& r : oracle.infer_all(ctx, std::nullopt, *a.term))
        add_well_formed_subterms(ctx, r.type, cands);
    }
  }
  if (!t.is_app()) return {};
  return oracle.spine_all(ctx, t, cands, true);
}

std::vector<SpecTyping> spec_infer_all(const Context& ctx, const std::optional<Type>& ctx_ty,
                                       const Term& t, const SearchOptions& options) {
  Oracle oracle(options);
  return oracle.infer_all(ctx, ctx_ty, t);
}

std::vector<Term> enumerate_erasures(const Term& e) {
  std::vector<Term> out;
  erase(e, out);
  return out;
}

bool check_weak_completeness_conditions(const Context& ctx, const Term& e, const Term& t) {
  Oracle oracle{SearchOptions{}};
  ConditionWalker walker{oracle};
  return walker.walk(ctx, e, t, true);
}

}  // namespace spinel
