#include <doctest.h>

#include <variant>

#include "helpers.hpp"
#include "spinel/corpus.hpp"
#include "spinel/infer.hpp"
#include "spinel/internal_checker.hpp"
#include "spinel/matcher.hpp"
#include "spinel/spec_oracle.hpp"

using namespace spinel;
using testing::prelude;
using testing::proto;
using testing::tm;
using testing::ty;

namespace {

InferOutcome ok(const Mode& mode, const std::string& src, const Context& ctx = prelude()) {
  auto r = try_infer(ctx, mode, tm(src, ctx));
  if (auto* d = std::get_if<Diagnostic>(&r)) FAIL(src << ": " << render_text(*d));
  return std::get<InferOutcome>(r);
}

Diagnostic err(const Mode& mode, const std::string& src, const Context& ctx = prelude()) {
  auto r = try_infer(ctx, mode, tm(src, ctx));
  if (std::holds_alternative<InferOutcome>(r)) FAIL(src << ": unexpectedly typed");
  return std::get<Diagnostic>(r);
}

bool same_term(const Term& a, const std::string& b) { return term_alpha_equal(a, tm(b)); }

}  // namespace

TEST_CASE("running example: contextual inference of pair's type arguments") {
  auto r = ok(Mode::check(ty("Pair (Nat -> Nat) Nat")), "pair (\\x. x) z");
  CHECK(same_term(r.elaboration, "pair [Nat -> Nat] [Nat] (\\x:Nat. x) z"));
  CHECK(alpha_equal(r.type, ty("Pair (Nat -> Nat) Nat")));
}

TEST_CASE("rapp: synthetic then contextual") {
  auto r = ok(Mode::check(ty("Nat")), "rapp x (\\y. y)");
  CHECK(same_term(r.elaboration, "rapp [Nat] [Nat] x (\\y:Nat. y)"));
}

TEST_CASE("unannotated lambda in synthesis mode") {
  auto d = err(Mode::synth(), "pair (\\x. x) z");
  CHECK(d.kind == DiagnosticKind::UnannotatedLambda);
  REQUIRE(d.expected);
  CHECK(pretty_type(*d.expected) == "?X");
  CHECK(d.message == "We are not in checking mode, so bound variable x must be annotated");
  CHECK(err(Mode::synth(), "\\y. y").kind == DiagnosticKind::UnannotatedLambda);
}

TEST_CASE("unsolved meta-variables") {
  auto d = err(Mode::synth(), "right z");
  CHECK(d.kind == DiagnosticKind::UnsolvedMetaVariables);
  REQUIRE(d.synthesized);
  CHECK(pretty_type(*d.synthesized) == "(?X + Nat)");
  CHECK(render_text(d) ==
        "synthesized type: (?X + Nat)\n"
        "           error: This maximal application has unsolved meta-variables\n");
  // Contextual information resolves it.
  CHECK(same_term(ok(Mode::check(ty("B + Nat")), "right z").elaboration, "right [B] [Nat] z"));
}

TEST_CASE("applicand must reveal an arrow") {
  for (const char* t : {"Nat", "B", "Nat -> Nat"}) {
    auto d = err(Mode::check(ty(t)), "bot z");
    CHECK(d.kind == DiagnosticKind::ApplicandNotArrow);
  }
  CHECK(err(Mode::synth(), "z z").kind == DiagnosticKind::ApplicandNotArrow);
}

TEST_CASE("explicit type arguments can introduce meta-variables") {
  CHECK(same_term(ok(Mode::synth(), "bot [Nat -> Nat] z").elaboration, "bot [Nat -> Nat] z"));
  auto r = ok(Mode::synth(), "bot [forall Y. Y -> Y] z");
  CHECK(same_term(r.elaboration, "bot [forall Y. Y -> Y] [Nat] z"));
  CHECK(alpha_equal(r.type, ty("Nat")));
}

TEST_CASE("type mismatch with contextual match") {
  auto d = err(Mode::check(ty("Pair (Nat -> Nat) Nat")), "pair (\\x:B. x) z");
  CHECK(d.kind == DiagnosticKind::TypeMismatch);
  REQUIRE(d.contextual_match);
  CHECK(pretty_type(d.contextual_match->partial) == "Pair ?X ?Y");
  CHECK(pretty_type(d.contextual_match->against) == "Pair (Nat -> Nat) Nat");
  CHECK(render_text(d) ==
        "synthesized type: B -> B\n"
        "   expected type: ?X := Nat -> Nat\n"
        "contextual match: Pair ?X ?Y := Pair (Nat -> Nat) Nat\n"
        "           error: type mismatch\n");
}

TEST_CASE("type mismatch with synthetic match") {
  Context ctx = prelude().with_term("g", ty("forall X. X -> X -> Nat"));
  auto d = err(Mode::synth(), "g z (\\y:B. y)", ctx);
  CHECK(d.kind == DiagnosticKind::TypeMismatch);
  REQUIRE(d.synthetic_match);
  CHECK(d.synthetic_match->arg_index == 1);
  CHECK(pretty_type(d.synthetic_match->partial) == "?X");
  CHECK(pretty_type(d.synthetic_match->against) == "Nat");
  CHECK_FALSE(d.contextual_match);
}

TEST_CASE("partial explicit type application") {
  auto r = ok(Mode::check(ty("Nat -> Nat")), "id [Nat -> Nat] (\\y. y)");
  CHECK(same_term(r.elaboration, "id [Nat -> Nat] (\\y:Nat. y)"));
  auto c = err(Mode::check(ty("Nat")), "f [Nat] [B] z");
  CHECK(c.kind == DiagnosticKind::TypeMismatch);
  // The explicit argument contradicts the contextual decoration X=Nat -> Nat.
  auto e = err(Mode::check(ty("Nat -> Nat")), "id [B] z");
  CHECK(e.kind == DiagnosticKind::ExplicitArgConflict);
}

TEST_CASE("explicit argument conflicting with a contextual decoration") {
  // pair [B] under contextual X = Nat.
  auto d = err(Mode::check(ty("Pair Nat Nat")), "pair [B] z z");
  CHECK(d.kind == DiagnosticKind::ExplicitArgConflict);
}

TEST_CASE("type application needs a quantifier") {
  auto d = err(Mode::synth(), "suc [Nat] z");
  CHECK(d.kind == DiagnosticKind::ApplicandNotForall);
  CHECK(err(Mode::synth(), "z [Nat]").kind == DiagnosticKind::ApplicandNotForall);
}

TEST_CASE("stuck decorations are re-matched after synthetic inference") {
  auto r = ok(Mode::check(ty("Nat")), "id suc x");
  CHECK(same_term(r.elaboration, "id [Nat -> Nat] suc x"));
  auto d = err(Mode::check(ty("Nat")), "id z x");
  CHECK(d.kind == DiagnosticKind::SolutionConflict);
}

TEST_CASE("unbound names") {
  CHECK(err(Mode::synth(), "nope").kind == DiagnosticKind::UnboundName);
  auto r = try_infer(prelude(), Mode::check(ty("Q")), tm("z"));
  REQUIRE(std::holds_alternative<Diagnostic>(r));
  CHECK(std::get<Diagnostic>(r).kind == DiagnosticKind::UnboundName);
}

TEST_CASE("spine judgment: exact prototype") {
  Engine e;
  auto o = e.spine_infer(prelude(), Prototype::exact(ty("Pair (Nat -> Nat) Nat")),
                         tm("pair (\\x. x) z"));
  CHECK(alpha_equal(strip(o.deco), ty("Pair ?X ?Y")));
  CHECK(same_term(o.partial, "pair [?X] [?Y] (\\x:Nat. x) z"));
  CHECK(o.solution.domain() == NameSet{"?X", "?Y"});
  CHECK(alpha_equal(o.solution.find("?X")->type, ty("Nat -> Nat")));
  CHECK(o.checked_args == std::vector<bool>{true, true});
}

TEST_CASE("spine judgment: heads") {
  Engine e;
  auto o = e.spine_infer(prelude(), proto("? -> ? -> Nat"), tm("id"));
  CHECK(o.solution.empty());
  CHECK(pretty_decorated(o.deco) == "forall X. X -> (X, ? -> Nat)");
  auto s = e.spine_infer(prelude(), proto("? -> ?"), tm("suc"));
  REQUIRE(s.deco.is_arrow());
  CHECK(alpha_equal(s.deco.dom(), ty("Nat")));
  CHECK(s.deco.cod().is_plain());
  CHECK_THROWS_AS(e.spine_infer(prelude(), proto("Nat"), tm("z")), InternalError);
}

TEST_CASE("application judgment") {
  Engine e;
  Context ctx = prelude();
  // Checking path after contextual decorations.
  auto pair1 = e.spine_infer(ctx, proto("? -> Pair (Nat -> Nat) Nat"), tm("pair (\\x. x)"));
  CHECK(pair1.solution.domain() == NameSet{"?X", "?Y"});
  auto pair2 = e.apply_arg(ctx, pair1, tm("z"), 2);
  CHECK(alpha_equal(strip(pair2.deco), ty("Pair ?X ?Y")));
  CHECK(pair2.checked_args == std::vector<bool>{true, true});

  // Synthesizing path that unsticks a decoration.
  auto head = e.spine_infer(ctx, proto("? -> ? -> Nat"), tm("id"));
  auto one = e.apply_arg(ctx, head, tm("suc"), 1);
  CHECK(same_term(one.partial, "id [Nat -> Nat] suc"));
  CHECK(deco_arity(one.deco) == 1);
  CHECK(alpha_equal(strip(one.deco), ty("Nat -> Nat")));
  CHECK(one.checked_args == std::vector<bool>{false});

  // No arrow to consume.
  SpineOutcome bad = one;
  bad.deco = Decorated::plain(ty("Nat"));
  try {
    e.apply_arg(ctx, bad, tm("z"), 2);
    FAIL("expected a type error");
  } catch (const TypeError& te) {
    CHECK(te.diagnostic.kind == DiagnosticKind::ApplicandNotArrow);
  }
}

TEST_CASE("rule trace") {
  Engine e(true);
  e.infer(prelude(), Mode::check(ty("Pair (Nat -> Nat) Nat")), tm("pair (\\x. x) z"));
  std::vector<std::string> expect{"AppChk", "?App", "?App", "?Head", "Var", "?Forall",
                                  "?Forall", "?Chk", "Abs",  "Var",   "?Chk", "Var"};
  CHECK(e.trace() == expect);
}

TEST_CASE("trivial completeness and checking extends synthesis on small terms") {
  CorpusConfig cfg = default_corpus_config();
  cfg.max_size = 5;
  Context ctx = corpus_context();
  for (const auto& t : enumerate_internal_terms(ctx, cfg)) {
    auto s = try_infer(ctx, Mode::synth(), t.term);
    REQUIRE(std::holds_alternative<InferOutcome>(s));
    const auto& so = std::get<InferOutcome>(s);
    CHECK(term_alpha_equal(so.elaboration, t.term));
    CHECK(alpha_equal(so.type, t.type));
    auto c = try_infer(ctx, Mode::check(t.type), t.term);
    REQUIRE(std::holds_alternative<InferOutcome>(c));
    CHECK(term_alpha_equal(std::get<InferOutcome>(c).elaboration, t.term));
  }
}

namespace {

// Arguments and annotations of an elaboration never mention meta-variables.
bool spine_local(const Context& ctx, const Term& p) {
  switch (p.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::Lam:
      return meta_vars_of_type(ctx, *p.annotation()).empty() &&
             spine_local(ctx.with_term(p.name(), *p.annotation()), p.body());
    case Term::Kind::TLam:
      return spine_local(ctx.with_type_var(p.name()), p.body());
    case Term::Kind::App: {
      Term a = p.arg();
      return meta_vars_of_term(ctx, a).empty() && spine_local(ctx, a) && spine_local(ctx, p.fun());
    }
    case Term::Kind::TApp:
      return spine_local(ctx, p.fun());
  }
  return false;
}

}  // namespace

TEST_CASE("spine judgments are sound with respect to prototype matching") {
  Context ctx = corpus_context();
  CorpusConfig cfg = default_corpus_config();
  cfg.max_size = 6;
  cfg.per_size_limit = 300;
  std::size_t judged = 0, failures = 0;
  for (const auto& t : enumerate_internal_terms(ctx, cfg)) {
    for (const auto& ext : enumerate_erasures(t.term)) {
      for (bool check : {false, true}) {
        Engine e;
        e.set_observer([&](const Context& c, const Prototype& p, const Term&,
                           const SpineOutcome& o) {
          ++judged;
          NameSet metas = meta_vars_of_term(c, o.partial);
          bool ok = true;
          for (const auto& m : o.solution.domain()) ok = ok && metas.contains(m);
          for (const auto& [m, b] : o.solution)
            ok = ok && is_well_formed(c, b.type);
          auto r = match_proto(metas, strip(o.deco), p);
          ok = ok && r && solution_equal(r->solution, o.solution) &&
               decorated_alpha_equal(r->decorated, o.deco);
          ok = ok && spine_local(c, o.partial);
          if (!ok) {
            ++failures;
            MESSAGE("spine judgment " << pretty_prototype(p) << " |- " << pretty_term(o.partial)
                                      << " : " << pretty_decorated(o.deco));
          }
        });
        try {
          InferOutcome out = e.infer(ctx, check ? Mode::check(t.type) : Mode::synth(), ext);
          CHECK(spine_local(ctx, out.elaboration));
          CHECK(meta_vars_of_term(ctx, out.elaboration).empty());
        } catch (const TypeError&) {
        }
      }
    }
  }
  CHECK(judged > 1000);
  CHECK(failures == 0);
}
