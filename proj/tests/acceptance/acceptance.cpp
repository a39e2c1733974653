// Acceptance suite: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinel/corpus.hpp"
#include "spinel/infer.hpp"
#include "spinel/internal_checker.hpp"
#include "spinel/matcher.hpp"
#include "spinel/parser.hpp"
#include "spinel/pretty.hpp"
#include "spinel/spec_oracle.hpp"

using namespace spinel;

namespace {

const char* kPrelude = R"(
type Nat/0.  type B/0.  type Pair/2.  type (+)/2.
assume z : Nat.
assume x : Nat.
assume pair : forall X. forall Y. X -> Y -> Pair X Y.
assume right : forall X. forall Y. Y -> (X + Y).
assume bot : forall X. X.
assume rapp : forall X. forall Y. X -> (X -> Y) -> Y.
)";

const Context& prelude() {
  static const Context ctx = parse_program(kPrelude).context;
  return ctx;
}

Type ty(const std::string& s) { return parse_type(s, prelude(), true); }
Term tm(const std::string& s) { return parse_term(s, prelude(), true); }

// Collects failure notes for one criterion; keeps the first few.
struct Check {
  std::vector<std::string> notes;
  std::size_t failures = 0;
  std::string summary;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }

  // Builds the message only on failure; for hot loops.
  template <class F>
  void expect_with(bool cond, F&& what) {
    if (!cond) expect(false, what());
  }
};

int failed_criteria = 0;
std::set<int> selected;  // empty means all

void report(int n, const std::string& title, const std::function<void(Check&)>& body) {
  if (!selected.empty() && !selected.contains(n)) return;
  Check c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = c.failures == 0;
  if (!pass) ++failed_criteria;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1fs", secs);
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title;
  if (!c.summary.empty()) std::cout << " [" << c.summary << "]";
  std::cout << " (" << timing << ")\n";
  for (const auto& note : c.notes) std::cout << "    " << note << "\n";
  std::cout.flush();
}

std::variant<InferOutcome, Diagnostic> run(const Context& ctx, const Mode& m, const Term& t) {
  return try_infer(ctx, m, t);
}

std::string diag_text(const std::variant<InferOutcome, Diagnostic>& r) {
  if (auto* d = std::get_if<Diagnostic>(&r)) return render_text(*d);
  return "typed: " + pretty_term(std::get<InferOutcome>(r).elaboration);
}

// ---- shared corpus

struct Corpus {
  Context ctx = corpus_context();
  std::vector<TypedTerm> internal;
  std::vector<Term> external;  // distinct erasures of `internal`
  std::vector<std::size_t> origin;  // index into `internal`
};

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus c;
    CorpusConfig cfg = default_corpus_config();
    cfg.max_size = 7;
    cfg.per_size_limit = 4000;
    c.internal = enumerate_internal_terms(c.ctx, cfg);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < c.internal.size(); ++i)
      for (auto& t : enumerate_erasures(c.internal[i].term))
        if (seen.insert(pretty_term(t)).second) {
          c.external.push_back(t);
          c.origin.push_back(i);
        }
    return c;
  }();
  return c;
}

// ---- criteria

void running_example(Check& c) {
  auto r = run(prelude(), Mode::check(ty("Pair (Nat -> Nat) Nat")), tm("pair (\\x. x) z"));
  auto* o = std::get_if<InferOutcome>(&r);
  c.expect(o != nullptr, diag_text(r));
  if (o)
    c.expect(term_alpha_equal(o->elaboration, tm("pair [Nat -> Nat] [Nat] (\\x:Nat. x) z")),
             "elaboration " + pretty_term(o->elaboration));
}

void diagnostics(Check& c) {
  auto kind_of = [&](const Mode& m, const char* src) -> std::optional<Diagnostic> {
    auto r = run(prelude(), m, tm(src));
    if (auto* d = std::get_if<Diagnostic>(&r)) return *d;
    c.expect(false, std::string(src) + " unexpectedly succeeded");
    return std::nullopt;
  };
  if (auto d = kind_of(Mode::synth(), "pair (\\x. x) z"))
    c.expect(d->kind == DiagnosticKind::UnannotatedLambda, "(a) " + render_text(*d));
  if (auto d = kind_of(Mode::synth(), "right z")) {
    c.expect(d->kind == DiagnosticKind::UnsolvedMetaVariables, "(b) " + render_text(*d));
    c.expect(render_text(*d).find("?X") != std::string::npos, "(b) no ?X: " + render_text(*d));
  }
  if (auto d = kind_of(Mode::check(ty("Nat")), "bot z"))
    c.expect(d->kind == DiagnosticKind::ApplicandNotArrow, "(c) " + render_text(*d));
  if (auto d = kind_of(Mode::check(ty("Pair (Nat -> Nat) Nat")), "pair (\\x:B. x) z")) {
    c.expect(d->kind == DiagnosticKind::TypeMismatch, "(d) " + render_text(*d));
    c.expect(d->contextual_match && alpha_equal(d->contextual_match->partial, ty("Pair ?X ?Y")) &&
                 alpha_equal(d->contextual_match->against, ty("Pair (Nat -> Nat) Nat")),
             "(d) " + render_text(*d));
  }
  for (const char* src : {"bot [Nat -> Nat] z", "bot [forall Y. Y -> Y] z"}) {
    auto r = run(prelude(), Mode::synth(), tm(src));
    c.expect(std::holds_alternative<InferOutcome>(r), std::string("(e) ") + src + ": " + diag_text(r));
  }
}

void rapp(Check& c) {
  auto r = run(prelude(), Mode::check(ty("Nat")), tm("rapp x (\\y. y)"));
  auto* o = std::get_if<InferOutcome>(&r);
  c.expect(o != nullptr, diag_text(r));
  if (o)
    c.expect(term_alpha_equal(o->elaboration, tm("rapp [Nat] [Nat] x (\\y:Nat. y)")),
             "elaboration " + pretty_term(o->elaboration));
}

void matcher_goldens(Check& c) {
  Prototype p = parse_prototype("? -> ? -> Nat", prelude());
  auto a = match_proto({}, ty("forall X. forall Y. X -> Y -> X"), p);
  Decorated wa = Decorated::forall(
      "X", ty("Nat"),
      Decorated::forall("Y", std::nullopt,
                        Decorated::arrow(ty("X"), Decorated::arrow(ty("Y"), Decorated::plain(ty("X"))))));
  c.expect(a && a->solution.empty() && decorated_alpha_equal(a->decorated, wa),
           a ? pretty_decorated(a->decorated) : "first match failed");

  auto b = match_proto({}, ty("forall X. X -> X"), p);
  Decorated wb = Decorated::forall(
      "X", std::nullopt,
      Decorated::arrow(ty("X"), Decorated::stuck("X", parse_prototype("? -> Nat", prelude()))));
  c.expect(b && b->solution.empty() && decorated_alpha_equal(b->decorated, wb),
           b ? pretty_decorated(b->decorated) : "second match failed");

  Decorated stuck = Decorated::arrow(ty("X"), Decorated::stuck("X", parse_prototype("? -> Nat", prelude())));
  auto good = subst_decorated(Solution{}.compose("X", ty("Nat -> Nat"), Provenance::explicit_arg()), stuck);
  c.expect(good && good->is_arrow() && alpha_equal(strip(*good), ty("(Nat -> Nat) -> Nat -> Nat")),
           good ? pretty_decorated(*good) : "substitution undefined");
  auto bad = subst_decorated(Solution{}.compose("X", ty("Nat"), Provenance::explicit_arg()), stuck);
  c.expect(!bad, "[Nat/X] should be undefined");
}

void soundness(Check& c) {
  const Corpus& k = corpus();
  std::size_t successes = 0, synth_ok = 0, check_ok = 0;
  std::set<std::size_t> typed_terms;
  for (std::size_t i = 0; i < k.external.size(); ++i) {
    const Term& t = k.external[i];
    std::vector<Mode> modes{Mode::synth(), Mode::check(k.internal[k.origin[i]].type)};
    for (std::size_t m = 0; m < modes.size(); ++m) {
      auto r = run(k.ctx, modes[m], t);
      auto* o = std::get_if<InferOutcome>(&r);
      if (!o) continue;
      ++successes;
      (m == 0 ? synth_ok : check_ok)++;
      typed_terms.insert(i);
      try {
        Type got = check_internal(k.ctx, o->elaboration);
        c.expect(alpha_equal(got, o->type),
                 pretty_term(t) + ": elaboration has type " + pretty_type(got));
        if (modes[m].is_check())
          c.expect(alpha_equal(o->type, *modes[m].expected), pretty_term(t) + ": wrong type");
      } catch (const InternalTypeError& e) {
        c.expect(false, pretty_term(t) + " elaborates to ill-typed " + pretty_term(o->elaboration) +
                            ": " + e.what());
      }
    }
  }
  c.expect(typed_terms.size() >= 10000,
           "only " + std::to_string(typed_terms.size()) + " external terms typed");
  c.summary = std::to_string(typed_terms.size()) + " external terms typed, " +
              std::to_string(synth_ok) + " synth + " + std::to_string(check_ok) +
              " check successes";
}

void completeness(Check& c) {
  const Corpus& k = corpus();
  for (const auto& t : k.internal) {
    auto s = run(k.ctx, Mode::synth(), t.term);
    auto* so = std::get_if<InferOutcome>(&s);
    c.expect(so && term_alpha_equal(so->elaboration, t.term) && alpha_equal(so->type, t.type),
             "trivial completeness: " + pretty_term(t.term) + " -> " + diag_text(s));
    auto ch = run(k.ctx, Mode::check(t.type), t.term);
    auto* co = std::get_if<InferOutcome>(&ch);
    c.expect(co && term_alpha_equal(co->elaboration, t.term),
             "trivial completeness (check): " + pretty_term(t.term) + " -> " + diag_text(ch));
  }
  std::size_t extended = 0;
  for (const auto& t : k.external) {
    auto s = run(k.ctx, Mode::synth(), t);
    auto* so = std::get_if<InferOutcome>(&s);
    if (!so) continue;
    auto ch = run(k.ctx, Mode::check(so->type), t);
    auto* co = std::get_if<InferOutcome>(&ch);
    c.expect(co && term_alpha_equal(co->elaboration, so->elaboration),
             "checking extends synthesis: " + pretty_term(t) + " -> " + diag_text(ch));
    ++extended;
  }
  c.summary = std::to_string(k.internal.size()) + " internal terms, " + std::to_string(extended) +
              " synthesized external terms re-checked";
}

// Which matching rules could fire on (T, P), decided from the heads alone.
struct Applicable {
  std::array<const char*, 3> names{};
  std::size_t count = 0;
  void add(const char* r) { names[count++] = r; }
};

Applicable applicable_rules(const NameSet& metas, const Type& t, const Prototype& p) {
  Applicable out;
  if (p.is_unknown()) out.add("M?");
  if (p.is_exact()) out.add("MType");
  if (p.is_arrow_to()) {
    if (t.is_arrow()) out.add("MArr");
    if (t.is_forall()) out.add("MForall");
    if (t.is_var() && metas.contains(t.name())) out.add("MCurr");
  }
  return out;
}

// Replays a rule trace and audits every step against applicable_rules.
bool audit_rules(const NameSet& metas, const Type& t, const Prototype& p,
                 const std::vector<std::string>& rules, std::size_t& pos) {
  auto options = applicable_rules(metas, t, p);
  if (options.count > 1) return false;
  if (options.count == 0) return pos == rules.size();
  const std::string_view rule = options.names[0];
  if (pos >= rules.size() || rules[pos] != rule) return false;
  ++pos;
  if (rule == "MArr") return audit_rules(metas, t.cod(), p.rest(), rules, pos);
  if (rule == "MForall") {
    NameSet inner = metas;
    NameSet avoid = free_type_vars(t.body());
    avoid.erase(t.name());
    avoid.insert(metas.begin(), metas.end());
    avoid.merge(free_type_vars(p));
    std::string bound = fresh_name(t.name(), avoid);
    inner.insert(bound);
    return audit_rules(inner, substitute(t.name(), Type::var(bound), t.body()), p, rules, pos);
  }
  return true;
}

void matcher_properties(Check& c) {
  // Signature with two constructors; A is declared, M may be a meta-variable.
  Context sig = parse_program("type Nat/0. type Pair/2. type A.").context;
  auto types = enumerate_types(sig, {"A", "M"}, {"X", "Y"}, 7);
  // Prototypes of size at most 7: exact leaves may mention A and bind X, Y.
  auto leaves = enumerate_types(sig, {"A"}, {"X", "Y"}, 7);
  std::vector<Prototype> protos;
  for (auto& p : enumerate_prototypes(leaves, 3))
    if (prototype_size(p) <= 7) protos.push_back(std::move(p));
  std::size_t pairs = 0, successes = 0;
  std::vector<std::string> rules1, rules2;
  for (const auto& t : types) {
    for (const auto& p : protos) {
      for (const NameSet& metas : {NameSet{}, NameSet{"M"}}) {
        ++pairs;
        rules1.clear();
        rules2.clear();
        auto r1 = match_proto_explained(metas, t, p, &rules1);
        auto r2 = match_proto_explained(metas, t, p, &rules2);
        c.expect_with(rules1 == rules2, [&] { return std::string("nondeterministic rule choice on " + pretty_type(t)); });
        std::size_t pos = 0;
        bool audited = audit_rules(metas, t, p, rules1, pos) && pos == rules1.size();
        c.expect_with(audited, [&] { return std::string("rule audit failed on " + pretty_type(t) + " := " + pretty_prototype(p)); });
        auto* a = std::get_if<MatchResult>(&r1);
        auto* b = std::get_if<MatchResult>(&r2);
        c.expect((a == nullptr) == (b == nullptr), "nondeterministic outcome");
        if (!a || !b) continue;
        ++successes;
        c.expect_with(decorated_alpha_equal(a->decorated, b->decorated) &&
                     solution_equal(a->solution, b->solution), [&] { return std::string("different results on re-run for " + pretty_type(t)); });
        c.expect_with(deco_arity(a->decorated) <= proto_arity(p), [&] { return std::string("arity bound: " + pretty_decorated(a->decorated) + " vs " + pretty_prototype(p)); });
        for (const auto& m : a->solution.domain())
          c.expect_with(metas.contains(m), [&] { return std::string("solution outside metas: " + m); });
        c.expect(alpha_equal(strip(a->decorated), t), "strip changed the type");
        if (p.is_exact())
          c.expect(alpha_equal(subst_type(a->solution, t), p.type()), "exact round trip");
      }
    }
  }
  c.summary = std::to_string(types.size()) + " types, " + std::to_string(protos.size()) +
              " prototypes, " + std::to_string(pairs) + " pairs, " +
              std::to_string(successes) + " matches";
}

std::optional<Type> mode_type(const Mode& m) { return m.expected; }

void differential(Check& c) {
  const Corpus& k = corpus();
  std::size_t verified = 0, searched = 0, spec_triples = 0;
  for (std::size_t i = 0; i < k.external.size(); ++i) {
    const Term& t = k.external[i];
    if (!t.is_app()) continue;
    for (const Mode& m : {Mode::synth(), Mode::check(k.internal[k.origin[i]].type)}) {
      std::optional<InferOutcome> algo;
      try {
        Engine e;
        algo = e.infer(k.ctx, m, t);
      } catch (const TypeError&) {
      }
      // Soundness: every algorithm success is a declarative derivation.
      if (algo) {
        SpecTriple claimed{strip(algo->spine->deco), algo->spine->partial, algo->spine->solution};
        auto v = verify_spec(k.ctx, mode_type(m), t, claimed);
        c.expect(v.accepted, "verify_spec rejected " + pretty_term(t) + ": " + v.reason);
        ++verified;
      }
      // Completeness: every declarative derivation meeting the side conditions
      // is found by the algorithm.
      if (i % 4 != 0) continue;
      ++searched;
      for (const auto& tr : search_spec(k.ctx, mode_type(m), t)) {
        if (meta_vars_of_type(k.ctx, tr.type) != tr.solution.domain()) continue;
        NameSet mv = meta_vars_of_term(k.ctx, tr.partial);
        Term final = tr.partial;
        if (!m.is_check()) {
          if (!tr.solution.empty() || !mv.empty()) continue;
        } else {
          if (mv != tr.solution.domain()) continue;
          if (!alpha_equal(tr.solution.apply(tr.type), *m.expected)) continue;
          final = substitute_spine(tr.solution.as_subst(), tr.partial);
        }
        ++spec_triples;
        c.expect(algo.has_value(), "algorithm fails on " + pretty_term(t) + " but spec derives " +
                                       pretty_term(final));
        if (algo)
          c.expect(term_alpha_equal(algo->elaboration, final),
                   pretty_term(t) + ": spec " + pretty_term(final) + " vs algorithm " +
                       pretty_term(algo->elaboration));
      }
    }
  }
  c.summary = std::to_string(verified) + " successes verified, " + std::to_string(searched) +
              " searches, " + std::to_string(spec_triples) + " declarative results matched";
}

void weak_completeness(Check& c) {
  const Corpus& k = corpus();
  std::size_t terms = 0, erasures = 0, qualifying = 0, beyond = 0;
  for (const auto& e : k.internal) {
    ++terms;
    for (const auto& t : enumerate_erasures(e.term)) {
      ++erasures;
      bool conds = check_weak_completeness_conditions(k.ctx, e.term, t);
      auto r = run(k.ctx, Mode::synth(), t);
      auto* o = std::get_if<InferOutcome>(&r);
      if (conds) {
        ++qualifying;
        c.expect(o && term_alpha_equal(o->elaboration, e.term),
                 pretty_term(t) + " (from " + pretty_term(e.term) + "): " + diag_text(r));
      } else if (o && term_alpha_equal(o->elaboration, e.term)) {
        ++beyond;
      }
    }
  }
  c.expect(terms >= 1000, "corpus too small: " + std::to_string(terms));
  c.summary = std::to_string(terms) + " internal terms, " + std::to_string(erasures) +
              " erasures, " + std::to_string(qualifying) + " meet the conditions, " +
              std::to_string(beyond) + " succeed without meeting them";
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  report(1, "running example elaborates to pair [Nat -> Nat] [Nat] (\\x:Nat. x) z", running_example);
  report(2, "golden diagnostics (a)-(e)", diagnostics);
  report(3, "rapp x (\\y. y) : Nat elaborates with [Nat] [Nat]", rapp);
  report(4, "prototype matching and decorated substitution goldens", matcher_goldens);
  report(5, "soundness: elaborations are well typed", soundness);
  report(6, "trivial completeness; checking extends synthesis", completeness);
  report(7, "matching: arity bound, solution bound, determinism", matcher_properties);
  report(8, "algorithm and declarative rules agree", differential);
  report(9, "weak completeness over partial erasures", weak_completeness);
  std::cout << (failed_criteria == 0 ? "all criteria passed" : "some criteria failed") << "\n";
  return failed_criteria == 0 ? 0 : 1;
}
