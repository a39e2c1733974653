#pragma once

#include <string>

#include "spinel/decorated.hpp"
#include "spinel/parser.hpp"
#include "spinel/pretty.hpp"
#include "spinel/syntax.hpp"

namespace testing {

// The running example's context, plus the constructors and combinators the
// error-message examples use.
inline const char* kPrelude = R"(
type Nat/0.  type B/0.  type Pair/2.  type Sum/2.  type (+)/2.
assume z : Nat.
assume x : Nat.
assume suc : Nat -> Nat.
assume pair : forall X. forall Y. X -> Y -> Pair X Y.
assume right : forall X. forall Y. Y -> (X + Y).
assume bot : forall X. X.
assume id : forall X. X -> X.
assume rapp : forall X. forall Y. X -> (X -> Y) -> Y.
assume f : forall X. forall Y. Y -> X.
)";

inline spinel::Context prelude() {
  static const spinel::Context ctx = spinel::parse_program(kPrelude).context;
  return ctx;
}

// Free variables are allowed so meta-variables and open types can be written.
inline spinel::Type ty(const std::string& src, const spinel::Context& ctx = prelude()) {
  return spinel::parse_type(src, ctx, true);
}
inline spinel::Term tm(const std::string& src, const spinel::Context& ctx = prelude()) {
  return spinel::parse_term(src, ctx, true);
}
inline spinel::Prototype proto(const std::string& src, const spinel::Context& ctx = prelude()) {
  return spinel::parse_prototype(src, ctx, true);
}

}  // namespace testing
