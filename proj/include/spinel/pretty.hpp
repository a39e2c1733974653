#ifndef SPINEL_PRETTY_HPP
#define SPINEL_PRETTY_HPP

#include <string>

#include "spinel/decorated.hpp"
#include "spinel/syntax.hpp"

namespace spinel {

// Concrete-syntax renderers. Output re-parses to an alpha-equivalent value.
// Meta-variables render with their '?' prefix; binary constructors with a
// symbolic name render infix and parenthesized, e.g. `(?X + Nat)`.

std::string pretty_type(const Type& t);
std::string pretty_term(const Term& t);
std::string pretty_prototype(const Prototype& p);
/// Quantifier decorations render as `forall X=R.`; stuck ones as `(X, ? -> P)`.
std::string pretty_decorated(const Decorated& w);
/// `{?X := Nat, ...}`
std::string pretty_solution(const Solution& s);

bool is_operator_name(const std::string& name);

}  // namespace spinel

#endif  // SPINEL_PRETTY_HPP
