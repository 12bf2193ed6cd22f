/* syntax.hpp -- parsing and printing of the two formula dialects */
#pragma once

#include <string>

#include "ldlf/formula.hpp"

namespace ldlf {

// Canonical is this project's surface syntax; TheoryGrammar mirrors the
// operator table used by ASP theory-grammar front ends (&true, &t, ~,
// prefix ? and *, +, ;;, .>?, .>*).
enum class Dialect { Canonical, TheoryGrammar };

// Parses a single formula.  Throws ParseError with 1-based line:column
// and the expected-token set on bad input; the reserved atom `last` is
// rejected here as well.
FormulaPtr parse(const std::string &text, Dialect dialect = Dialect::Canonical);

// Stable printer: equal ASTs yield equal strings, and
// parse(print(f, d), d) reproduces f exactly.  TheoryGrammar has no
// tokens for the temporal sugar (X, U, ...); printing such a formula
// throws UnsupportedError (desugar first).
std::string print(const FormulaPtr &f, Dialect dialect = Dialect::Canonical);
std::string print(const PathPtr &p, Dialect dialect = Dialect::Canonical);

} // namespace ldlf
