/* rewrite.hpp -- desugaring, negation normal form, closure */
#pragma once

#include <vector>

#include "ldlf/formula.hpp"

namespace ldlf {

// Expands every derived connective into the dynamic core:
//   a & b   -> <(a)?> b          a | b  -> <(a)? + (b)?> tt
//   a -> b  -> [(a)?] b          X f    -> <step> f
//   wX f    -> [step] f          end    -> [step] ff
//   <> f    -> <step*> f         [] f   -> [step*] f
//   a U b   -> <((a)? ; step)*> b
//   a R b   -> (b U (a & b)) | [] b, expanded recursively
//   formula-as-path f -> (f)? ; step
// Negation survives as a Neg node; nnf removes it from compound bodies.
FormulaPtr desugar(const FormulaPtr &f);
PathPtr desugar(const PathPtr &p);

// Pushes negation down to atoms using the modal dualities.  Accepts
// sugared input as well (De Morgan and the temporal duals); on core
// input the result is core.  Tests inside paths are normalized too.
FormulaPtr nnf(const FormulaPtr &f);

// nnf(desugar(f)): the normal form consumed by the automaton builder.
FormulaPtr nnf_core(const FormulaPtr &f);

// True iff the path contains no occurrence of `step`; such a path can
// only relate a time point to itself.
bool is_test_only(const PathPtr &p);

// Fischer-Ladner closure of a core formula: the least set closed under
// the unfolding rules for <.> and (dually) [.], plus the negation of
// every member that is not itself negated.  Order is the insertion
// order of the worklist fixpoint, which is deterministic.
std::vector<FormulaPtr> closure(const FormulaPtr &f);

} // namespace ldlf
