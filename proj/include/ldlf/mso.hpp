/* mso.hpp -- monadic second-order logic of linear order */
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ldlf/formula.hpp"
#include "ldlf/trace.hpp"

namespace ldlf {

class MsoFormula;
using MsoPtr = std::shared_ptr<const MsoFormula>;

enum class MKind {
  True,
  False,
  Member,   // X(x)
  Less,     // x < y
  Not,
  Or,
  And,
  Implies,
  Iff,
  ExistsFO,
  ForallFO,
  ExistsSO,
  ForallSO,
};

// First-order variables range over trace positions, second-order ones
// over position sets; atom predicates are free second-order variables
// named after the atom.
class MsoFormula {
public:
  MKind kind() const { return kind_; }
  const std::string &var() const { return var_; }   // bound or SO var
  const std::string &var2() const { return var2_; } // second FO var
  const MsoPtr &lhs() const { return lhs_; }
  const MsoPtr &rhs() const { return rhs_; }

  static MsoPtr make(MKind kind, std::string var, std::string var2,
                     MsoPtr lhs, MsoPtr rhs);

private:
  MsoFormula() = default;
  MKind kind_;
  std::string var_, var2_;
  MsoPtr lhs_, rhs_;
};

// Core constructors.
MsoPtr mso_true();
MsoPtr mso_false();
MsoPtr member(std::string so, std::string fo);
MsoPtr less(std::string fo1, std::string fo2);
MsoPtr mso_not(MsoPtr f);
MsoPtr mso_or(MsoPtr a, MsoPtr b);
MsoPtr mso_and(MsoPtr a, MsoPtr b);
MsoPtr mso_implies(MsoPtr a, MsoPtr b);
MsoPtr mso_iff(MsoPtr a, MsoPtr b);
MsoPtr exists_fo(std::string v, MsoPtr body);
MsoPtr forall_fo(std::string v, MsoPtr body);
MsoPtr exists_so(std::string v, MsoPtr body);
MsoPtr forall_so(std::string v, MsoPtr body);

// Fresh-name source; never repeats a name within one translation.
class VarGen {
public:
  std::string fo() { return "v" + std::to_string(fo_++); }
  std::string so() { return "X" + std::to_string(so_++); }

private:
  int fo_ = 0;
  int so_ = 0;
};

// Abbreviations, expanded to the core grammar at construction.  The
// ones that need auxiliary bound variables draw them from the VarGen.
MsoPtr eq_fo(const std::string &x, const std::string &y);
MsoPtr neq_fo(const std::string &x, const std::string &y);
MsoPtr leq_fo(const std::string &x, const std::string &y);
MsoPtr succ(const std::string &x, const std::string &y, VarGen &gen);
MsoPtr first_pos(const std::string &x, VarGen &gen);
MsoPtr last_pos(const std::string &x, VarGen &gen);
MsoPtr bound(const std::string &so, const std::string &w, const std::string &v,
             VarGen &gen);
MsoPtr subset(const std::string &x, const std::string &y, VarGen &gen);
MsoPtr eq_so(const std::string &x, const std::string &y, VarGen &gen);
MsoPtr neq_so(const std::string &x, const std::string &y, VarGen &gen);

// Standard translation (one second-order quantifier per star).  Sugar
// is desugared internally; negation is translated classically.
MsoPtr st_m(const std::string &w, const FormulaPtr &f);
MsoPtr st_p(const std::string &w, const std::string &v, const PathPtr &p);
MsoPtr st_m(const std::string &w, const FormulaPtr &f, VarGen &gen);
MsoPtr st_p(const std::string &w, const std::string &v, const PathPtr &p,
            VarGen &gen);

// Closure-based encoding: one existential predicate per non-atomic
// closure member reachable from the root, each constrained pointwise.
// Star unfoldings that can revisit a member within the same position
// (test-only or nullable star bodies) are solved out with the fixpoint
// value so the constraint system keeps a unique solution.
struct MsoEncoding {
  std::vector<FormulaPtr> members; // index i names predicate Qi
  std::vector<MsoPtr> rows;        // pointwise constraint for Qi
  MsoPtr formula;                  // full encoding at the free time var
};
MsoEncoding mso_encode(const std::string &t, const FormulaPtr &f);
MsoPtr mso_enc(const std::string &t, const FormulaPtr &f);

// Assignments: first-order values are positions, second-order values
// position sets (bitmask).  Atom predicates are seeded from the trace.
struct Assignment {
  std::map<std::string, std::size_t> v1;
  std::map<std::string, std::uint64_t> v2;
};

// Brute-force evaluation.  Second-order quantification enumerates all
// subsets, smallest bitmask first; first witness wins.  Limits: traces
// longer than 64 positions are rejected outright, quantified
// second-order evaluation needs length <= 6, and more than 12 nested
// second-order quantifiers raise ResourceLimitError.
bool eval_mso(const Trace &t, const MsoPtr &f, const Assignment &assign);

// MONA program text (m2l-str mode): one free second-order variable per
// alphabet atom, connectives spelled in MONA syntax, macros expanded.
// Names that collide with MONA keywords gain a "p_" prefix.
std::string emit_mona(const MsoPtr &f, const std::set<Atom> &alphabet);

// Pretty form used by tests and the CLI (not a parseable format).
std::string mso_to_string(const MsoPtr &f);

} // namespace ldlf
