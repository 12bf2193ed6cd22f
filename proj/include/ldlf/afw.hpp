/* afw.hpp -- alternating finite automata over traces with `last` */
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ldlf/facts.hpp"
#include "ldlf/formula.hpp"
#include "ldlf/trace.hpp"

namespace ldlf {

// One disjunct of a transition in DNF: the letter must satisfy every
// condition (atom in / atom out), after which every successor state
// must be discharged.  Empty successors reach the true constant.
struct TransitionConjunct {
  std::map<Atom, bool> conditions; // true = in, false = out
  std::set<int> successors;

  bool matches(const Letter &letter) const {
    for (const auto &[atom, in] : conditions)
      if (letter.contains(atom) != in)
        return false;
    return true;
  }

  bool operator==(const TransitionConjunct &o) const {
    return conditions == o.conditions && successors == o.successors;
  }
};

// Alternating automaton with symbolic DNF transitions.  States are the
// reachable negation-normal-form members of the formula closure, ids in
// breadth-first discovery order; the final-state set is empty by
// construction (`last` takes its place).
class Afw {
public:
  const SymbolTable &symbols() const { return symbols_; }
  int initial() const { return initial_; }
  std::size_t state_count() const { return states_.size(); }
  const FormulaPtr &state_formula(int id) const { return states_[id]; }
  const std::vector<TransitionConjunct> &transitions(int id) const {
    return transitions_[id];
  }

  bool operator==(const Afw &o) const;

  friend Afw build_afw(const FormulaPtr &f);
  friend Afw afw_from_facts(const std::string &text);

private:
  SymbolTable symbols_;
  std::vector<FormulaPtr> states_;
  int initial_ = 0;
  std::vector<std::vector<TransitionConjunct>> transitions_;
};

// Compiles a formula (desugared and normalized internally) into its
// alternating automaton, keeping only reachable states.
Afw build_afw(const FormulaPtr &f);

// Runs the obligation-set frontier over the trace; the frontier is kept
// as an antichain since discharging fewer states is always easier.
bool accepts(const Afw &a, const Trace &t);

// Fact-file interchange: prop/2, state/2, initial_state/1, delta/2,3,4.
std::string afw_to_facts(const Afw &a);
Afw afw_from_facts(const std::string &text);

// DOT rendering; universal transitions appear as auxiliary nodes.
std::string afw_to_dot(const Afw &a);

} // namespace ldlf
