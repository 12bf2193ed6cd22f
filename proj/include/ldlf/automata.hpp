/* automata.hpp -- NFAs and DFAs derived from alternating automata */
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ldlf/afw.hpp"

namespace ldlf {

// Partial-assignment guard: a letter matches when every condition
// holds.  Guards keep the alphabet symbolic instead of expanding the
// exponential set of letters.
struct Guard {
  std::map<Atom, bool> conditions; // true = in, false = out

  bool matches(const Letter &letter) const {
    for (const auto &[atom, in] : conditions)
      if (letter.contains(atom) != in)
        return false;
    return true;
  }
  bool operator==(const Guard &o) const { return conditions == o.conditions; }
  bool operator<(const Guard &o) const { return conditions < o.conditions; }
};

std::string guard_label(const Guard &g);

struct NfaTransition {
  int from;
  Guard guard;
  int to;
  bool operator==(const NfaTransition &o) const {
    return from == o.from && guard == o.guard && to == o.to;
  }
};

// Nondeterministic automaton over last-augmented letters.  Each state
// is an obligation set of AFW states (kept as metadata); the single
// final state is the empty obligation.
class Nfa {
public:
  const SymbolTable &symbols() const { return symbols_; }
  std::size_t state_count() const { return obligations_.size(); }
  const std::set<int> &obligation(int id) const { return obligations_[id]; }
  const std::set<int> &initials() const { return initials_; }
  const std::set<int> &finals() const { return finals_; }
  const std::vector<NfaTransition> &transitions() const { return transitions_; }
  const std::vector<std::vector<const NfaTransition *>> &outgoing() const {
    return outgoing_;
  }

  friend Nfa afw_to_nfa(const Afw &a);

private:
  SymbolTable symbols_;
  std::vector<std::set<int>> obligations_;
  std::set<int> initials_;
  std::set<int> finals_;
  std::vector<NfaTransition> transitions_;
  std::vector<std::vector<const NfaTransition *>> outgoing_;
  void index_outgoing();
};

// Deterministic automaton.  Guards never mention `last`: acceptance of
// the final letter is folded into the final-state set, so for every
// state the guards are pairwise disjoint and cover every letter.
class Dfa {
public:
  const SymbolTable &symbols() const { return symbols_; }
  std::size_t state_count() const { return labels_.size(); }
  const std::string &label(int id) const { return labels_[id]; }
  int initial() const { return initial_; }
  const std::set<int> &finals() const { return finals_; }
  const std::vector<std::pair<Guard, int>> &outgoing(int id) const {
    return transitions_[id];
  }

  friend Dfa nfa_to_dfa(const Nfa &n, std::size_t state_cap);
  friend Dfa minimize_dfa(const Dfa &d);
  friend Dfa dfa_from_facts(const std::string &text);
  friend Dfa dfa_from_dot(const std::string &text);
  friend Dfa make_dfa(SymbolTable symbols, std::vector<std::string> labels,
                      int initial, std::set<int> finals,
                      std::vector<std::vector<std::pair<Guard, int>>> tr);

private:
  SymbolTable symbols_;
  std::vector<std::string> labels_;
  int initial_ = 0;
  std::set<int> finals_;
  std::vector<std::vector<std::pair<Guard, int>>> transitions_;
};

// Direct construction, used for hand-entered golden machines and tests.
Dfa make_dfa(SymbolTable symbols, std::vector<std::string> labels, int initial,
             std::set<int> finals,
             std::vector<std::vector<std::pair<Guard, int>>> tr);

// Reachable obligation sets of the AFW; one transition per compatible
// choice of conjuncts.  States whose transition function is the
// unconditional true conjunct never constrain a run and are dropped
// from obligations.
Nfa afw_to_nfa(const Afw &a);

bool nfa_accepts(const Nfa &n, const Trace &t);

// Subset construction over guard refinements (minterms of the atoms
// mentioned by each macro state).  Exceeding `state_cap` raises
// ResourceLimitError.
Dfa nfa_to_dfa(const Nfa &n, std::size_t state_cap = 1000000);

bool dfa_accepts(const Dfa &d, const Trace &t);

// Partition-refinement minimization (Myhill-Nerode classes); result is
// language-equal on traces and idempotent.
Dfa minimize_dfa(const Dfa &d);

// Fact interchange: as for AFWs plus final_state/1.
std::string nfa_to_facts(const Nfa &n);
std::string dfa_to_facts(const Dfa &d);
Dfa dfa_from_facts(const std::string &text);

std::string nfa_to_dot(const Nfa &n);
std::string dfa_to_dot(const Dfa &d);

// Documented DOT subset (what MONA-style exports look like): digraph,
// doublecircle marks finals, an `init` marker or the first node is
// initial, edge labels are conjunctions of possibly negated atom names
// ('&' or '∧' between literals, '~' or '!' negation, 'true' or no
// label for the universal guard).  Unlabeled letter space goes to a
// rejecting sink.
Dfa dfa_from_dot(const std::string &text);

// Equality of accepted trace sets up to the length bound.
bool bounded_language_equal(const Dfa &a, const Dfa &b,
                            const std::set<Atom> &alphabet,
                            std::size_t max_len);

} // namespace ldlf
