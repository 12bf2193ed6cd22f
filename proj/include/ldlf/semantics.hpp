/* semantics.hpp -- direct evaluation of formulas over finite traces */
#pragma once

#include <memory>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ldlf/formula.hpp"
#include "ldlf/trace.hpp"

namespace ldlf {

// Accessibility relation of a path expression over one trace: the set
// of time-point pairs (k,i) the path can relate; always k <= i.
class AccessRelation {
public:
  explicit AccessRelation(std::size_t length) : n_(length), bits_(length * length) {}

  std::size_t length() const { return n_; }
  bool at(std::size_t k, std::size_t i) const { return bits_[k * n_ + i]; }
  void set(std::size_t k, std::size_t i) { bits_[k * n_ + i] = true; }

  std::set<std::pair<std::size_t, std::size_t>> pairs() const;
  bool operator==(const AccessRelation &o) const {
    return n_ == o.n_ && bits_ == o.bits_;
  }

private:
  std::size_t n_;
  std::vector<bool> bits_;
};

// Evaluation context for one trace.  Caches are per-context, keyed on
// subterm identity, and can be disabled to check their transparency.
class Evaluator {
public:
  explicit Evaluator(const Trace &trace, bool memoize = true)
      : trace_(trace), memoize_(memoize) {}

  // Truth at time point k; sugar is desugared internally.
  bool sat(std::size_t k, const FormulaPtr &f);

  // Accessibility relation; sugar paths are desugared internally.
  AccessRelation rel(const PathPtr &p);

  bool models(const FormulaPtr &f) { return sat(0, f); }

private:
  const Trace &trace_;
  bool memoize_;

  std::unordered_map<const Formula *, FormulaPtr> core_cache_;
  std::unordered_map<const Path *, PathPtr> core_path_cache_;
  std::unordered_map<const Formula *, std::vector<signed char>> sat_cache_;
  std::unordered_map<const Path *, AccessRelation> rel_cache_;

  const FormulaPtr &core_of(const FormulaPtr &f);
  const PathPtr &core_of(const PathPtr &p);
  bool sat_core(std::size_t k, const FormulaPtr &f);
  AccessRelation rel_core(const PathPtr &p);
};

// Convenience wrappers over a one-shot Evaluator.
bool sat(const Trace &t, std::size_t k, const FormulaPtr &f);
AccessRelation rel(const PathPtr &p, const Trace &t);
bool models(const Trace &t, const FormulaPtr &f);

} // namespace ldlf
