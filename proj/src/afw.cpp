#include "ldlf/afw.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "ldlf/errors.hpp"
#include "ldlf/rewrite.hpp"
#include "ldlf/syntax.hpp"

namespace ldlf {
namespace {

/* ------------------------------------------------------------------ */
/* Symbolic DNF over successor formulas                                */

struct SymConjunct {
  std::map<Atom, bool> conditions;
  std::vector<FormulaPtr> successors; // sorted, unique (formula order)
};

int cmp_conditions(const std::map<Atom, bool> &a,
                   const std::map<Atom, bool> &b) {
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first)
      return ia->first < ib->first ? -1 : 1;
    if (ia->second != ib->second)
      return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.end())
    return 1;
  if (ib != b.end())
    return -1;
  return 0;
}

int cmp_conjunct(const SymConjunct &a, const SymConjunct &b) {
  if (int c = cmp_conditions(a.conditions, b.conditions))
    return c;
  auto ia = a.successors.begin(), ib = b.successors.begin();
  for (; ia != a.successors.end() && ib != b.successors.end(); ++ia, ++ib)
    if (int c = compare(*ia, *ib))
      return c;
  if (ia != a.successors.end())
    return 1;
  if (ib != b.successors.end())
    return -1;
  return 0;
}

// c is subsumed by d when d demands no more than c does.
bool subsumes(const SymConjunct &d, const SymConjunct &c) {
  for (const auto &[atom, pol] : d.conditions) {
    auto it = c.conditions.find(atom);
    if (it == c.conditions.end() || it->second != pol)
      return false;
  }
  for (const auto &s : d.successors) {
    bool found = false;
    for (const auto &t : c.successors)
      if (equal(s, t)) {
        found = true;
        break;
      }
    if (!found)
      return false;
  }
  return true;
}

using Dnf = std::vector<SymConjunct>;

Dnf dnf_true() { return {SymConjunct{}}; }
Dnf dnf_false() { return {}; }

Dnf prune(Dnf v) {
  std::sort(v.begin(), v.end(),
            [](const SymConjunct &a, const SymConjunct &b) {
              return cmp_conjunct(a, b) < 0;
            });
  v.erase(std::unique(v.begin(), v.end(),
                      [](const SymConjunct &a, const SymConjunct &b) {
                        return cmp_conjunct(a, b) == 0;
                      }),
          v.end());
  std::vector<bool> keep(v.size(), true);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size() && keep[i]; ++j)
      if (i != j && subsumes(v[j], v[i]))
        keep[i] = false;
  Dnf out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (keep[i])
      out.push_back(std::move(v[i]));
  return out;
}

Dnf dnf_or(Dnf a, const Dnf &b) {
  a.insert(a.end(), b.begin(), b.end());
  return prune(std::move(a));
}

Dnf dnf_and(const Dnf &a, const Dnf &b) {
  Dnf out;
  for (const auto &x : a)
    for (const auto &y : b) {
      SymConjunct merged = x;
      bool consistent = true;
      for (const auto &[atom, pol] : y.conditions) {
        auto [it, inserted] = merged.conditions.emplace(atom, pol);
        if (!inserted && it->second != pol) {
          consistent = false;
          break;
        }
      }
      if (!consistent)
        continue;
      for (const auto &s : y.successors) {
        bool found = false;
        for (const auto &t : merged.successors)
          if (equal(s, t)) {
            found = true;
            break;
          }
        if (!found)
          merged.successors.push_back(s);
      }
      std::sort(merged.successors.begin(), merged.successors.end(),
                FormulaLess{});
      out.push_back(std::move(merged));
    }
  return prune(std::move(out));
}

/* ------------------------------------------------------------------ */
/* The transition function                                             */

// delta is a within-letter recursion: star unfoldings may revisit a
// formula without consuming a step.  Such cycles are homogeneous (all
// diamond or all box chains); re-entry is cut with the neutral value of
// the corresponding fixpoint (false for diamond, true for box).
// Results that depended on an on-stack node are not memoized.
struct DeltaCtx {
  std::unordered_map<FormulaPtr, Dnf, FormulaHash, FormulaEq> memo;
  std::unordered_map<FormulaPtr, std::size_t, FormulaHash, FormulaEq> on_stack;
  std::size_t depth = 0;

  Dnf run(const FormulaPtr &f) {
    std::set<std::size_t> deps;
    return eval(f, deps);
  }

  Dnf eval(const FormulaPtr &f, std::set<std::size_t> &deps) {
    auto mit = memo.find(f);
    if (mit != memo.end())
      return mit->second;
    auto sit = on_stack.find(f);
    if (sit != on_stack.end()) {
      deps.insert(sit->second);
      if (f->kind() == FKind::Diamond)
        return dnf_false();
      if (f->kind() == FKind::Box)
        return dnf_true();
      throw std::logic_error("delta cycle through a non-modal formula");
    }
    std::size_t my_depth = depth++;
    on_stack.emplace(f, my_depth);
    std::set<std::size_t> inner;
    Dnf result = compute(f, inner);
    on_stack.erase(f);
    --depth;
    inner.erase(my_depth);
    if (inner.empty())
      memo.emplace(f, result);
    else
      deps.insert(inner.begin(), inner.end());
    return result;
  }

  Dnf compute(const FormulaPtr &f, std::set<std::size_t> &deps) {
    switch (f->kind()) {
    case FKind::Truth:
      return dnf_true();
    case FKind::Falsity:
      return dnf_false();
    case FKind::Prop: {
      SymConjunct c;
      c.conditions.emplace(f->atom(), true);
      return {c};
    }
    case FKind::Neg: {
      if (f->lhs()->kind() != FKind::Prop)
        throw std::logic_error("delta expects negation normal form");
      SymConjunct c;
      c.conditions.emplace(f->lhs()->atom(), false);
      return {c};
    }
    case FKind::Diamond:
    case FKind::Box:
      break;
    default:
      throw std::logic_error("delta expects a core formula");
    }

    bool dia = f->kind() == FKind::Diamond;
    const PathPtr &rho = f->path();
    const FormulaPtr &psi = f->lhs();
    auto modal = [&](PathPtr p, FormulaPtr arg) {
      return dia ? diamond(std::move(p), std::move(arg))
                 : box(std::move(p), std::move(arg));
    };
    switch (rho->kind()) {
    case PKind::Step: {
      SymConjunct go;
      go.conditions.emplace(Atom::last(), false);
      go.successors.push_back(psi);
      if (dia)
        return {go};
      SymConjunct done;
      done.conditions.emplace(Atom::last(), true);
      return prune({go, done});
    }
    case PKind::Test: {
      Dnf t = eval(rho->formula(), deps);
      Dnf body = eval(psi, deps);
      if (dia)
        return dnf_and(t, body);
      Dnf nt = eval(nnf(neg(rho->formula())), deps);
      return dnf_or(std::move(nt), body);
    }
    case PKind::Choice: {
      Dnf l = eval(modal(rho->lhs(), psi), deps);
      Dnf r = eval(modal(rho->rhs(), psi), deps);
      return dia ? dnf_or(std::move(l), r) : dnf_and(l, r);
    }
    case PKind::Seq:
      return eval(modal(rho->lhs(), modal(rho->rhs(), psi)), deps);
    case PKind::Star: {
      if (is_test_only(rho->lhs()))
        return eval(psi, deps);
      Dnf base = eval(psi, deps);
      Dnf unfold = eval(modal(rho->lhs(), modal(rho, psi)), deps);
      return dia ? dnf_or(std::move(base), unfold) : dnf_and(base, unfold);
    }
    case PKind::PropPath:
      throw std::logic_error("delta expects a core formula");
    }
    throw std::logic_error("unreachable");
  }
};

std::vector<std::set<int>>
antichain(std::vector<std::set<int>> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<bool> keep(sets.size(), true);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size() && keep[i]; ++j)
      if (i != j &&
          std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(),
                        sets[j].end()) &&
          sets[i] != sets[j])
        keep[i] = false;
  std::vector<std::set<int>> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (keep[i])
      out.push_back(std::move(sets[i]));
  return out;
}

} // namespace

bool Afw::operator==(const Afw &o) const {
  if (!(symbols_ == o.symbols_) || initial_ != o.initial_ ||
      states_.size() != o.states_.size())
    return false;
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (!equal(states_[i], o.states_[i]))
      return false;
  return transitions_ == o.transitions_;
}

Afw build_afw(const FormulaPtr &f) {
  FormulaPtr init = nnf_core(f);
  Afw a;
  a.symbols_ = SymbolTable::for_atoms(collect_atoms(init));

  DeltaCtx ctx;
  std::unordered_map<FormulaPtr, int, FormulaHash, FormulaEq> ids;
  std::deque<FormulaPtr> queue;
  auto id_of = [&](const FormulaPtr &g) {
    auto it = ids.find(g);
    if (it != ids.end())
      return it->second;
    int id = static_cast<int>(a.states_.size());
    ids.emplace(g, id);
    a.states_.push_back(g);
    queue.push_back(g);
    return id;
  };
  a.initial_ = id_of(init);

  while (!queue.empty()) {
    FormulaPtr g = queue.front();
    queue.pop_front();
    Dnf dnf = ctx.run(g);
    std::vector<TransitionConjunct> row;
    row.reserve(dnf.size());
    for (const auto &c : dnf) {
      TransitionConjunct tc;
      tc.conditions = c.conditions;
      for (const auto &succ : c.successors)
        tc.successors.insert(id_of(succ));
      row.push_back(std::move(tc));
    }
    a.transitions_.push_back(std::move(row));
  }
  return a;
}

bool accepts(const Afw &a, const Trace &t) {
  std::vector<std::set<int>> frontier{{a.initial()}};
  for (std::size_t i = 0; i < t.length(); ++i) {
    Letter letter = t.letter_at(i);
    std::vector<std::set<int>> next;
    for (const auto &obligation : frontier) {
      std::vector<std::set<int>> partial{{}};
      bool dead = false;
      for (int q : obligation) {
        std::vector<const TransitionConjunct *> options;
        for (const auto &c : a.transitions(q))
          if (c.matches(letter))
            options.push_back(&c);
        if (options.empty()) {
          dead = true;
          break;
        }
        std::vector<std::set<int>> grown;
        for (const auto &base : partial)
          for (const auto *opt : options) {
            std::set<int> s = base;
            s.insert(opt->successors.begin(), opt->successors.end());
            grown.push_back(std::move(s));
          }
        partial = antichain(std::move(grown));
      }
      if (!dead)
        next.insert(next.end(), partial.begin(), partial.end());
    }
    frontier = antichain(std::move(next));
    if (frontier.empty())
      return false;
  }
  for (const auto &obligation : frontier)
    if (obligation.empty())
      return true;
  return false;
}

std::string afw_to_facts(const Afw &a) {
  std::string out = a.symbols().to_facts();
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    out += "state(" + std::to_string(q) + "," +
           quote_string(print(a.state_formula(static_cast<int>(q)))) + ").\n";
  }
  out += "initial_state(" + std::to_string(a.initial()) + ").\n";
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    const auto &row = a.transitions(static_cast<int>(q));
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string qc = std::to_string(q) + "," + std::to_string(c);
      out += "delta(" + qc + ").\n";
      for (const auto &[atom, in] : row[c].conditions)
        out += "delta(" + qc + (in ? ",in," : ",out,") +
               std::to_string(a.symbols().id_of(atom)) + ").\n";
      for (int succ : row[c].successors)
        out += "delta(" + qc + "," + std::to_string(succ) + ").\n";
    }
  }
  return out;
}

Afw afw_from_facts(const std::string &text) {
  std::vector<Fact> facts = parse_facts(text);
  std::map<int, Atom> props;
  std::map<int, std::string> state_labels;
  int initial = -1;
  struct Cell {
    std::map<Atom, bool> conditions;
    std::set<int> successors;
  };
  std::map<std::pair<int, int>, Cell> cells;

  auto need_int = [](const Fact &f, std::size_t i) {
    if (!f.term.args[i].is_int())
      throw ParseError("argument " + std::to_string(i + 1) + " of " +
                           f.name() + "/" + std::to_string(f.arity()) +
                           " must be an integer",
                       f.line, 0);
    return static_cast<int>(f.term.args[i].int_value);
  };

  for (const Fact &f : facts) {
    if (f.name() == "prop" && f.arity() == 2) {
      int id = need_int(f, 0);
      if (f.term.args[1].kind != FactTerm::Fun || !f.term.args[1].args.empty())
        throw ParseError("prop/2 expects an atom name", f.line, 0);
      props.emplace(id, Atom::intern_any(f.term.args[1].text));
    } else if (f.name() == "state" && f.arity() == 2) {
      int id = need_int(f, 0);
      if (!f.term.args[1].is_str())
        throw ParseError("state/2 expects a quoted formula", f.line, 0);
      state_labels[id] = f.term.args[1].text;
    } else if (f.name() == "initial_state" && f.arity() == 1) {
      initial = need_int(f, 0);
    } else if (f.name() == "delta") {
      int q = need_int(f, 0);
      int c = need_int(f, 1);
      Cell &cell = cells[{q, c}];
      if (f.arity() == 2) {
        // presence marker
      } else if (f.arity() == 3) {
        cell.successors.insert(need_int(f, 2));
      } else if (f.arity() == 4) {
        const FactTerm &pol = f.term.args[2];
        if (!pol.is_name("in") && !pol.is_name("out"))
          throw ParseError("delta/4 polarity must be in or out", f.line, 0);
        int atom_id = need_int(f, 3);
        auto it = props.find(atom_id);
        if (it == props.end())
          throw ParseError("delta/4 references unknown atom id " +
                               std::to_string(atom_id),
                           f.line, 0);
        auto [cit, inserted] =
            cell.conditions.emplace(it->second, pol.is_name("in"));
        if (!inserted && cit->second != pol.is_name("in"))
          throw ParseError("contradictory conditions in one conjunct",
                           f.line, 0);
      } else {
        throw ParseError("delta arity must be 2, 3 or 4", f.line, 0);
      }
    }
  }
  if (initial < 0)
    throw ParseError("missing initial_state/1");
  if (state_labels.empty())
    throw ParseError("missing state/2 facts");

  Afw a;
  std::set<Atom> user_atoms;
  for (const auto &[id, atom] : props)
    if (!atom.is_last())
      user_atoms.insert(atom);
  a.symbols_ = SymbolTable::for_atoms(user_atoms);

  int n = 0;
  for (const auto &[id, label] : state_labels) {
    if (id != n++)
      throw ParseError("state ids must be contiguous from 0");
    a.states_.push_back(parse(label, Dialect::Canonical));
  }
  if (initial >= n)
    throw ParseError("initial_state references unknown state");
  a.initial_ = initial;
  a.transitions_.assign(n, {});
  for (const auto &[key, cell] : cells) {
    auto [q, c] = key;
    if (q < 0 || q >= n)
      throw ParseError("delta references unknown state " + std::to_string(q));
    auto &row = a.transitions_[q];
    if (c != static_cast<int>(row.size()))
      throw ParseError("conjunct indices for state " + std::to_string(q) +
                       " must be contiguous from 0");
    for (int s : cell.successors)
      if (s < 0 || s >= n)
        throw ParseError("delta successor references unknown state " +
                         std::to_string(s));
    row.push_back(TransitionConjunct{cell.conditions, cell.successors});
  }
  return a;
}

namespace {

std::string dot_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

std::string conditions_label(const std::map<Atom, bool> &conds) {
  if (conds.empty())
    return "true";
  std::string out;
  for (const auto &[atom, in] : conds) {
    if (!out.empty())
      out += " & ";
    if (!in)
      out += '!';
    out += atom.name();
  }
  return out;
}

} // namespace

std::string afw_to_dot(const Afw &a) {
  std::string out = "digraph afw {\n  rankdir=LR;\n"
                    "  node [shape=circle];\n";
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    out += "  q" + std::to_string(q) + " [label=\"" +
           dot_escape(print(a.state_formula(static_cast<int>(q)))) + "\"";
    if (static_cast<int>(q) == a.initial())
      out += ", penwidth=2";
    out += "];\n";
  }
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    const auto &row = a.transitions(static_cast<int>(q));
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string label = dot_escape(conditions_label(row[c].conditions));
      if (row[c].successors.size() == 1) {
        out += "  q" + std::to_string(q) + " -> q" +
               std::to_string(*row[c].successors.begin()) + " [label=\"" +
               label + "\"];\n";
        continue;
      }
      std::string mid = "q" + std::to_string(q) + "_c" + std::to_string(c);
      out += "  " + mid + " [shape=none, label=\"∀\"];\n";
      out += "  q" + std::to_string(q) + " -> " + mid + " [label=\"" + label +
             "\"];\n";
      for (int succ : row[c].successors)
        out += "  " + mid + " -> q" + std::to_string(succ) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

} // namespace ldlf
