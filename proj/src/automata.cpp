#include "ldlf/automata.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <map>

#include "ldlf/errors.hpp"

namespace ldlf {
namespace {

constexpr std::size_t kMintermAtomCap = 20;

bool cube_implies(const std::map<Atom, bool> &g,
                  const std::map<Atom, bool> &assignment) {
  for (const auto &[atom, pol] : g) {
    auto it = assignment.find(atom);
    if (it == assignment.end() || it->second != pol)
      return false;
  }
  return true;
}

std::vector<std::map<Atom, bool>> minterms(const std::set<Atom> &atoms) {
  std::vector<Atom> v(atoms.begin(), atoms.end());
  if (v.size() > kMintermAtomCap)
    throw ResourceLimitError("guard refinement over " +
                             std::to_string(v.size()) +
                             " atoms exceeds the supported bound");
  std::vector<std::map<Atom, bool>> out;
  std::size_t n = 1ull << v.size();
  for (std::size_t bits = 0; bits < n; ++bits) {
    std::map<Atom, bool> m;
    for (std::size_t i = 0; i < v.size(); ++i)
      m.emplace(v[i], (bits >> i) & 1);
    out.push_back(std::move(m));
  }
  return out;
}

// Collapses a set of disjoint cubes: drop cubes covered by another,
// merge pairs that differ in exactly one literal polarity.
std::vector<std::map<Atom, bool>>
merge_cubes(std::vector<std::map<Atom, bool>> cubes) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(cubes.begin(), cubes.end());
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
    for (std::size_t i = 0; i < cubes.size() && !changed; ++i) {
      for (std::size_t j = 0; j < cubes.size() && !changed; ++j) {
        if (i == j)
          continue;
        // coverage: cubes[i] weaker than cubes[j]
        if (std::includes(cubes[j].begin(), cubes[j].end(), cubes[i].begin(),
                          cubes[i].end())) {
          cubes.erase(cubes.begin() + j);
          changed = true;
          break;
        }
      }
    }
    if (changed)
      continue;
    for (std::size_t i = 0; i < cubes.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < cubes.size() && !changed; ++j) {
        const auto &a = cubes[i];
        const auto &b = cubes[j];
        if (a.size() != b.size())
          continue;
        std::optional<Atom> flip;
        bool mergeable = true;
        auto ia = a.begin(), ib = b.begin();
        for (; ia != a.end(); ++ia, ++ib) {
          if (ia->first != ib->first) {
            mergeable = false;
            break;
          }
          if (ia->second != ib->second) {
            if (flip) {
              mergeable = false;
              break;
            }
            flip = ia->first;
          }
        }
        if (!mergeable || !flip)
          continue;
        std::map<Atom, bool> merged = a;
        merged.erase(*flip);
        cubes.erase(cubes.begin() + j);
        cubes[i] = std::move(merged);
        changed = true;
      }
    }
  }
  std::sort(cubes.begin(), cubes.end());
  return cubes;
}

std::string set_label(const std::set<int> &s) {
  std::string out = "{";
  bool first = true;
  for (int q : s) {
    if (!first)
      out += ",";
    first = false;
    out += std::to_string(q);
  }
  out += "}";
  return out;
}

} // namespace

std::string guard_label(const Guard &g) {
  if (g.conditions.empty())
    return "true";
  std::string out;
  for (const auto &[atom, in] : g.conditions) {
    if (!out.empty())
      out += " & ";
    if (!in)
      out += '!';
    out += atom.name();
  }
  return out;
}

void Nfa::index_outgoing() {
  outgoing_.assign(obligations_.size(), {});
  for (const auto &t : transitions_)
    outgoing_[t.from].push_back(&t);
}

/* ------------------------------------------------------------------ */
/* AFW -> NFA                                                          */

Nfa afw_to_nfa(const Afw &a) {
  // States whose transition function is the lone unconditional true
  // conjunct never constrain a run; drop them from obligations.
  std::vector<bool> trivial(a.state_count(), false);
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    const auto &row = a.transitions(static_cast<int>(q));
    trivial[q] = row.size() == 1 && row[0].conditions.empty() &&
                 row[0].successors.empty();
  }
  auto normalize = [&](std::set<int> ob) {
    for (auto it = ob.begin(); it != ob.end();)
      it = trivial[*it] ? ob.erase(it) : std::next(it);
    return ob;
  };

  Nfa n;
  n.symbols_ = a.symbols();
  std::map<std::set<int>, int> ids;
  std::deque<int> queue;
  auto id_of = [&](std::set<int> ob) {
    auto it = ids.find(ob);
    if (it != ids.end())
      return it->second;
    int id = static_cast<int>(n.obligations_.size());
    ids.emplace(ob, id);
    n.obligations_.push_back(std::move(ob));
    queue.push_back(id);
    return id;
  };

  n.initials_.insert(id_of(normalize({a.initial()})));

  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    std::set<int> ob = n.obligations_[id]; // copy: vector may grow

    // One candidate per compatible choice of a conjunct for each state.
    struct Partial {
      std::map<Atom, bool> guard;
      std::set<int> succ;
      bool operator<(const Partial &o) const {
        return std::tie(guard, succ) < std::tie(o.guard, o.succ);
      }
      bool operator==(const Partial &o) const {
        return guard == o.guard && succ == o.succ;
      }
    };
    std::vector<Partial> partial{Partial{}};
    for (int q : ob) {
      std::vector<Partial> grown;
      for (const auto &base : partial) {
        for (const auto &c : a.transitions(q)) {
          Partial p = base;
          bool consistent = true;
          for (const auto &[atom, pol] : c.conditions) {
            auto [it, inserted] = p.guard.emplace(atom, pol);
            if (!inserted && it->second != pol) {
              consistent = false;
              break;
            }
          }
          if (!consistent)
            continue;
          p.succ.insert(c.successors.begin(), c.successors.end());
          grown.push_back(std::move(p));
        }
      }
      partial = std::move(grown);
      if (partial.empty())
        break;
    }
    std::sort(partial.begin(), partial.end());
    partial.erase(std::unique(partial.begin(), partial.end()), partial.end());

    for (const auto &p : partial) {
      int to = id_of(normalize(p.succ));
      n.transitions_.push_back(NfaTransition{id, Guard{p.guard}, to});
      if (n.transitions_.size() > 4000000)
        throw ResourceLimitError("NFA transition count exceeds the bound");
    }
  }

  for (std::size_t q = 0; q < n.obligations_.size(); ++q)
    if (n.obligations_[q].empty())
      n.finals_.insert(static_cast<int>(q));
  n.index_outgoing();
  return n;
}

bool nfa_accepts(const Nfa &n, const Trace &t) {
  std::set<int> current = n.initials();
  for (std::size_t i = 0; i < t.length(); ++i) {
    Letter letter = t.letter_at(i);
    std::set<int> next;
    for (int q : current)
      for (const auto *tr : n.outgoing()[q])
        if (tr->guard.matches(letter))
          next.insert(tr->to);
    current = std::move(next);
    if (current.empty())
      return false;
  }
  for (int q : current)
    if (n.finals().count(q))
      return true;
  return false;
}

/* ------------------------------------------------------------------ */
/* NFA -> DFA                                                          */

Dfa make_dfa(SymbolTable symbols, std::vector<std::string> labels, int initial,
             std::set<int> finals,
             std::vector<std::vector<std::pair<Guard, int>>> tr) {
  Dfa d;
  d.symbols_ = std::move(symbols);
  d.labels_ = std::move(labels);
  d.initial_ = initial;
  d.finals_ = std::move(finals);
  d.transitions_ = std::move(tr);
  return d;
}

Dfa nfa_to_dfa(const Nfa &n, std::size_t state_cap) {
  // Split every NFA transition into its mid-trace reading (no `last`)
  // and, for transitions into the final obligation, its end-of-trace
  // reading; the latter folds into macro-state finality so that DFA
  // guards never mention `last`.
  Atom last = Atom::last();
  struct Arrow {
    std::map<Atom, bool> guard; // `last` removed
    int to;
  };
  std::vector<std::vector<Arrow>> mid(n.state_count());
  std::vector<std::vector<std::map<Atom, bool>>> end(n.state_count());
  for (const auto &t : n.transitions()) {
    auto conds = t.guard.conditions;
    auto it = conds.find(last);
    bool needs_last_in = it != conds.end() && it->second;
    bool needs_last_out = it != conds.end() && !it->second;
    if (it != conds.end())
      conds.erase(it);
    if (!needs_last_in)
      mid[t.from].push_back(Arrow{conds, t.to});
    if (!needs_last_out && n.finals().count(t.to))
      end[t.from].push_back(conds);
  }

  struct Macro {
    std::set<int> states;
    bool acc = false;
    bool operator<(const Macro &o) const {
      return std::tie(states, acc) < std::tie(o.states, o.acc);
    }
  };

  Dfa d;
  d.symbols_ = n.symbols();
  std::map<Macro, int> ids;
  std::deque<Macro> queue;
  auto id_of = [&](Macro m) {
    auto it = ids.find(m);
    if (it != ids.end())
      return it->second;
    int id = static_cast<int>(d.labels_.size());
    std::string label = set_label(m.states);
    if (m.acc)
      label += "+acc";
    d.labels_.push_back(std::move(label));
    d.transitions_.emplace_back();
    if (m.acc)
      d.finals_.insert(id);
    ids.emplace(m, id);
    queue.push_back(std::move(m));
    if (d.labels_.size() > state_cap)
      throw ResourceLimitError(
          "determinization exceeded the state cap of " +
          std::to_string(state_cap));
    return id;
  };

  Macro start;
  start.states = std::set<int>(n.initials().begin(), n.initials().end());
  for (int q : n.initials())
    if (n.finals().count(q))
      start.acc = true; // empty-word finality of the subset construction
  d.initial_ = id_of(start);

  while (!queue.empty()) {
    Macro m = queue.front();
    queue.pop_front();
    int src = ids.at(m);

    std::set<Atom> mentioned;
    for (int q : m.states) {
      for (const auto &arrow : mid[q])
        for (const auto &[atom, pol] : arrow.guard)
          mentioned.insert(atom);
      for (const auto &g : end[q])
        for (const auto &[atom, pol] : g)
          mentioned.insert(atom);
    }
    std::vector<std::map<Atom, bool>> terms = minterms(mentioned);
    std::vector<Atom> atom_vec(mentioned.begin(), mentioned.end());
    auto guard_bits = [&](const std::map<Atom, bool> &g) {
      std::uint32_t mask = 0, val = 0;
      for (const auto &[atom, pol] : g) {
        std::size_t i = 0;
        while (atom_vec[i] != atom)
          ++i;
        mask |= 1u << i;
        if (pol)
          val |= 1u << i;
      }
      return std::pair<std::uint32_t, std::uint32_t>(mask, val);
    };
    struct BitArrow {
      std::uint32_t mask, val;
      int to;
    };
    std::vector<BitArrow> mid_bits;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> end_bits;
    for (int q : m.states) {
      for (const auto &arrow : mid[q]) {
        auto [mask, val] = guard_bits(arrow.guard);
        mid_bits.push_back({mask, val, arrow.to});
      }
      for (const auto &g : end[q])
        end_bits.push_back(guard_bits(g));
    }

    std::vector<std::pair<Guard, int>> row;
    for (std::uint32_t t = 0; t < terms.size(); ++t) {
      Macro succ;
      for (const auto &arrow : mid_bits)
        if ((t & arrow.mask) == arrow.val)
          succ.states.insert(arrow.to);
      for (const auto &[mask, val] : end_bits)
        if ((t & mask) == val) {
          succ.acc = true;
          break;
        }
      row.emplace_back(Guard{terms[t]}, id_of(std::move(succ)));
    }

    // Compact minterm fans: merge cubes per target state.
    std::map<int, std::vector<std::map<Atom, bool>>> by_target;
    for (auto &[g, to] : row)
      by_target[to].push_back(g.conditions);
    std::vector<std::pair<Guard, int>> compact;
    for (auto &[to, cubes] : by_target)
      for (auto &cube : merge_cubes(std::move(cubes)))
        compact.emplace_back(Guard{std::move(cube)}, to);
    std::sort(compact.begin(), compact.end(),
              [](const auto &a, const auto &b) {
                return std::tie(a.first.conditions, a.second) <
                       std::tie(b.first.conditions, b.second);
              });
    d.transitions_[src] = std::move(compact);
  }
  return d;
}

bool dfa_accepts(const Dfa &d, const Trace &t) {
  int state = d.initial();
  for (std::size_t i = 0; i < t.length(); ++i) {
    Letter letter = t.letter_at(i);
    int next = -1;
    for (const auto &[g, to] : d.outgoing(state))
      if (g.matches(letter)) {
        next = to;
        break;
      }
    if (next < 0)
      return false; // incomplete import: missing letters reject
    state = next;
  }
  return d.finals().count(state) > 0;
}

/* ------------------------------------------------------------------ */
/* Minimization                                                        */

Dfa minimize_dfa(const Dfa &d) {
  int n = static_cast<int>(d.state_count());
  if (n == 0)
    return d;

  std::set<Atom> atoms;
  for (int q = 0; q < n; ++q)
    for (const auto &[g, to] : d.outgoing(q))
      for (const auto &[atom, pol] : g.conditions)
        atoms.insert(atom);
  std::vector<std::map<Atom, bool>> terms = minterms(atoms);
  std::vector<Atom> atom_vec(atoms.begin(), atoms.end());
  auto atom_bit = [&](Atom a) {
    for (std::size_t i = 0; i < atom_vec.size(); ++i)
      if (atom_vec[i] == a)
        return i;
    return atom_vec.size();
  };
  // a minterm's index is its bit pattern, so a guard is a mask/value
  // pair and its matching minterms are the subsets of the free bits
  auto guard_bits = [&](const std::map<Atom, bool> &g) {
    std::uint32_t mask = 0, val = 0;
    for (const auto &[atom, pol] : g) {
      std::uint32_t bit = 1u << atom_bit(atom);
      mask |= bit;
      if (pol)
        val |= bit;
    }
    return std::pair<std::uint32_t, std::uint32_t>(mask, val);
  };

  // successor table over the common minterm refinement; -1 marks a
  // missing transition, completed below with an implicit sink.
  std::uint32_t all_bits = static_cast<std::uint32_t>(terms.size() - 1);
  std::vector<std::vector<int>> succ(n, std::vector<int>(terms.size(), -1));
  bool needs_sink = false;
  for (int q = 0; q < n; ++q) {
    for (const auto &[g, to] : d.outgoing(q)) {
      auto [mask, val] = guard_bits(g.conditions);
      std::uint32_t free = all_bits & ~mask;
      std::uint32_t s = free;
      while (true) {
        std::uint32_t t = val | s;
        if (succ[q][t] < 0)
          succ[q][t] = to;
        if (s == 0)
          break;
        s = (s - 1) & free;
      }
    }
    for (std::size_t t = 0; t < terms.size(); ++t)
      if (succ[q][t] < 0)
        needs_sink = true;
  }
  int sink = -1;
  if (needs_sink) {
    sink = n++;
    succ.emplace_back(terms.size(), sink);
    for (auto &row : succ)
      for (auto &s : row)
        if (s < 0)
          s = sink;
  }
  auto is_final = [&](int q) {
    return q != sink && d.finals().count(q) > 0;
  };

  // Moore partition refinement.
  struct SigHash {
    std::size_t operator()(const std::vector<int> &v) const {
      std::size_t h = v.size();
      for (int x : v)
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
             (h >> 2);
      return h;
    }
  };
  std::vector<int> cls(n);
  for (int q = 0; q < n; ++q)
    cls[q] = is_final(q) ? 1 : 0;
  while (true) {
    std::unordered_map<std::vector<int>, int, SigHash> sig_ids;
    sig_ids.reserve(static_cast<std::size_t>(n));
    std::vector<int> next(n);
    std::vector<int> sig;
    for (int q = 0; q < n; ++q) {
      sig.clear();
      sig.reserve(terms.size() + 1);
      sig.push_back(cls[q]);
      for (std::size_t t = 0; t < terms.size(); ++t)
        sig.push_back(cls[succ[q][t]]);
      auto [it, inserted] =
          sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
      next[q] = it->second;
    }
    if (next == cls)
      break;
    cls = std::move(next);
  }
  int num_classes = *std::max_element(cls.begin(), cls.end()) + 1;

  // Quotient successor/finality per class.
  std::vector<std::vector<int>> qsucc(num_classes,
                                      std::vector<int>(terms.size(), -1));
  std::vector<bool> qfinal(num_classes, false);
  std::vector<int> representative(num_classes, -1);
  for (int q = 0; q < n; ++q) {
    int c = cls[q];
    if (representative[c] < 0)
      representative[c] = q;
    qfinal[c] = qfinal[c] || is_final(q);
    for (std::size_t t = 0; t < terms.size(); ++t)
      qsucc[c][t] = cls[succ[q][t]];
  }

  // The initial state's own finality is unobservable when nothing loops
  // back to it (a trace has at least one letter), so an entry class
  // that behaves like another class folds into it.
  int entry = cls[d.initial()];
  bool entry_reentered = false;
  for (int c = 0; c < num_classes && !entry_reentered; ++c)
    for (std::size_t t = 0; t < terms.size(); ++t)
      if (qsucc[c][t] == entry) {
        entry_reentered = true;
        break;
      }
  std::vector<int> remap(num_classes);
  for (int c = 0; c < num_classes; ++c)
    remap[c] = c;
  if (!entry_reentered) {
    // entry's class contains only the initial state in this situation
    for (int c = 0; c < num_classes; ++c) {
      if (c == entry)
        continue;
      if (qsucc[c] == qsucc[entry]) {
        remap[entry] = c;
        break;
      }
    }
  }
  entry = remap[entry];

  // Collect reachable classes in BFS order and rebuild.
  std::vector<int> order;
  std::vector<int> new_id(num_classes, -1);
  std::deque<int> bfs{entry};
  new_id[entry] = 0;
  order.push_back(entry);
  while (!bfs.empty()) {
    int c = bfs.front();
    bfs.pop_front();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      int s = remap[qsucc[c][t]];
      if (new_id[s] < 0) {
        new_id[s] = static_cast<int>(order.size());
        order.push_back(s);
        bfs.push_back(s);
      }
    }
  }

  Dfa out;
  out.symbols_ = d.symbols();
  out.initial_ = 0;
  for (int c : order) {
    int id = static_cast<int>(out.labels_.size());
    int rep = representative[c];
    out.labels_.push_back(rep >= 0 && rep < static_cast<int>(d.state_count())
                              ? d.label(rep)
                              : std::string("sink"));
    if (qfinal[c])
      out.finals_.insert(id);
    std::map<int, std::vector<std::map<Atom, bool>>> by_target;
    for (std::size_t t = 0; t < terms.size(); ++t)
      by_target[new_id[remap[qsucc[c][t]]]].push_back(terms[t]);
    std::vector<std::pair<Guard, int>> row;
    for (auto &[to, cubes] : by_target)
      for (auto &cube : merge_cubes(std::move(cubes)))
        row.emplace_back(Guard{std::move(cube)}, to);
    std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) {
      return std::tie(a.first.conditions, a.second) <
             std::tie(b.first.conditions, b.second);
    });
    out.transitions_.push_back(std::move(row));
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* Facts                                                               */

namespace {

std::string conjunct_facts(const std::string &q, int c,
                           const std::map<Atom, bool> &conds,
                           const std::vector<int> &succs,
                           const SymbolTable &symbols) {
  std::string qc = q + "," + std::to_string(c);
  std::string out = "delta(" + qc + ").\n";
  for (const auto &[atom, in] : conds) {
    int id = symbols.id_of(atom);
    if (id < 0)
      throw UnsupportedError("guard atom '" + atom.name() +
                             "' missing from the symbol table");
    out += "delta(" + qc + (in ? ",in," : ",out,") + std::to_string(id) +
           ").\n";
  }
  for (int s : succs)
    out += "delta(" + qc + "," + std::to_string(s) + ").\n";
  return out;
}

} // namespace

std::string nfa_to_facts(const Nfa &n) {
  std::string out = n.symbols().to_facts();
  for (std::size_t q = 0; q < n.state_count(); ++q)
    out += "state(" + std::to_string(q) + "," +
           quote_string(set_label(n.obligation(static_cast<int>(q)))) + ").\n";
  for (int q : n.initials())
    out += "initial_state(" + std::to_string(q) + ").\n";
  for (int q : n.finals())
    out += "final_state(" + std::to_string(q) + ").\n";
  for (std::size_t q = 0; q < n.state_count(); ++q) {
    int c = 0;
    for (const auto *t : n.outgoing()[q])
      out += conjunct_facts(std::to_string(q), c++, t->guard.conditions,
                            {t->to}, n.symbols());
  }
  return out;
}

std::string dfa_to_facts(const Dfa &d) {
  std::string out = d.symbols().to_facts();
  for (std::size_t q = 0; q < d.state_count(); ++q)
    out += "state(" + std::to_string(q) + "," +
           quote_string(d.label(static_cast<int>(q))) + ").\n";
  out += "initial_state(" + std::to_string(d.initial()) + ").\n";
  for (int q : d.finals())
    out += "final_state(" + std::to_string(q) + ").\n";
  for (std::size_t q = 0; q < d.state_count(); ++q) {
    int c = 0;
    for (const auto &[g, to] : d.outgoing(static_cast<int>(q)))
      out += conjunct_facts(std::to_string(q), c++, g.conditions, {to},
                            d.symbols());
  }
  return out;
}

Dfa dfa_from_facts(const std::string &text) {
  std::vector<Fact> facts = parse_facts(text);
  std::map<int, Atom> props;
  std::map<int, std::string> labels;
  std::set<int> finals;
  int initial = -1;
  struct Cell {
    std::map<Atom, bool> conds;
    std::vector<int> succs;
  };
  std::map<std::pair<int, int>, Cell> cells;

  auto need_int = [](const Fact &f, std::size_t i) {
    if (!f.term.args[i].is_int())
      throw ParseError("argument " + std::to_string(i + 1) + " of " +
                           f.name() + " must be an integer",
                       f.line, 0);
    return static_cast<int>(f.term.args[i].int_value);
  };

  for (const Fact &f : facts) {
    if (f.name() == "prop" && f.arity() == 2) {
      props.emplace(need_int(f, 0), Atom::intern_any(f.term.args[1].text));
    } else if (f.name() == "state" && f.arity() == 2) {
      int id = need_int(f, 0);
      labels[id] = f.term.args[1].is_str() ? f.term.args[1].text
                                           : f.term.args[1].text;
    } else if (f.name() == "initial_state" && f.arity() == 1) {
      initial = need_int(f, 0);
    } else if (f.name() == "final_state" && f.arity() == 1) {
      finals.insert(need_int(f, 0));
    } else if (f.name() == "delta") {
      int q = need_int(f, 0);
      int c = need_int(f, 1);
      Cell &cell = cells[{q, c}];
      if (f.arity() == 3) {
        cell.succs.push_back(need_int(f, 2));
      } else if (f.arity() == 4) {
        const FactTerm &pol = f.term.args[2];
        if (!pol.is_name("in") && !pol.is_name("out"))
          throw ParseError("delta/4 polarity must be in or out", f.line, 0);
        auto it = props.find(need_int(f, 3));
        if (it == props.end())
          throw ParseError("delta/4 references unknown atom id", f.line, 0);
        cell.conds[it->second] = pol.is_name("in");
      } else if (f.arity() != 2) {
        throw ParseError("delta arity must be 2, 3 or 4", f.line, 0);
      }
    }
  }
  if (initial < 0)
    throw ParseError("missing initial_state/1");
  if (labels.empty())
    throw ParseError("missing state/2 facts");

  Dfa d;
  std::set<Atom> user_atoms;
  for (const auto &[id, atom] : props)
    if (!atom.is_last())
      user_atoms.insert(atom);
  d.symbols_ = SymbolTable::for_atoms(user_atoms);
  int n = 0;
  for (const auto &[id, label] : labels) {
    if (id != n++)
      throw ParseError("state ids must be contiguous from 0");
    d.labels_.push_back(label);
  }
  if (initial >= n)
    throw ParseError("initial_state references unknown state");
  d.initial_ = initial;
  for (int q : finals)
    if (q < 0 || q >= n)
      throw ParseError("final_state references unknown state");
  d.finals_ = finals;
  d.transitions_.assign(n, {});
  for (const auto &[key, cell] : cells) {
    auto [q, c] = key;
    if (q < 0 || q >= n)
      throw ParseError("delta references unknown state");
    if (c != static_cast<int>(d.transitions_[q].size()))
      throw ParseError("conjunct indices for state " + std::to_string(q) +
                       " must be contiguous from 0");
    if (cell.succs.size() != 1)
      throw ParseError("a DFA transition needs exactly one successor, state " +
                       std::to_string(q));
    d.transitions_[q].emplace_back(Guard{cell.conds}, cell.succs[0]);
  }
  return d;
}

/* ------------------------------------------------------------------ */
/* DOT                                                                 */

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

std::string dot_header(const char *name) {
  return std::string("digraph ") + name +
         " {\n  rankdir=LR;\n  init [shape=point, label=\"\"];\n";
}

} // namespace

std::string nfa_to_dot(const Nfa &n) {
  std::string out = "digraph nfa {\n  rankdir=LR;\n";
  for (int q : n.initials()) {
    out += "  init" + std::to_string(q) + " [shape=point, label=\"\"];\n";
    out += "  init" + std::to_string(q) + " -> q" + std::to_string(q) + ";\n";
  }
  for (std::size_t q = 0; q < n.state_count(); ++q) {
    bool fin = n.finals().count(static_cast<int>(q)) > 0;
    out += "  q" + std::to_string(q) + " [shape=" +
           (fin ? "doublecircle" : "circle") + ", label=\"" +
           dot_escape(set_label(n.obligation(static_cast<int>(q)))) + "\"];\n";
  }
  for (const auto &t : n.transitions())
    out += "  q" + std::to_string(t.from) + " -> q" + std::to_string(t.to) +
           " [label=\"" + dot_escape(guard_label(t.guard)) + "\"];\n";
  out += "}\n";
  return out;
}

std::string dfa_to_dot(const Dfa &d) {
  std::string out = dot_header("dfa");
  out += "  init -> q" + std::to_string(d.initial()) + ";\n";
  for (std::size_t q = 0; q < d.state_count(); ++q) {
    bool fin = d.finals().count(static_cast<int>(q)) > 0;
    out += "  q" + std::to_string(q) + " [shape=" +
           (fin ? "doublecircle" : "circle") + ", label=\"" +
           dot_escape(d.label(static_cast<int>(q))) + "\"];\n";
  }
  for (std::size_t q = 0; q < d.state_count(); ++q)
    for (const auto &[g, to] : d.outgoing(static_cast<int>(q)))
      out += "  q" + std::to_string(q) + " -> q" + std::to_string(to) +
             " [label=\"" + dot_escape(guard_label(g)) + "\"];\n";
  out += "}\n";
  return out;
}

namespace {

struct DotTokenizer {
  const std::string &text;
  std::size_t pos = 0;
  int line = 1;

  explicit DotTokenizer(const std::string &t) : text(t) {}

  void skip() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
        while (pos < text.size() && text[pos] != '\n')
          ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '*') {
        pos += 2;
        while (pos + 1 < text.size() &&
               !(text[pos] == '*' && text[pos + 1] == '/')) {
          if (text[pos] == '\n')
            ++line;
          ++pos;
        }
        pos = std::min(pos + 2, text.size());
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip();
    return pos >= text.size();
  }

  [[noreturn]] void fail(const std::string &msg) {
    throw ParseError("DOT: " + msg, line, 0);
  }

  // identifier, number, or quoted string
  std::string word() {
    skip();
    if (pos >= text.size())
      fail("unexpected end of input");
    char c = text[pos];
    if (c == '"') {
      ++pos;
      std::string out;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size())
          ++pos;
        if (text[pos] == '\n')
          ++line;
        out += text[pos++];
      }
      if (pos >= text.size())
        fail("unterminated string");
      ++pos;
      return out;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_' || text[pos] == '.'))
        ++pos;
      return text.substr(start, pos - start);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool at_word_start() {
    char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '"';
  }

  bool accept(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool accept_arrow() {
    skip();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  }
};

Guard parse_guard_label(const std::string &label, int line) {
  Guard g;
  std::string trimmed;
  // normalize the UTF-8 conjunction/negation glyphs to their ASCII forms
  for (std::size_t i = 0; i < label.size();) {
    if (label.compare(i, 3, "∧") == 0) {
      trimmed += '&';
      i += 3;
    } else if (label.compare(i, 2, "¬") == 0) {
      trimmed += '!';
      i += 2;
    } else {
      trimmed += label[i++];
    }
  }
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < trimmed.size() &&
           std::isspace(static_cast<unsigned char>(trimmed[i])))
      ++i;
  };
  skip_ws();
  if (i >= trimmed.size())
    return g; // empty label = universal guard
  while (true) {
    skip_ws();
    bool negated = false;
    while (i < trimmed.size() && (trimmed[i] == '~' || trimmed[i] == '!')) {
      negated = !negated;
      ++i;
      skip_ws();
    }
    std::size_t start = i;
    while (i < trimmed.size() &&
           (std::isalnum(static_cast<unsigned char>(trimmed[i])) ||
            trimmed[i] == '_'))
      ++i;
    if (start == i)
      throw ParseError("DOT: malformed edge label '" + label + "'", line, 0);
    std::string name = trimmed.substr(start, i - start);
    if (name == "true" && !negated) {
      // universal literal contributes nothing
    } else {
      auto [it, inserted] = g.conditions.emplace(Atom::intern_any(name), !negated);
      if (!inserted && it->second != !negated)
        throw ParseError("DOT: contradictory label '" + label + "'", line, 0);
    }
    skip_ws();
    if (i < trimmed.size() && trimmed[i] == '&') {
      ++i;
      continue;
    }
    if (i >= trimmed.size())
      break;
    throw ParseError("DOT: malformed edge label '" + label + "'", line, 0);
  }
  return g;
}

} // namespace

Dfa dfa_from_dot(const std::string &text) {
  DotTokenizer tz(text);
  std::string kw = tz.word();
  if (kw != "digraph")
    tz.fail("expected 'digraph'");
  if (tz.peek() != '{')
    tz.word(); // optional graph name
  if (!tz.accept('{'))
    tz.fail("expected '{'");

  std::vector<std::string> order;            // declaration order
  std::map<std::string, bool> finals_by_name;
  std::map<std::string, bool> marker;        // init-style helper nodes
  std::vector<std::tuple<std::string, std::string, Guard>> edges;
  std::string default_shape = "circle";

  auto note_node = [&](const std::string &name) {
    if (!finals_by_name.count(name)) {
      finals_by_name[name] = false;
      marker[name] = false;
      order.push_back(name);
    }
  };

  while (!tz.eof() && tz.peek() != '}') {
    std::string name = tz.word();
    if (name == "node" || name == "edge" || name == "graph" ||
        name == "rankdir" || name == "center" || name == "size") {
      // attribute defaults: `node [shape = ...]`, `rankdir = LR;` etc.
      std::string shape;
      if (tz.accept('=')) {
        tz.word();
      } else if (tz.accept('[')) {
        while (tz.peek() != ']') {
          std::string key = tz.word();
          if (!tz.accept('='))
            tz.fail("expected '=' in attribute list");
          std::string value = tz.word();
          if (name == "node" && key == "shape")
            shape = value;
          tz.accept(',');
        }
        tz.accept(']');
      }
      if (name == "node" && !shape.empty())
        default_shape = shape;
      tz.accept(';');
      // MONA writes `node [shape = doublecircle]; 1 4;` -- the bare id
      // list after the defaults inherits the shape
      while (tz.peek() != '}' && tz.peek() != '\0') {
        std::size_t save = tz.pos;
        int save_line = tz.line;
        std::string id;
        try {
          id = tz.word();
        } catch (const ParseError &) {
          break;
        }
        if (tz.peek() == ';' || tz.peek() == '}' || tz.at_word_start()) {
          note_node(id);
          if (default_shape == "doublecircle")
            finals_by_name[id] = true;
          if (default_shape == "point" || default_shape == "plaintext")
            marker[id] = true;
          tz.accept(';');
          continue;
        }
        tz.pos = save;
        tz.line = save_line;
        break;
      }
      continue;
    }

    note_node(name);
    if (tz.accept_arrow()) {
      std::string to = tz.word();
      note_node(to);
      Guard g;
      bool labeled = false;
      if (tz.accept('[')) {
        while (tz.peek() != ']') {
          std::string key = tz.word();
          if (!tz.accept('='))
            tz.fail("expected '=' in edge attributes");
          std::string value = tz.word();
          if (key == "label") {
            g = parse_guard_label(value, tz.line);
            labeled = true;
          }
          tz.accept(',');
        }
        tz.accept(']');
      }
      (void)labeled;
      edges.emplace_back(name, to, std::move(g));
      tz.accept(';');
      continue;
    }
    if (tz.accept('[')) {
      while (tz.peek() != ']') {
        std::string key = tz.word();
        if (!tz.accept('='))
          tz.fail("expected '=' in node attributes");
        std::string value = tz.word();
        if (key == "shape") {
          if (value == "doublecircle")
            finals_by_name[name] = true;
          if (value == "point" || value == "plaintext")
            marker[name] = true;
        }
        tz.accept(',');
      }
      tz.accept(']');
    }
    tz.accept(';');
  }

  if (order.empty())
    throw ParseError("DOT: no nodes found");
  if (marker.count("init"))
    marker["init"] = true;
  if (marker.count("__start"))
    marker["__start"] = true;

  // initial state: target of an edge leaving a marker node, otherwise
  // the first declared non-marker node
  std::string initial_name;
  for (const auto &[from, to, g] : edges)
    if (marker[from] && !marker[to]) {
      initial_name = to;
      break;
    }
  if (initial_name.empty()) {
    for (const auto &name : order)
      if (!marker[name]) {
        initial_name = name;
        break;
      }
  }
  if (initial_name.empty())
    throw ParseError("DOT: could not determine the initial state");

  std::map<std::string, int> ids;
  Dfa d;
  for (const auto &name : order) {
    if (marker[name])
      continue;
    int id = static_cast<int>(d.labels_.size());
    ids[name] = id;
    d.labels_.push_back(name);
    d.transitions_.emplace_back();
    if (finals_by_name[name])
      d.finals_.insert(id);
  }
  d.initial_ = ids.at(initial_name);

  std::set<Atom> atoms;
  for (const auto &[from, to, g] : edges) {
    if (marker[from] || marker[to])
      continue;
    for (const auto &[atom, pol] : g.conditions)
      atoms.insert(atom);
    d.transitions_[ids.at(from)].emplace_back(g, ids.at(to));
  }
  d.symbols_ = SymbolTable::for_atoms(atoms);

  // determinism check: no two guards from one state may overlap
  for (std::size_t q = 0; q < d.transitions_.size(); ++q) {
    const auto &row = d.transitions_[q];
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        bool conflict = false;
        for (const auto &[atom, pol] : row[i].first.conditions) {
          auto it = row[j].first.conditions.find(atom);
          if (it != row[j].first.conditions.end() && it->second != pol) {
            conflict = true;
            break;
          }
        }
        if (!conflict)
          throw ParseError("DOT: overlapping guards leaving state '" +
                           d.labels_[q] + "'");
      }
  }

  // complete with a sink: letters matching no guard must reject
  std::vector<std::map<Atom, bool>> terms = minterms(atoms);
  int sink = -1;
  auto ensure_sink = [&]() {
    if (sink < 0) {
      sink = static_cast<int>(d.labels_.size());
      d.labels_.push_back("sink");
      d.transitions_.emplace_back();
      d.transitions_[sink].emplace_back(Guard{}, sink);
    }
    return sink;
  };
  int base_states = static_cast<int>(d.transitions_.size());
  for (int q = 0; q < base_states; ++q) {
    std::vector<std::map<Atom, bool>> missing;
    for (const auto &term : terms) {
      bool covered = false;
      for (const auto &[g, to] : d.transitions_[q])
        if (cube_implies(g.conditions, term)) {
          covered = true;
          break;
        }
      if (!covered)
        missing.push_back(term);
    }
    if (missing.empty())
      continue;
    int target = ensure_sink();
    if (missing.size() == terms.size()) {
      // nothing labeled: whole letter space to the sink
      d.transitions_[q].clear();
      d.transitions_[q].emplace_back(Guard{}, target);
    } else {
      for (auto &cube : merge_cubes(std::move(missing)))
        d.transitions_[q].emplace_back(Guard{std::move(cube)}, target);
    }
  }
  return d;
}

bool bounded_language_equal(const Dfa &a, const Dfa &b,
                            const std::set<Atom> &alphabet,
                            std::size_t max_len) {
  TraceEnumerator en(alphabet, max_len);
  while (auto t = en.next())
    if (dfa_accepts(a, *t) != dfa_accepts(b, *t))
      return false;
  return true;
}

} // namespace ldlf
