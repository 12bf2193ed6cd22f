/* trace.hpp -- finite traces and their serializations */
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ldlf/atom.hpp"

namespace ldlf {

class SymbolTable;

// One trace position as seen by the automata: the atoms true there,
// with the reserved `last` marker present exactly on the final letter.
class Letter {
public:
  explicit Letter(std::set<Atom> atoms) : atoms_(std::move(atoms)) {}
  bool contains(Atom a) const { return atoms_.count(a) > 0; }
  const std::set<Atom> &atoms() const { return atoms_; }

private:
  std::set<Atom> atoms_;
};

// Non-empty sequence of atom sets over a fixed alphabet.
class Trace {
public:
  Trace(std::vector<std::set<Atom>> states, std::set<Atom> alphabet);
  // Alphabet inferred as the union of the states' atoms.
  explicit Trace(std::vector<std::set<Atom>> states);

  std::size_t length() const { return states_.size(); }
  const std::set<Atom> &state(std::size_t i) const;
  const std::vector<std::set<Atom>> &states() const { return states_; }
  const std::set<Atom> &alphabet() const { return alphabet_; }

  // state(i) plus `last` iff i is the final index.
  Letter letter_at(std::size_t i) const;

  bool operator==(const Trace &other) const {
    return states_ == other.states_ && alphabet_ == other.alphabet_;
  }

private:
  std::vector<std::set<Atom>> states_;
  std::set<Atom> alphabet_;
};

// Streams every trace of length 1..max_len over the alphabet, shortest
// first, subsets in lexicographic (binary-counting) order per position.
class TraceEnumerator {
public:
  TraceEnumerator(std::set<Atom> alphabet, std::size_t max_len);

  std::optional<Trace> next();

  // Total number of traces the stream yields.
  static std::uint64_t count(std::size_t alphabet_size, std::size_t max_len);

private:
  std::vector<Atom> atoms_;
  std::set<Atom> alphabet_;
  std::size_t max_len_;
  std::size_t len_ = 1;
  std::vector<std::uint32_t> digits_;
  bool done_ = false;

  Trace current() const;
  bool advance();
};

// Seeded random trace of length 1..max_len; each position is an
// independent uniform subset.  Used by the randomized suites.
Trace random_trace(std::mt19937_64 &rng, const std::set<Atom> &alphabet,
                   std::size_t max_len);

enum class TraceFormat { Json, AspFacts };

// JSON form: a list of lists of atom names.  AspFacts form: a prop/2
// symbol table followed by trace/2 facts (ids from the table), with the
// final position additionally carrying the `last` atom's id.
std::string write_trace(const Trace &t, TraceFormat format);
std::string write_trace(const Trace &t, TraceFormat format,
                        const SymbolTable &symbols);
Trace read_trace(const std::string &text, TraceFormat format);

// One trace per line (JSON lines); blank lines and '#' comments skipped.
std::vector<Trace> read_trace_corpus(const std::string &text);

} // namespace ldlf
