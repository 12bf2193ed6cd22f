/* atom.hpp -- interned propositional atoms */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ldlf {

// Interned atom identifier.  Equal names always yield equal ids, so
// atoms compare by a single integer.  The reserved name "last" is
// interned eagerly (id 0) but is rejected by `Atom::make` since it may
// not occur in user formulas; automata introduce it explicitly.
class Atom {
public:
  // Interns `name` after validating it: nonempty, lowercase-leading,
  // alphanumeric/underscore, and not the reserved "last".
  static Atom make(std::string_view name);

  // The reserved end-of-trace marker.
  static Atom last();

  // Interns without the reserved-name check; still validates shape.
  // Used by readers of automaton fact files where `last` is legal.
  static Atom intern_any(std::string_view name);

  static bool valid_name(std::string_view name);

  const std::string &name() const;
  std::uint32_t id() const { return id_; }

  bool is_last() const { return id_ == 0; }

  friend bool operator==(Atom a, Atom b) { return a.id_ == b.id_; }
  friend bool operator!=(Atom a, Atom b) { return a.id_ != b.id_; }
  // Name order, not interning order, so output orderings do not depend
  // on the sequence in which atoms were first seen.
  friend bool operator<(Atom a, Atom b) {
    return a.id_ != b.id_ && a.name() < b.name();
  }

private:
  explicit Atom(std::uint32_t id) : id_(id) {}
  std::uint32_t id_;
};

struct AtomHash {
  std::size_t operator()(Atom a) const { return a.id(); }
};

} // namespace ldlf
