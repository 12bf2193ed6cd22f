#include "ldlf/trace.hpp"

#include <nlohmann/json.hpp>

#include "ldlf/errors.hpp"
#include "ldlf/facts.hpp"

namespace ldlf {

using nlohmann::json;

Trace::Trace(std::vector<std::set<Atom>> states, std::set<Atom> alphabet)
    : states_(std::move(states)), alphabet_(std::move(alphabet)) {
  if (states_.empty())
    throw ParseError("a trace must have at least one state");
  if (alphabet_.count(Atom::last()))
    throw ParseError("'last' may not be part of a trace alphabet");
  for (const auto &s : states_)
    for (Atom a : s)
      if (!alphabet_.count(a))
        throw ParseError("trace state mentions atom '" + a.name() +
                         "' outside the alphabet");
}

namespace {
std::set<Atom> union_atoms(const std::vector<std::set<Atom>> &states) {
  std::set<Atom> alpha;
  for (const auto &s : states)
    alpha.insert(s.begin(), s.end());
  return alpha;
}
} // namespace

Trace::Trace(std::vector<std::set<Atom>> states)
    : Trace(states, union_atoms(states)) {}

const std::set<Atom> &Trace::state(std::size_t i) const {
  if (i >= states_.size())
    throw std::out_of_range("trace index " + std::to_string(i) +
                            " out of range (length " +
                            std::to_string(states_.size()) + ")");
  return states_[i];
}

Letter Trace::letter_at(std::size_t i) const {
  std::set<Atom> atoms = state(i);
  if (i + 1 == states_.size())
    atoms.insert(Atom::last());
  return Letter(std::move(atoms));
}

TraceEnumerator::TraceEnumerator(std::set<Atom> alphabet, std::size_t max_len)
    : atoms_(alphabet.begin(), alphabet.end()), alphabet_(std::move(alphabet)),
      max_len_(max_len) {
  if (atoms_.size() > 16)
    throw ResourceLimitError("trace enumeration limited to 16 atoms, got " +
                             std::to_string(atoms_.size()));
  if (max_len_ == 0)
    done_ = true;
  digits_.assign(1, 0);
}

std::uint64_t TraceEnumerator::count(std::size_t alphabet_size,
                                     std::size_t max_len) {
  std::uint64_t per_state = 1ull << alphabet_size;
  std::uint64_t total = 0, pow = 1;
  for (std::size_t n = 1; n <= max_len; ++n) {
    pow *= per_state;
    total += pow;
  }
  return total;
}

Trace TraceEnumerator::current() const {
  std::vector<std::set<Atom>> states;
  states.reserve(digits_.size());
  for (std::uint32_t d : digits_) {
    std::set<Atom> s;
    for (std::size_t b = 0; b < atoms_.size(); ++b)
      if (d & (1u << b))
        s.insert(atoms_[b]);
    states.push_back(std::move(s));
  }
  return Trace(std::move(states), alphabet_);
}

bool TraceEnumerator::advance() {
  std::uint32_t limit = 1u << atoms_.size();
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < limit)
      return true;
    digits_[i] = 0;
  }
  if (digits_.size() >= max_len_)
    return false;
  digits_.assign(digits_.size() + 1, 0);
  return true;
}

std::optional<Trace> TraceEnumerator::next() {
  if (done_)
    return std::nullopt;
  Trace t = current();
  done_ = !advance();
  return t;
}

Trace random_trace(std::mt19937_64 &rng, const std::set<Atom> &alphabet,
                   std::size_t max_len) {
  std::vector<Atom> atoms(alphabet.begin(), alphabet.end());
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::size_t len = len_dist(rng);
  std::vector<std::set<Atom>> states;
  for (std::size_t i = 0; i < len; ++i) {
    std::set<Atom> s;
    for (Atom a : atoms)
      if (rng() & 1)
        s.insert(a);
    states.push_back(std::move(s));
  }
  return Trace(std::move(states), alphabet);
}

std::string write_trace(const Trace &t, TraceFormat format) {
  if (format == TraceFormat::AspFacts)
    return write_trace(t, format, SymbolTable::for_atoms(t.alphabet()));
  json arr = json::array();
  for (const auto &s : t.states()) {
    json st = json::array();
    for (Atom a : s)
      st.push_back(a.name());
    arr.push_back(std::move(st));
  }
  return arr.dump();
}

std::string write_trace(const Trace &t, TraceFormat format,
                        const SymbolTable &symbols) {
  if (format == TraceFormat::Json)
    return write_trace(t, TraceFormat::Json);
  std::string out = symbols.to_facts();
  for (std::size_t i = 0; i < t.length(); ++i) {
    for (Atom a : t.state(i)) {
      int id = symbols.id_of(a);
      if (id < 0)
        throw UnsupportedError("atom '" + a.name() +
                               "' missing from the symbol table");
      out += "trace(" + std::to_string(id) + "," + std::to_string(i) + ").\n";
    }
  }
  out += "trace(" + std::to_string(symbols.last_id()) + "," +
         std::to_string(t.length() - 1) + ").\n";
  return out;
}

namespace {

Trace trace_from_json(const json &arr) {
  if (!arr.is_array() || arr.empty())
    throw ParseError("a JSON trace must be a non-empty array of arrays");
  std::vector<std::set<Atom>> states;
  for (const auto &st : arr) {
    if (!st.is_array())
      throw ParseError("trace state " + std::to_string(states.size()) +
                       " is not an array");
    std::set<Atom> s;
    for (const auto &name : st) {
      if (!name.is_string())
        throw ParseError("atom in state " + std::to_string(states.size()) +
                         " is not a string");
      s.insert(Atom::make(name.get<std::string>()));
    }
    states.push_back(std::move(s));
  }
  return Trace(std::move(states));
}

Trace trace_from_facts(const std::string &text) {
  std::vector<Fact> facts = parse_facts(text);
  std::map<int, Atom> table;
  for (const Fact &f : facts) {
    if (f.name() == "prop" && f.arity() == 2) {
      if (!f.term.args[0].is_int() || f.term.args[1].kind != FactTerm::Fun)
        throw ParseError("malformed prop/2 fact", f.line, 0);
      table.emplace(static_cast<int>(f.term.args[0].int_value),
                    Atom::intern_any(f.term.args[1].text));
    }
  }
  if (table.empty())
    throw ParseError("trace fact file carries no prop/2 symbol table");
  std::map<std::size_t, std::set<Atom>> states;
  std::size_t max_step = 0;
  for (const Fact &f : facts) {
    if (f.name() != "trace")
      continue;
    if (f.arity() != 2 || !f.term.args[0].is_int() || !f.term.args[1].is_int())
      throw ParseError("malformed trace/2 fact", f.line, 0);
    int id = static_cast<int>(f.term.args[0].int_value);
    long long stepv = f.term.args[1].int_value;
    if (stepv < 0)
      throw ParseError("negative time step in trace/2", f.line, 0);
    auto it = table.find(id);
    if (it == table.end())
      throw ParseError("trace/2 references unknown atom id " +
                           std::to_string(id),
                       f.line, 0);
    std::size_t pos = static_cast<std::size_t>(stepv);
    max_step = std::max(max_step, pos);
    if (!it->second.is_last())
      states[pos].insert(it->second);
  }
  std::set<Atom> alphabet;
  for (const auto &[id, atom] : table)
    if (!atom.is_last())
      alphabet.insert(atom);
  std::vector<std::set<Atom>> seq(max_step + 1);
  for (auto &[pos, s] : states)
    seq[pos] = std::move(s);
  return Trace(std::move(seq), std::move(alphabet));
}

} // namespace

Trace read_trace(const std::string &text, TraceFormat format) {
  if (format == TraceFormat::AspFacts)
    return trace_from_facts(text);
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("invalid JSON trace: ") + e.what());
  }
  return trace_from_json(parsed);
}

std::vector<Trace> read_trace_corpus(const std::string &text) {
  std::vector<Trace> out;
  std::size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string line = text.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '#') {
      try {
        out.push_back(read_trace(line, TraceFormat::Json));
      } catch (const ParseError &e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (end == std::string::npos)
      break;
    start = end + 1;
  }
  return out;
}

} // namespace ldlf
