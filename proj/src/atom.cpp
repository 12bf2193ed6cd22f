#include "ldlf/atom.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

#include "ldlf/errors.hpp"

namespace ldlf {
namespace {

struct InternPool {
  std::mutex mu;
  std::deque<std::string> names; // stable addresses for the index keys
  std::unordered_map<std::string_view, std::uint32_t> index;

  InternPool() { insert_locked("last"); }

  std::uint32_t insert_locked(std::string_view name) {
    auto it = index.find(name);
    if (it != index.end())
      return it->second;
    names.emplace_back(name);
    std::uint32_t id = static_cast<std::uint32_t>(names.size() - 1);
    index.emplace(names.back(), id);
    return id;
  }
};

InternPool &pool() {
  static InternPool *p = new InternPool(); // leaked: atoms live forever
  return *p;
}

std::uint32_t intern(std::string_view name) {
  InternPool &p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  return p.insert_locked(name);
}

} // namespace

bool Atom::valid_name(std::string_view name) {
  if (name.empty())
    return false;
  if (name[0] < 'a' || name[0] > 'z')
    return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok)
      return false;
  }
  return true;
}

Atom Atom::make(std::string_view name) {
  if (!valid_name(name))
    throw ParseError("invalid atom name '" + std::string(name) + "'");
  if (name == "last")
    throw ParseError("'last' is reserved and may not appear in formulas");
  return Atom(intern(name));
}

Atom Atom::intern_any(std::string_view name) {
  if (!valid_name(name))
    throw ParseError("invalid atom name '" + std::string(name) + "'");
  return Atom(intern(name));
}

Atom Atom::last() { return Atom(0); }

const std::string &Atom::name() const {
  InternPool &p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  return p.names[id_];
}

} // namespace ldlf
