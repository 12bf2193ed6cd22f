/* ldlf_main.cpp -- command-line front end */
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "ldlf/afw.hpp"
#include "ldlf/automata.hpp"
#include "ldlf/errors.hpp"
#include "ldlf/mso.hpp"
#include "ldlf/rewrite.hpp"
#include "ldlf/semantics.hpp"
#include "ldlf/syntax.hpp"
#include "ldlf/trace.hpp"

#include <nlohmann/json.hpp>

using namespace ldlf;

namespace {

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitResource = 3;

std::string read_input(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string &out_path, const std::string &data) {
  if (out_path.empty() || out_path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw ParseError("cannot open '" + out_path + "' for writing");
  out << data;
}

Dialect parse_dialect(const std::string &name) {
  if (name == "canonical")
    return Dialect::Canonical;
  if (name == "theory")
    return Dialect::TheoryGrammar;
  throw ParseError("unknown dialect '" + name + "' (canonical|theory)");
}

// Formula files hold one formula per line; blank lines and '#' comments
// are skipped.  A single-formula file is the one-line special case.
std::vector<FormulaPtr> read_formulas(const std::string &path,
                                      Dialect dialect) {
  std::string text = read_input(path);
  std::vector<FormulaPtr> out;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    try {
      out.push_back(parse(line, dialect));
    } catch (const ParseError &e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (out.empty())
    throw ParseError(path + ": no formulas found");
  return out;
}

FormulaPtr read_formula(const std::string &path, Dialect dialect) {
  std::vector<FormulaPtr> all = read_formulas(path, dialect);
  if (all.size() != 1)
    throw ParseError(path + ": expected exactly one formula, found " +
                     std::to_string(all.size()));
  return all[0];
}

Trace read_trace_file(const std::string &path, const std::string &format) {
  std::string text = read_input(path);
  if (format == "json")
    return read_trace(text, TraceFormat::Json);
  if (format == "facts")
    return read_trace(text, TraceFormat::AspFacts);
  // auto: fact files start with prop/..., JSON with '['
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[')
    return read_trace(text, TraceFormat::Json);
  return read_trace(text, TraceFormat::AspFacts);
}

std::set<Atom> parse_alphabet(const std::string &spec) {
  std::set<Atom> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string name = spec.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!name.empty())
      out.insert(Atom::make(name));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* engines                                                             */

struct Engine {
  std::string name;
  virtual ~Engine() = default;
  virtual bool check(const Trace &t) = 0;
};

struct DirectEngine : Engine {
  FormulaPtr f;
  bool check(const Trace &t) override { return models(t, f); }
};
struct AfwEngine : Engine {
  Afw a;
  bool check(const Trace &t) override { return accepts(a, t); }
};
struct NfaEngine : Engine {
  Nfa n;
  bool check(const Trace &t) override { return nfa_accepts(n, t); }
};
struct DfaEngine : Engine {
  Dfa d;
  bool check(const Trace &t) override { return dfa_accepts(d, t); }
};
struct MsoEngine : Engine {
  MsoPtr m;
  bool check(const Trace &t) override {
    Assignment assign;
    assign.v1["t0"] = 0;
    return eval_mso(t, m, assign);
  }
};

std::unique_ptr<Engine> make_engine(const std::string &name,
                                    const FormulaPtr &f,
                                    std::size_t state_cap) {
  if (name == "direct") {
    auto e = std::make_unique<DirectEngine>();
    e->f = f;
    e->name = name;
    return e;
  }
  if (name == "afw") {
    auto e = std::make_unique<AfwEngine>();
    e->a = build_afw(f);
    e->name = name;
    return e;
  }
  if (name == "nfa") {
    auto e = std::make_unique<NfaEngine>();
    e->n = afw_to_nfa(build_afw(f));
    e->name = name;
    return e;
  }
  if (name == "dfa" || name == "dfa-min") {
    auto e = std::make_unique<DfaEngine>();
    e->d = nfa_to_dfa(afw_to_nfa(build_afw(f)), state_cap);
    if (name == "dfa-min")
      e->d = minimize_dfa(e->d);
    e->name = name;
    return e;
  }
  if (name == "mso-st" || name == "mso-enc") {
    auto e = std::make_unique<MsoEngine>();
    e->m = name == "mso-st" ? st_m("t0", f) : mso_enc("t0", f);
    e->name = name;
    return e;
  }
  throw ParseError("unknown engine '" + name + "'");
}

const std::vector<std::string> kAutomataEngines{"direct", "afw", "nfa", "dfa",
                                                "dfa-min"};

/* ------------------------------------------------------------------ */
/* subcommands                                                         */

struct Options {
  std::string input;
  std::string out;
  std::string dialect = "canonical";
  std::string to_dialect;
  bool do_desugar = false;
  std::string target = "afw";
  std::string format = "facts";
  std::string trace_path;
  std::string trace_format = "auto";
  std::string engine = "direct";
  std::vector<std::string> engines;
  bool with_mso = false;
  std::string alphabet = "a,b";
  std::size_t max_len = 4;
  std::size_t state_cap = 1000000;
  std::size_t random_count = 0;
  std::size_t random_max_len = 8;
  std::uint64_t seed = 1;
  std::string external_dfa;
  std::string flavor = "st";
};

nlohmann::json guard_json(const std::map<Atom, bool> &conds) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &[atom, in] : conds)
    arr.push_back({{"atom", atom.name()}, {"polarity", in ? "in" : "out"}});
  return arr;
}

std::string afw_to_json(const Afw &a) {
  nlohmann::json j;
  j["type"] = "afw";
  nlohmann::json symbols = nlohmann::json::array();
  for (const Atom &atom : a.symbols().atoms())
    symbols.push_back(atom.name());
  j["symbols"] = symbols;
  nlohmann::json states = nlohmann::json::array();
  for (std::size_t q = 0; q < a.state_count(); ++q)
    states.push_back({{"id", q},
                      {"formula", print(a.state_formula(static_cast<int>(q)))}});
  j["states"] = states;
  j["initial"] = a.initial();
  nlohmann::json tr = nlohmann::json::array();
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    const auto &row = a.transitions(static_cast<int>(q));
    for (std::size_t c = 0; c < row.size(); ++c)
      tr.push_back({{"state", q},
                    {"conjunct", c},
                    {"conditions", guard_json(row[c].conditions)},
                    {"successors", row[c].successors}});
  }
  j["transitions"] = tr;
  return j.dump(2) + "\n";
}

std::string nfa_to_json(const Nfa &n) {
  nlohmann::json j;
  j["type"] = "nfa";
  nlohmann::json states = nlohmann::json::array();
  for (std::size_t q = 0; q < n.state_count(); ++q) {
    nlohmann::json ob = nlohmann::json::array();
    for (int s : n.obligation(static_cast<int>(q)))
      ob.push_back(s);
    states.push_back({{"id", q}, {"obligation", ob}});
  }
  j["states"] = states;
  j["initials"] = n.initials();
  j["finals"] = n.finals();
  nlohmann::json tr = nlohmann::json::array();
  for (const auto &t : n.transitions())
    tr.push_back({{"from", t.from},
                  {"conditions", guard_json(t.guard.conditions)},
                  {"to", t.to}});
  j["transitions"] = tr;
  return j.dump(2) + "\n";
}

std::string dfa_to_json(const Dfa &d) {
  nlohmann::json j;
  j["type"] = "dfa";
  nlohmann::json states = nlohmann::json::array();
  for (std::size_t q = 0; q < d.state_count(); ++q)
    states.push_back({{"id", q}, {"label", d.label(static_cast<int>(q))}});
  j["states"] = states;
  j["initial"] = d.initial();
  j["finals"] = d.finals();
  nlohmann::json tr = nlohmann::json::array();
  for (std::size_t q = 0; q < d.state_count(); ++q)
    for (const auto &[g, to] : d.outgoing(static_cast<int>(q)))
      tr.push_back({{"from", q},
                    {"conditions", guard_json(g.conditions)},
                    {"to", to}});
  j["transitions"] = tr;
  return j.dump(2) + "\n";
}

int cmd_parse(const Options &opt) {
  Dialect in = parse_dialect(opt.dialect);
  Dialect out_dialect =
      opt.to_dialect.empty() ? in : parse_dialect(opt.to_dialect);
  FormulaPtr f = read_formula(opt.input, in);
  if (opt.do_desugar)
    f = desugar(f);
  write_output(opt.out, print(f, out_dialect) + "\n");
  return kExitAccepted;
}

int cmd_nnf(const Options &opt) {
  FormulaPtr f = read_formula(opt.input, parse_dialect(opt.dialect));
  if (opt.do_desugar)
    f = desugar(f);
  write_output(opt.out, print(nnf(f), parse_dialect(opt.dialect)) + "\n");
  return kExitAccepted;
}

int cmd_closure(const Options &opt) {
  FormulaPtr f = read_formula(opt.input, parse_dialect(opt.dialect));
  std::string out;
  for (const auto &m : closure(desugar(f)))
    out += print(m) + "\n";
  write_output(opt.out, out);
  return kExitAccepted;
}

int cmd_compile(const Options &opt) {
  FormulaPtr f = read_formula(opt.input, parse_dialect(opt.dialect));
  Afw a = build_afw(f);
  std::string data;
  auto render_dfa = [&](const Dfa &d) {
    if (opt.format == "facts")
      return dfa_to_facts(d);
    if (opt.format == "dot")
      return dfa_to_dot(d);
    if (opt.format == "json")
      return dfa_to_json(d);
    throw ParseError("unknown format '" + opt.format + "'");
  };
  if (opt.target == "afw") {
    if (opt.format == "facts")
      data = afw_to_facts(a);
    else if (opt.format == "dot")
      data = afw_to_dot(a);
    else if (opt.format == "json")
      data = afw_to_json(a);
    else
      throw ParseError("unknown format '" + opt.format + "'");
  } else if (opt.target == "nfa") {
    Nfa n = afw_to_nfa(a);
    if (opt.format == "facts")
      data = nfa_to_facts(n);
    else if (opt.format == "dot")
      data = nfa_to_dot(n);
    else if (opt.format == "json")
      data = nfa_to_json(n);
    else
      throw ParseError("unknown format '" + opt.format + "'");
  } else if (opt.target == "dfa") {
    data = render_dfa(nfa_to_dfa(afw_to_nfa(a), opt.state_cap));
  } else if (opt.target == "dfa-min") {
    Dfa d = minimize_dfa(nfa_to_dfa(afw_to_nfa(a), opt.state_cap));
    std::cerr << "dfa-min: " << d.state_count() << " states\n";
    data = render_dfa(d);
  } else {
    throw ParseError("unknown target '" + opt.target + "'");
  }
  write_output(opt.out, data);
  return kExitAccepted;
}

bool color_enabled() {
  const char *no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && *no_color != '\0')
    return false;
  return isatty(fileno(stdout)) != 0;
}

int cmd_check(const Options &opt) {
  FormulaPtr f = read_formula(opt.input, parse_dialect(opt.dialect));
  Trace t = read_trace_file(opt.trace_path, opt.trace_format);
  auto engine = make_engine(opt.engine, f, opt.state_cap);
  auto start = std::chrono::steady_clock::now();
  bool verdict = engine->check(t);
  auto ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cerr << "check: engine=" << opt.engine << " time_ms=" << ms << "\n";
  std::string word = verdict ? "accepted" : "rejected";
  if (color_enabled())
    word = (verdict ? "\033[32m" : "\033[31m") + word + "\033[0m";
  write_output(opt.out, word + " engine=" + opt.engine + "\n");
  return verdict ? kExitAccepted : kExitRejected;
}

int cmd_xcheck(const Options &opt) {
  std::vector<FormulaPtr> formulas =
      read_formulas(opt.input, parse_dialect(opt.dialect));
  std::set<Atom> alphabet = parse_alphabet(opt.alphabet);

  std::vector<std::string> engine_names =
      opt.engines.empty() ? kAutomataEngines : opt.engines;
  if (opt.with_mso) {
    engine_names.push_back("mso-st");
    engine_names.push_back("mso-enc");
  }

  std::optional<Dfa> external;
  if (!opt.external_dfa.empty()) {
    std::string text = read_input(opt.external_dfa);
    external = opt.external_dfa.size() > 4 &&
                       opt.external_dfa.substr(opt.external_dfa.size() - 4) ==
                           ".dot"
                   ? dfa_from_dot(text)
                   : dfa_from_facts(text);
  }

  std::ostringstream report;
  bool all_unanimous = true;
  for (const auto &f : formulas) {
    std::vector<std::unique_ptr<Engine>> engines;
    for (const auto &name : engine_names)
      engines.push_back(make_engine(name, f, opt.state_cap));

    report << "formula: " << print(f) << "\n";
    std::vector<std::uint64_t> satisfied(engines.size() + (external ? 1 : 0),
                                         0);
    std::uint64_t total = 0;
    bool unanimous = true;
    std::string counterexample;

    auto run_one = [&](const Trace &t) {
      if (!unanimous)
        return;
      ++total;
      std::vector<bool> verdicts;
      for (auto &e : engines)
        verdicts.push_back(e->check(t));
      if (external)
        verdicts.push_back(dfa_accepts(*external, t));
      for (std::size_t i = 0; i < verdicts.size(); ++i)
        if (verdicts[i])
          ++satisfied[i];
      for (std::size_t i = 1; i < verdicts.size(); ++i)
        if (verdicts[i] != verdicts[0]) {
          unanimous = false;
          counterexample = write_trace(t, TraceFormat::Json);
          std::ostringstream detail;
          for (std::size_t e = 0; e < verdicts.size(); ++e) {
            std::string name = e < engines.size() ? engines[e]->name
                                                  : std::string("dfa-ext");
            detail << " " << name << "="
                   << (verdicts[e] ? "accepted" : "rejected");
          }
          counterexample += detail.str();
          break;
        }
    };

    TraceEnumerator en(alphabet, opt.max_len);
    while (auto t = en.next())
      run_one(*t);
    if (opt.random_count > 0) {
      std::mt19937_64 rng(opt.seed);
      for (std::size_t i = 0; i < opt.random_count && unanimous; ++i)
        run_one(random_trace(rng, alphabet, opt.random_max_len));
    }

    if (unanimous) {
      report << "  traces: " << total << " satisfied: " << satisfied[0]
             << " unanimous: yes\n";
    } else {
      report << "  disagreement on trace " << counterexample << "\n";
      all_unanimous = false;
    }
  }
  report << (all_unanimous ? "xcheck: unanimous\n" : "xcheck: DISAGREEMENT\n");
  write_output(opt.out, report.str());
  return all_unanimous ? kExitAccepted : kExitRejected;
}

int cmd_emit_mso(const Options &opt) {
  FormulaPtr f = read_formula(opt.input, parse_dialect(opt.dialect));
  MsoPtr body = opt.flavor == "st"    ? st_m("t0", f)
                : opt.flavor == "enc" ? mso_enc("t0", f)
                                      : throw ParseError("unknown flavor '" +
                                                         opt.flavor +
                                                         "' (st|enc)");
  // evaluate at time point 0: bind t0 to the first position
  MsoPtr at_zero = exists_fo(
      "t0", mso_and(mso_not(exists_fo("tfirst", less("tfirst", "t0"))), body));
  write_output(opt.out, emit_mona(at_zero, collect_atoms(f)));
  return kExitAccepted;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"LDLf formulas, automata and trace checking"};
  app.require_subcommand(1);
  Options opt;

  auto add_dialect = [&](CLI::App *cmd) {
    cmd->add_option("--dialect", opt.dialect,
                    "formula syntax: canonical|theory");
  };

  CLI::App *parse_cmd = app.add_subcommand("parse", "parse and reprint");
  parse_cmd->add_option("input", opt.input, "formula file ('-' for stdin)")
      ->required();
  add_dialect(parse_cmd);
  parse_cmd->add_option("--to-dialect", opt.to_dialect, "output dialect");
  parse_cmd->add_flag("--desugar", opt.do_desugar, "expand derived operators");
  parse_cmd->add_option("--out", opt.out, "output path");

  CLI::App *nnf_cmd = app.add_subcommand("nnf", "negation normal form");
  nnf_cmd->add_option("input", opt.input)->required();
  add_dialect(nnf_cmd);
  nnf_cmd->add_flag("--desugar", opt.do_desugar);
  nnf_cmd->add_option("--out", opt.out);

  CLI::App *closure_cmd =
      app.add_subcommand("closure", "list the formula closure");
  closure_cmd->add_option("input", opt.input)->required();
  add_dialect(closure_cmd);
  closure_cmd->add_option("--out", opt.out);

  CLI::App *compile_cmd =
      app.add_subcommand("compile", "compile to an automaton");
  compile_cmd->add_option("input", opt.input)->required();
  add_dialect(compile_cmd);
  compile_cmd->add_option("--target", opt.target, "afw|nfa|dfa|dfa-min");
  compile_cmd->add_option("--format", opt.format, "facts|dot|json");
  compile_cmd->add_option("--state-cap", opt.state_cap);
  compile_cmd->add_option("--out", opt.out);

  CLI::App *check_cmd = app.add_subcommand("check", "check a trace");
  check_cmd->add_option("input", opt.input)->required();
  check_cmd->add_option("--trace", opt.trace_path)->required();
  check_cmd->add_option("--trace-format", opt.trace_format,
                        "json|facts|auto");
  check_cmd->add_option("--engine", opt.engine,
                        "direct|afw|nfa|dfa|dfa-min|mso-st|mso-enc");
  add_dialect(check_cmd);
  check_cmd->add_option("--state-cap", opt.state_cap);
  check_cmd->add_option("--out", opt.out);

  CLI::App *xcheck_cmd =
      app.add_subcommand("xcheck", "cross-check all engines");
  xcheck_cmd->add_option("input", opt.input, "formula file or corpus")
      ->required();
  add_dialect(xcheck_cmd);
  xcheck_cmd->add_option("--alphabet", opt.alphabet, "comma-separated atoms");
  xcheck_cmd->add_option("--max-len", opt.max_len);
  xcheck_cmd->add_option("--engine", opt.engines,
                         "engines to compare (repeatable)");
  xcheck_cmd->add_flag("--with-mso", opt.with_mso,
                       "include both MSO translations");
  xcheck_cmd->add_option("--dfa", opt.external_dfa,
                         "external DFA (facts or .dot) as an extra engine");
  xcheck_cmd->add_option("--random", opt.random_count,
                         "additional random traces");
  xcheck_cmd->add_option("--random-max-len", opt.random_max_len);
  xcheck_cmd->add_option("--seed", opt.seed);
  xcheck_cmd->add_option("--state-cap", opt.state_cap);
  xcheck_cmd->add_option("--out", opt.out);

  CLI::App *mso_cmd = app.add_subcommand("emit-mso", "write a MONA program");
  mso_cmd->add_option("input", opt.input)->required();
  add_dialect(mso_cmd);
  mso_cmd->add_option("--flavor", opt.flavor, "st|enc");
  mso_cmd->add_option("--out", opt.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed())
      return cmd_parse(opt);
    if (nnf_cmd->parsed())
      return cmd_nnf(opt);
    if (closure_cmd->parsed())
      return cmd_closure(opt);
    if (compile_cmd->parsed())
      return cmd_compile(opt);
    if (check_cmd->parsed())
      return cmd_check(opt);
    if (xcheck_cmd->parsed())
      return cmd_xcheck(opt);
    if (mso_cmd->parsed())
      return cmd_emit_mso(opt);
  } catch (const ResourceLimitError &e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
