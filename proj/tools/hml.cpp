// SPDX-License-Identifier: MIT
//
// hml: command-line front end for the modal-logic toolkit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hml/altgraph.hpp"
#include "hml/charform.hpp"
#include "hml/formula.hpp"
#include "hml/lts.hpp"
#include "hml/modelcheck.hpp"
#include "hml/oracle.hpp"
#include "hml/preorders.hpp"
#include "hml/primality.hpp"
#include "hml/satisfiability.hpp"

using json = nlohmann::json;
using namespace hml;

namespace {

enum Exit { kHolds = 0, kFails = 1, kUsage = 2, kBudget = 3 };

constexpr std::uint64_t kExplicitCap = 1'000'000;

struct Options {
  std::string fragment;
  std::string alphabet;
  std::string kind;
  unsigned depth = 3;
  unsigned width = 2;
  std::uint64_t seed = 1;
  bool json = false;
  std::string dot;
  std::string form = "decl";
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An argument naming an existing file is read; anything else is inline text.
std::string load(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_line_starting(const std::string& s, std::initializer_list<const char*> heads) {
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string w;
    if (!(ls >> w)) continue;
    for (const char* h : heads)
      if (w == h) return true;
  }
  return false;
}

bool is_lts_text(const std::string& s) { return has_line_starting(s, {"states"}); }
bool is_equation_text(const std::string& s) { return has_line_starting(s, {"root", "alphabet"}); }

std::optional<Alphabet> explicit_alphabet(const Options& o) {
  if (o.alphabet.empty()) return std::nullopt;
  return Alphabet::parse(o.alphabet);
}

Proc read_process(const std::string& arg, const Options& o) {
  std::string text = load(arg);
  if (is_lts_text(text)) return lts_to_term(parse_lts(text));
  return parse_process(text, explicit_alphabet(o));
}

struct FormulaInput {
  Formula f;
  std::optional<EquationSystem> es;
};

FormulaInput read_formula(const std::string& arg, const Options& o) {
  std::string text = load(arg);
  if (is_equation_text(text)) {
    EquationSystem es = parse_equations(text);
    if (!es.alphabet) es.alphabet = explicit_alphabet(o);
    return {es_expand(es), es};
  }
  return {parse_formula(text, explicit_alphabet(o)), std::nullopt};
}

Alphabet resolve(const Options& o, std::initializer_list<Alphabet> seen) {
  if (auto a = explicit_alphabet(o)) return *a;
  Alphabet acc;
  for (const auto& s : seen) acc = acc.merged(s);
  return acc;
}

Fragment need_fragment(const Options& o) {
  if (o.fragment.empty()) throw UsageError("--fragment is required");
  auto x = parse_fragment(o.fragment);
  if (!x) throw UsageError("unknown fragment '" + o.fragment + "'");
  return *x;
}

PreorderKind need_kind(const Options& o) {
  if (o.kind.empty()) throw UsageError("--kind is required");
  try {
    return PreorderKind::parse(o.kind);
  } catch (const std::exception&) {
    throw UsageError("unknown preorder '" + o.kind + "'");
  }
}

const char* confidence_name(Confidence c) { return c == Confidence::Exact ? "exact" : "bounded-evidence"; }

struct Report {
  std::string query;
  json inputs = json::object();
  json verdict;
  std::optional<std::string> witness;
  std::optional<Confidence> confidence;
  std::string note;
  std::vector<std::string> lines;  // plain-text body
};

int emit(const Options& o, Report r, double ms) {
  if (o.json) {
    json j{{"query", r.query}, {"inputs", r.inputs}, {"verdict", r.verdict}, {"time_ms", ms}};
    if (r.witness) j["witness"] = *r.witness;
    if (r.confidence) j["confidence"] = confidence_name(*r.confidence);
    if (!r.note.empty()) j["note"] = r.note;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) std::cout << l << "\n";
    if (r.lines.empty()) {
      if (r.verdict.is_boolean()) std::cout << (r.verdict.get<bool>() ? "true" : "false") << "\n";
      else std::cout << r.verdict.dump() << "\n";
    }
    if (r.witness) std::cout << "witness: " << *r.witness << "\n";
    if (r.confidence && *r.confidence != Confidence::Exact) std::cout << "confidence: " << confidence_name(*r.confidence) << "\n";
  }
  if (r.verdict.is_boolean()) return r.verdict.get<bool>() ? kHolds : kFails;
  return kHolds;
}

void write_dot(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// ------------------------------------------------------------ commands

Report cmd_mc(const Options& o, const std::vector<std::string>& args) {
  if (args.size() != 2) throw UsageError("mc needs a process and a formula");
  Proc p = read_process(args[0], o);
  auto fi = read_formula(args[1], o);
  bool holds = fi.es ? satisfies_decl(p, *fi.es) : satisfies(p, fi.f);
  Report r{"mc"};
  r.inputs = {{"process", to_string(p)}, {"formula", to_string(fi.f)}};
  r.verdict = holds;
  return r;
}

Report cmd_sat(const Options& o, const std::vector<std::string>& args, bool validity) {
  if (args.size() != 1) throw UsageError("expected one formula");
  auto fi = read_formula(args[0], o);
  Alphabet a = resolve(o, {actions_in(fi.f)});
  bool v;
  if (o.fragment.empty()) v = validity ? !sat_any(dual(fi.f, a), a) : sat_any(fi.f, a);
  else v = validity ? valid(need_fragment(o), fi.f, a) : sat(need_fragment(o), fi.f, a);
  Report r{validity ? "valid" : "sat"};
  r.inputs = {{"formula", to_string(fi.f, a)}, {"fragment", o.fragment}};
  r.verdict = v;
  if (!validity && v) {
    try {
      auto w = brute_sat_witness(fi.f, a);
      if (w.model) r.witness = to_string(*w.model);
    } catch (const BudgetExceeded&) {
      r.note = "model search skipped";
    }
  }
  return r;
}

Report cmd_prime(const Options& o, const std::vector<std::string>& args) {
  if (args.size() != 1) throw UsageError("prime needs one formula");
  Fragment x = need_fragment(o);
  auto fi = read_formula(args[0], o);
  Alphabet a = resolve(o, {actions_in(fi.f)});
  PrimeResult pr = prime_check(x, fi.f, a);
  if (!o.dot.empty()) {
    if (!sat_any(fi.f, a)) throw UsageError("no graph: the formula is unsatisfiable");
    auto pg = primality_graph(x, fi.f, a);
    if (!pg.graph) throw UsageError("no graph: " + pg.note);
    write_dot(o.dot, to_dot(*pg.graph));
  }
  Report r{"prime"};
  r.inputs = {{"formula", to_string(fi.f, a)}, {"fragment", fragment_name(x)}};
  r.verdict = pr.prime;
  if (pr.witness) r.witness = to_string(*pr.witness);
  r.confidence = pr.confidence;
  r.note = pr.note;
  return r;
}

Report cmd_char(const Options& o, const std::vector<std::string>& args, bool modulo_kernel) {
  if (args.size() != 1) throw UsageError("char needs one formula");
  Fragment x = need_fragment(o);
  auto fi = read_formula(args[0], o);
  Alphabet a = resolve(o, {actions_in(fi.f)});
  CharVerdict v = modulo_kernel ? char_mod_kernel_bounded(x, fi.f, a, o.depth, o.width) : decide_characteristic(x, fi.f, a);
  Report r{modulo_kernel ? "char-kernel" : "char"};
  r.inputs = {{"formula", to_string(fi.f, a)}, {"fragment", fragment_name(x)}};
  r.verdict = v.is_characteristic;
  if (v.witness) r.witness = to_string(*v.witness);
  r.confidence = v.confidence;
  r.note = v.note;
  return r;
}

Report cmd_synth(const Options& o, const std::vector<std::string>& args) {
  if (args.size() != 1) throw UsageError("synth needs one process");
  PreorderKind k = need_kind(o);
  Proc p = read_process(args[0], o);
  Alphabet a = resolve(o, {actions_of(p)});
  EquationSystem es = chi(k, p, a);
  Report r{"synth"};
  r.inputs = {{"process", to_string(p)}, {"kind", k.name()}, {"form", o.form}};
  if (o.form == "explicit") {
    Metrics m = metrics(es);
    if (m.explicit_size > kExplicitCap)
      throw BudgetExceeded("explicit form has " + std::to_string(m.explicit_size) + " symbols");
    std::cerr << "note: explicit form can be exponentially larger than the equations\n";
    std::string text = to_string(es_expand(es), a);
    r.verdict = text;
    r.lines = {text};
  } else if (o.form == "decl") {
    std::string text = to_string(es);
    r.verdict = text;
    r.lines = {text.substr(0, text.size() - 1)};
  } else {
    throw UsageError("--form is decl or explicit");
  }
  return r;
}

Report cmd_preorder(const Options& o, const std::vector<std::string>& args, bool kernel) {
  if (args.size() != 2) throw UsageError("expected two processes");
  PreorderKind k = need_kind(o);
  Proc p = read_process(args[0], o), q = read_process(args[1], o);
  Report r{kernel ? "kernel" : "preorder"};
  r.inputs = {{"p", to_string(p)}, {"q", to_string(q)}, {"kind", k.name()}};
  r.verdict = kernel ? kernel_equiv(k, p, q) : preorder(k, p, q);
  return r;
}

Report cmd_dnf(const Options& o, const std::vector<std::string>& args, std::size_t limit) {
  if (args.size() != 1) throw UsageError("dnf needs one formula");
  auto fi = read_formula(args[0], o);
  Alphabet a = resolve(o, {actions_in(fi.f)});
  DisjunctStream s(fi.f);
  json list = json::array();
  Report r{"dnf"};
  std::size_t n = 0;
  while (auto d = s.next()) {
    if (++n > limit) throw BudgetExceeded("more than " + std::to_string(limit) + " disjuncts");
    list.push_back(to_string(*d, a));
    r.lines.push_back(to_string(*d, a));
  }
  r.inputs = {{"formula", to_string(fi.f, a)}};
  r.verdict = list;
  return r;
}

Report cmd_metrics(const Options& o, const std::vector<std::string>& args) {
  if (args.size() != 1) throw UsageError("metrics needs one formula");
  auto fi = read_formula(args[0], o);
  Metrics m = fi.es ? metrics(*fi.es) : metrics(fi.f);
  Report r{"metrics"};
  r.inputs = {{"formula", args[0]}};
  r.verdict = {{"size", m.explicit_size}, {"decl", m.decl_size}, {"eqlen", m.eq_length}, {"depth", m.modal_depth}};
  r.lines = {"size " + std::to_string(m.explicit_size), "decl " + std::to_string(m.decl_size),
             "eqlen " + std::to_string(m.eq_length), "depth " + std::to_string(m.modal_depth)};
  return r;
}

Report cmd_oracle(const Options& o, const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("oracle needs a mode: enum, sat or char");
  const std::string& mode = args[0];
  Report r{"oracle-" + mode};
  if (mode == "enum") {
    Alphabet a = resolve(o, {});
    auto u = enum_processes({a, o.depth, o.width});
    r.inputs = {{"alphabet", o.alphabet}, {"depth", o.depth}, {"width", o.width}};
    r.verdict = u.size();
    for (Proc p : u) r.lines.push_back(to_string(p));
    return r;
  }
  if (args.size() != 2) throw UsageError("oracle " + mode + " needs one formula");
  auto fi = read_formula(args[1], o);
  Alphabet a = resolve(o, {actions_in(fi.f)});
  r.inputs = {{"formula", to_string(fi.f, a)}};
  if (mode == "sat") {
    auto w = brute_sat_witness(fi.f, a);
    r.verdict = w.satisfiable;
    if (w.model) r.witness = to_string(*w.model);
  } else if (mode == "char") {
    auto p = brute_characteristic(need_kind(o), fi.f, a);
    r.verdict = p.has_value();
    if (p) r.witness = to_string(*p);
  } else {
    throw UsageError("unknown oracle mode '" + mode + "'");
  }
  return r;
}

Report cmd_gen(const Options& o, const std::vector<std::string>& args, std::size_t count, std::size_t size) {
  if (args.size() != 1) throw UsageError("gen needs a mode: formulas, process, cnf-rs or cnf-ts");
  const std::string& mode = args[0];
  Report r{"gen-" + mode};
  json out = json::array();
  if (mode == "formulas") {
    Alphabet a = resolve(o, {});
    if (a.empty()) a = Alphabet::from_names({"a", "b"});
    for (Formula f : random_instances(o.seed, need_fragment(o), size, count, a)) {
      out.push_back(to_string(f, a));
      r.lines.push_back(to_string(f, a));
    }
  } else if (mode == "process") {
    Alphabet a = resolve(o, {});
    if (a.empty()) a = Alphabet::from_names({"a", "b"});
    for (std::size_t i = 0; i < count; ++i) {
      Proc p = random_process(o.seed + i, {a, o.depth, o.width});
      out.push_back(to_string(p));
      r.lines.push_back(to_string(p));
    }
  } else if (mode == "cnf-rs" || mode == "cnf-ts") {
    auto target = mode == "cnf-rs" ? EncodingTarget::RS : EncodingTarget::TS;
    for (std::size_t i = 0; i < count; ++i) {
      Cnf c = random_cnf(o.seed + i, size, size * 4, 3);
      std::string text = to_string(encode_cnf(target, c, size));
      out.push_back(text);
      r.lines.push_back(text);
    }
  } else {
    throw UsageError("unknown gen mode '" + mode + "'");
  }
  r.inputs = {{"seed", o.seed}, {"count", count}, {"size", size}};
  r.verdict = out;
  return r;
}

Report cmd_bench(const Options& o, std::size_t count, std::size_t size) {
  Fragment x = need_fragment(o);
  Alphabet a = resolve(o, {});
  if (a.empty()) a = Alphabet::from_names({"a", "b"});
  auto fs = random_instances(o.seed, x, size, count, a);
  using clock = std::chrono::steady_clock;
  double sat_ms = 0, prime_ms = 0;
  std::size_t sats = 0, primes = 0;
  for (Formula f : fs) {
    auto t0 = clock::now();
    sats += sat(x, f, a);
    auto t1 = clock::now();
    primes += prime(x, f, a);
    auto t2 = clock::now();
    sat_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    prime_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
  }
  Report r{"bench"};
  r.inputs = {{"fragment", fragment_name(x)}, {"count", count}, {"size", size}, {"seed", o.seed}};
  r.verdict = {{"formulas", fs.size()}, {"satisfiable", sats}, {"prime", primes}, {"sat_ms", sat_ms}, {"prime_ms", prime_ms}};
  r.lines = {"formulas " + std::to_string(fs.size()), "satisfiable " + std::to_string(sats),
             "prime " + std::to_string(primes), "sat_ms " + std::to_string(sat_ms),
             "prime_ms " + std::to_string(prime_ms)};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hennessy-Milner logic toolkit: model checking, satisfiability, primality and characteristic formulae"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> args;
  std::size_t count = 10, size = 8, limit = 100000;
  bool modulo_kernel = false;

  auto common = [&](CLI::App* c) {
    c->add_option("--fragment", o.fragment, "S, CS, RS, TS, 2S, 3S or BS");
    c->add_option("--alphabet", o.alphabet, "comma-separated actions");
    c->add_option("--kind", o.kind, "preorder: S, CS, RS, TS, 2S, 3S, NS<n>, BS");
    c->add_option("--depth-budget", o.depth, "universe depth");
    c->add_option("--width-budget", o.width, "universe width");
    c->add_option("--seed", o.seed, "generator seed");
    c->add_flag("--json", o.json, "JSON output");
    c->add_option("--dot", o.dot, "write the sequent graph as DOT");
    c->add_option("--form", o.form, "decl or explicit");
    c->add_option("args", args, "inputs: inline text or file paths");
  };

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"mc", "does a process satisfy a formula"},
                      {"sat", "satisfiability"},
                      {"valid", "validity"},
                      {"prime", "primality"},
                      {"char", "is the formula characteristic"},
                      {"synth", "characteristic formula of a process"},
                      {"preorder", "p below q in the preorder"},
                      {"kernel", "p and q equivalent in the kernel"},
                      {"dnf", "disjunctive normal form"},
                      {"metrics", "size, declaration size and equational length"},
                      {"oracle", "brute-force reference: enum, sat, char"},
                      {"gen", "generators: formulas, process, cnf-rs, cnf-ts"},
                      {"bench", "time sat and prime on random formulae"}};
  std::map<std::string, CLI::App*> cmd;
  for (const auto& s : subs) {
    cmd[s.name] = app.add_subcommand(s.name, s.help);
    common(cmd[s.name]);
  }
  cmd["char"]->add_flag("--modulo-kernel", modulo_kernel, "bounded check modulo the kernel");
  for (const char* n : {"gen", "bench"}) {
    cmd[n]->add_option("--count", count, "number of instances");
    cmd[n]->add_option("--size", size, "formula size bound or variable count");
  }
  cmd["dnf"]->add_option("--limit", limit, "maximum number of disjuncts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    Report r;
    if (cmd["mc"]->parsed()) r = cmd_mc(o, args);
    else if (cmd["sat"]->parsed()) r = cmd_sat(o, args, false);
    else if (cmd["valid"]->parsed()) r = cmd_sat(o, args, true);
    else if (cmd["prime"]->parsed()) r = cmd_prime(o, args);
    else if (cmd["char"]->parsed()) r = cmd_char(o, args, modulo_kernel);
    else if (cmd["synth"]->parsed()) r = cmd_synth(o, args);
    else if (cmd["preorder"]->parsed()) r = cmd_preorder(o, args, false);
    else if (cmd["kernel"]->parsed()) r = cmd_preorder(o, args, true);
    else if (cmd["dnf"]->parsed()) r = cmd_dnf(o, args, limit);
    else if (cmd["metrics"]->parsed()) r = cmd_metrics(o, args);
    else if (cmd["oracle"]->parsed()) r = cmd_oracle(o, args);
    else if (cmd["gen"]->parsed()) r = cmd_gen(o, args, count, size);
    else r = cmd_bench(o, count, size);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return emit(o, std::move(r), ms);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CycleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
