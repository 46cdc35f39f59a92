// Copyright 2026 The rpqres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rpqres command-line front end.
//
// Exit codes: 0 analysis completed, 1 pinned gadget length mismatch,
// 2 input error, 3 resource cap, 4 solver refusal.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rpqres/automata.hpp"
#include "rpqres/classifier.hpp"
#include "rpqres/gadgets.hpp"
#include "rpqres/graphdb.hpp"
#include "rpqres/solvers.hpp"

namespace {

using json = nlohmann::json;
using namespace rpqres;

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitRefusal = 4;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin),
            std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Exactly one of: inline regex (first positional), --words, --automaton.
struct LanguageSource {
  std::string words_file;
  std::string automaton_file;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--words", words_file, "word-list file for the language");
    cmd->add_option("--automaton", automaton_file,
                    "automaton file for the language");
  }

  // Consumes the regex from `args` when no file source is given.
  LanguageSpec take(std::vector<std::string>& args) const {
    int sources = !words_file.empty() + !automaton_file.empty();
    if (sources > 1) throw InputError("give at most one of --words, --automaton");
    if (!words_file.empty()) {
      return LanguageSpec::from_finite(
          FiniteLanguage::parse_list(read_input(words_file)));
    }
    if (!automaton_file.empty()) {
      return LanguageSpec::from_automaton(
          EpsNFA::parse(read_input(automaton_file)));
    }
    if (args.empty()) throw InputError("missing language");
    std::string regex = args.front();
    args.erase(args.begin());
    return LanguageSpec::parse(regex);
  }
};

void expect_args(const std::vector<std::string>& args, std::size_t n,
                 const std::string& usage) {
  if (args.size() != n) throw InputError("expected " + usage);
}

FiniteLanguage finite_or_throw(const LanguageSpec& spec) {
  if (!spec.is_finite()) {
    throw InputError("this command needs a finite language, got " +
                     spec.describe());
  }
  return *spec.finite();
}

PreGadget load_gadget(const std::string& where,
                      std::optional<std::size_t>* expected = nullptr) {
  const std::string prefix = "builtin:";
  if (where.rfind(prefix, 0) == 0) {
    auto g = builtin_gadget(where.substr(prefix.size()));
    if (!g) {
      std::string names;
      for (const auto& n : builtin_gadget_names()) names += " " + n;
      throw InputError("no built-in gadget " + where.substr(prefix.size()) +
                       "; available:" + names);
    }
    return *g;
  }
  GadgetFile f = parse_gadget_file(read_input(where));
  if (expected) *expected = f.expected_odd_length;
  return f.gadget;
}

json fact_json(const Fact& f) { return {f.tail, f.label.name(), f.head}; }

json cost_json(const Cost& c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

struct Context {
  bool as_json = false;
};

int cmd_classify(const Context& ctx, const LanguageSource& src,
                 std::vector<std::string> args, std::size_t four_legged) {
  LanguageSpec spec = src.take(args);
  expect_args(args, 0, "a single language");
  ClassifyOptions options;
  options.four_legged_max_length = four_legged;
  Verdict v = classify(spec, options);
  if (ctx.as_json) {
    json out;
    out["language"] = spec.describe();
    out["status"] = status_name(v.status);
    out["method"] = v.method ? json(method_name(*v.method)) : json(nullptr);
    out["reason"] = v.reason;
    out["summary"] = v.summary();
    out["witness"] = v.witness;
    out["notes"] = v.notes;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << v.summary() << "\n";
  for (const auto& [k, val] : v.witness) std::cout << "  " << k << ": " << val << "\n";
  for (const auto& n : v.notes) std::cout << "  note: " << n << "\n";
  return 0;
}

int cmd_resilience(const Context& ctx, const LanguageSource& src,
                   std::vector<std::string> args, bool set_semantics,
                   const std::string& solver_name, bool witness,
                   const SolveOptions& options) {
  LanguageSpec spec = src.take(args);
  expect_args(args, 1, "LANGUAGE DATABASE");
  GraphDB d = GraphDB::parse(read_input(args[0]));
  static const std::map<std::string, SolverChoice> solvers = {
      {"auto", SolverChoice::kAuto},   {"local", SolverChoice::kLocal},
      {"bcl", SolverChoice::kBcl},     {"submod", SolverChoice::kSubmod},
      {"exact", SolverChoice::kExact},
  };
  Semantics sem = set_semantics ? Semantics::kSet : Semantics::kBag;
  ResilienceAnswer r = resilience(d, spec, sem, solvers.at(solver_name), options);
  GraphDB weights = set_semantics ? d.with_unit_multiplicities() : d;
  if (ctx.as_json) {
    json out;
    out["value"] = cost_json(r.value);
    out["method"] = method_name(r.method);
    out["semantics"] = set_semantics ? "set" : "bag";
    if (witness) {
      out["contingency"] = json::array();
      for (const Fact& f : r.contingency) {
        json j = fact_json(f);
        j.push_back(weights.multiplicity(f));
        out["contingency"].push_back(j);
      }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "resilience " << r.value << "\n";
  std::cout << "method " << method_name(r.method) << "\n";
  if (witness) {
    for (const Fact& f : r.contingency) {
      std::cout << "  " << f.render();
      if (weights.multiplicity(f) != 1) std::cout << " " << weights.multiplicity(f);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_validate(const Context& ctx, const LanguageSource& src,
                 std::vector<std::string> args, bool trace,
                 std::size_t budget) {
  if (args.empty()) throw InputError("expected GADGET LANGUAGE");
  std::string gadget_path = args.front();
  args.erase(args.begin());
  LanguageSpec spec = src.take(args);
  expect_args(args, 0, "GADGET LANGUAGE");
  std::optional<std::size_t> expected;
  PreGadget g = load_gadget(gadget_path, &expected);
  GadgetReport r = validate_gadget(g, finite_or_throw(spec), budget);
  bool mismatch = r.valid && expected && *expected != r.odd_path_length;
  const char* outcome = r.outcome == CondenseOutcome::kFound      ? "VALID"
                        : r.outcome == CondenseOutcome::kNotFound ? "INVALID"
                                                                  : "INCONCLUSIVE";
  if (ctx.as_json) {
    json out;
    out["outcome"] = outcome;
    out["valid"] = r.valid;
    if (r.valid) out["odd_path_length"] = r.odd_path_length;
    if (expected) out["expected_odd_length"] = *expected;
    out["reason"] = r.reason;
    out["hyperedges"] = r.initial.edges.size();
    out["trace"] = json::array();
    for (const auto& rule : r.trace) out["trace"].push_back(rule.describe(r.initial));
    std::cout << out.dump(2) << "\n";
  } else {
    if (r.valid) {
      std::cout << "VALID, odd path length " << r.odd_path_length << "\n";
    } else {
      std::cout << outcome << ": " << r.reason << "\n";
    }
    if (mismatch) {
      std::cout << "MISMATCH: expected odd path length " << *expected << "\n";
    }
    if (trace) {
      for (const auto& rule : r.trace) {
        std::cout << "  " << rule.describe(r.initial) << "\n";
      }
    }
  }
  return mismatch ? kExitMismatch : 0;
}

int cmd_encode(std::vector<std::string> args, bool directed) {
  expect_args(args, 2, "GRAPH GADGET");
  std::string text = read_input(args[0]);
  DirectedGraph g = directed ? DirectedGraph::parse(text)
                             : orient(UndirectedGraph::parse(text));
  std::cout << encode_graph(g, load_gadget(args[1])).serialize();
  return 0;
}

int cmd_matches(const Context& ctx, const LanguageSource& src,
                std::vector<std::string> args) {
  LanguageSpec spec = src.take(args);
  expect_args(args, 1, "LANGUAGE DATABASE");
  GraphDB d = GraphDB::parse(read_input(args[0]));
  std::vector<Match> matches = enumerate_matches(d, finite_or_throw(spec));
  if (ctx.as_json) {
    json out = json::array();
    for (const Match& m : matches) {
      json facts = json::array();
      for (const Fact& f : m.facts) facts.push_back(fact_json(f));
      out.push_back({{"word", render_word(m.word())}, {"facts", facts}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << matches.size() << " hyperedges\n";
  for (const Match& m : matches) {
    std::cout << render_word(m.word()) << ":";
    const char* sep = " ";
    for (const Fact& f : m.facts) {
      std::cout << sep << f.render();
      sep = ", ";
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_automaton(const Context& ctx, const LanguageSource& src,
                  std::vector<std::string> args, bool to_ro, bool is_local,
                  bool reduce, std::size_t state_cap) {
  LanguageSpec spec = src.take(args);
  expect_args(args, 0, "a single language");
  if (to_ro + is_local + reduce != 1) {
    throw InputError("give exactly one of --to-ro, --is-local, --reduce");
  }
  const EpsNFA& a = spec.automaton();
  if (is_local) {
    bool local = is_local_language(a, state_cap);
    if (ctx.as_json) {
      std::cout << json{{"local", local}}.dump(2) << "\n";
    } else {
      std::cout << (local ? "true" : "false") << "\n";
    }
    return 0;
  }
  EpsNFA out = to_ro ? eps_nfa_to_ro(a) : reduce_regular(a, state_cap).to_nfa();
  if (ctx.as_json) {
    std::cout << json{{"automaton", out.serialize()}}.dump(2) << "\n";
  } else {
    std::cout << out.serialize();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilience of regular path queries"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  LanguageSource src;
  std::vector<std::string> args;

  auto* classify_cmd = app.add_subcommand("classify", "classify a language");
  std::size_t four_legged = 6;
  classify_cmd->add_option("language", args, "regular expression");
  classify_cmd->add_option("--four-legged-length", four_legged,
                           "longest word searched for four-legged witnesses");
  src.add_to(classify_cmd);

  auto* res_cmd = app.add_subcommand("resilience", "compute resilience");
  bool set_semantics = false, bag_semantics = false, witness = false;
  std::string solver = "auto";
  SolveOptions options;
  res_cmd->add_option("args", args, "[LANGUAGE] DATABASE ('-' for stdin)");
  auto* set_flag = res_cmd->add_flag("--set", set_semantics, "set semantics");
  res_cmd->add_flag("--bag", bag_semantics, "bag semantics (default)")
      ->excludes(set_flag);
  res_cmd->add_option("--solver", solver)
      ->check(CLI::IsMember({"auto", "local", "bcl", "submod", "exact"}));
  res_cmd->add_flag("--witness", witness, "print a minimum contingency set");
  res_cmd->add_option("--exact-cap", options.exact_fact_cap,
                      "largest database for the exact solver");
  res_cmd->add_option("--submod-cap", options.submod_cap,
                      "largest candidate set for the submodular solver");
  res_cmd->add_option("--state-cap", options.state_cap,
                      "largest automaton built during analysis");
  src.add_to(res_cmd);

  auto* val_cmd = app.add_subcommand("validate-gadget", "validate a gadget");
  bool trace = false;
  std::size_t budget = kDefaultCondenseBudget;
  val_cmd->add_option("args", args,
                      "GADGET (file or builtin:NAME) [LANGUAGE]");
  val_cmd->add_flag("--trace", trace, "print the condensation trace");
  val_cmd->add_option("--budget", budget, "search budget in states");
  src.add_to(val_cmd);

  auto* enc_cmd = app.add_subcommand("encode", "encode a graph with a gadget");
  bool directed = false;
  enc_cmd->add_option("args", args, "GRAPH GADGET");
  enc_cmd->add_flag("--directed", directed, "graph file uses 'u -> v' lines");

  auto* match_cmd = app.add_subcommand("matches", "dump the hypergraph of matches");
  match_cmd->add_option("args", args, "[LANGUAGE] DATABASE");
  src.add_to(match_cmd);

  auto* aut_cmd = app.add_subcommand("automaton", "automata utilities");
  bool to_ro = false, is_local = false, reduce = false;
  std::size_t state_cap = kDefaultStateCap;
  aut_cmd->add_option("language", args, "regular expression");
  aut_cmd->add_flag("--to-ro", to_ro, "print the read-once automaton");
  aut_cmd->add_flag("--is-local", is_local, "print whether L is local");
  aut_cmd->add_flag("--reduce", reduce, "print the automaton of red(L)");
  aut_cmd->add_option("--state-cap", state_cap);
  src.add_to(aut_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  Context ctx{format == "json"};
  try {
    if (*classify_cmd) return cmd_classify(ctx, src, args, four_legged);
    if (*res_cmd) {
      return cmd_resilience(ctx, src, args, set_semantics, solver, witness,
                            options);
    }
    if (*val_cmd) return cmd_validate(ctx, src, args, trace, budget);
    if (*enc_cmd) return cmd_encode(args, directed);
    if (*match_cmd) return cmd_matches(ctx, src, args);
    if (*aut_cmd) {
      return cmd_automaton(ctx, src, args, to_ro, is_local, reduce, state_cap);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefusal;
  }
  return 0;
}
