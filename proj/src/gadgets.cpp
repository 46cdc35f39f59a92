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

#include "rpqres/gadgets.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rpqres/solvers.hpp"

namespace rpqres {
namespace {

using json = nlohmann::json;

std::vector<std::vector<std::string>> token_lines(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    std::string t;
    while (fields >> t) tok.push_back(t);
    lines.push_back(std::move(tok));
  }
  return lines;
}

std::string fresh_name(const std::set<Node>& used, std::string base) {
  while (used.count(base)) base += "'";
  return base;
}

// Edges of h with the vertices in `removed` deleted, duplicates and
// non-minimal edges dropped.
std::vector<std::vector<std::size_t>> minimal_projection(
    const MatchHypergraph& h, const std::vector<bool>& removed) {
  std::set<std::vector<std::size_t>> projected;
  for (const auto& e : h.edges) {
    std::vector<std::size_t> p;
    for (std::size_t v : e) {
      if (!removed[v]) p.push_back(v);
    }
    projected.insert(std::move(p));
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& e : projected) {
    bool minimal = true;
    for (const auto& other : projected) {
      if (other != e && other.size() < e.size() &&
          std::includes(e.begin(), e.end(), other.begin(), other.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(e);
  }
  return out;
}

// Smallest alive vertex other than v whose incident edges include all the
// edges incident to v, if any.
std::optional<std::size_t> find_dominator(
    const std::vector<std::vector<std::size_t>>& edges,
    const std::vector<bool>& alive, std::size_t v) {
  std::vector<std::size_t> ev;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (std::binary_search(edges[i].begin(), edges[i].end(), v)) ev.push_back(i);
  }
  for (std::size_t w = 0; w < alive.size(); ++w) {
    if (w == v || !alive[w]) continue;
    bool covers = std::all_of(ev.begin(), ev.end(), [&](std::size_t i) {
      return std::binary_search(edges[i].begin(), edges[i].end(), w);
    });
    if (covers) return w;
  }
  return std::nullopt;
}

class CondenseSearch {
 public:
  CondenseSearch(const MatchHypergraph& h, std::size_t budget)
      : h_(h), budget_(budget) {}

  // Sequence of (removed, dominator) pairs reaching an odd path.
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> run() {
    std::vector<bool> removed(h_.vertices.size(), false);
    for (std::size_t v = 0; v < removed.size(); ++v) removed[v] = !h_.alive[v];
    visited_.insert(removed);
    if (dfs(removed)) return path_;
    return std::nullopt;
  }

  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> greedy() {
    std::vector<bool> removed(h_.vertices.size(), false);
    for (std::size_t v = 0; v < removed.size(); ++v) removed[v] = !h_.alive[v];
    std::vector<std::pair<std::size_t, std::size_t>> steps;
    while (true) {
      if (is_goal(removed)) return steps;
      auto moves = candidates(removed);
      if (moves.empty()) return std::nullopt;
      removed[moves.front().first] = true;
      steps.push_back(moves.front());
    }
  }

  bool exhausted() const { return exhausted_; }
  std::size_t explored() const { return explored_; }

 private:
  MatchHypergraph view(const std::vector<bool>& removed) const {
    MatchHypergraph g = h_;
    for (std::size_t v = 0; v < removed.size(); ++v) g.alive[v] = !removed[v];
    g.edges = minimal_projection(h_, removed);
    return g;
  }

  bool is_goal(const std::vector<bool>& removed) const {
    return odd_path_length(view(removed)).has_value();
  }

  std::vector<std::pair<std::size_t, std::size_t>> candidates(
      const std::vector<bool>& removed) const {
    auto edges = minimal_projection(h_, removed);
    std::vector<bool> alive(removed.size());
    for (std::size_t v = 0; v < removed.size(); ++v) alive[v] = !removed[v];
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t v = 0; v < alive.size(); ++v) {
      if (!alive[v] || h_.is_protected(v)) continue;
      if (auto w = find_dominator(edges, alive, v)) out.emplace_back(v, *w);
    }
    return out;
  }

  bool dfs(const std::vector<bool>& removed) {
    if (explored_ >= budget_) {
      exhausted_ = true;
      return false;
    }
    ++explored_;
    auto edges = minimal_projection(h_, removed);
    // Edges never grow, and a singleton edge can never be dropped.
    for (const auto& e : edges) {
      if (e.size() < 2) return false;
    }
    if (is_goal(removed)) return true;
    for (const auto& move : candidates(removed)) {
      std::vector<bool> next = removed;
      next[move.first] = true;
      if (!visited_.insert(next).second) continue;
      path_.push_back(move);
      if (dfs(next)) return true;
      path_.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  const MatchHypergraph& h_;
  std::size_t budget_;
  std::size_t explored_ = 0;
  bool exhausted_ = false;
  std::set<std::vector<bool>> visited_;
  std::vector<std::pair<std::size_t, std::size_t>> path_;
};

}  // namespace

void PreGadget::check() const {
  if (t_in == t_out) throw InputError("t_in and t_out must differ");
  std::set<Node> adom = db.adom();
  if (!adom.count(t_in)) throw InputError("t_in " + t_in + " is not in the database");
  if (!adom.count(t_out)) {
    throw InputError("t_out " + t_out + " is not in the database");
  }
  for (const auto& [f, m] : db.facts()) {
    if (f.head == t_in || f.head == t_out) {
      throw InputError("fact " + f.render() + " has t_in or t_out as head");
    }
  }
}

GadgetFile parse_gadget_file(std::string_view json_text) {
  try {
    json doc = json::parse(json_text);
    GadgetFile file{PreGadget{GraphDB(), doc.at("t_in").get<std::string>(),
                              doc.at("t_out").get<std::string>(),
                              Letter(doc.at("label").get<std::string>())},
                    std::nullopt};
    for (const json& f : doc.at("facts")) {
      if (!f.is_array() || f.size() != 3) {
        throw InputError("each fact must be [tail, label, head]");
      }
      file.gadget.db.add_fact(Fact{f[0].get<std::string>(),
                                   Letter(f[1].get<std::string>()),
                                   f[2].get<std::string>()});
    }
    if (doc.contains("expected_odd_length")) {
      file.expected_odd_length = doc.at("expected_odd_length").get<std::size_t>();
    }
    file.gadget.check();
    return file;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed gadget file: ") + e.what());
  }
}

std::string gadget_to_json(const PreGadget& g,
                           std::optional<std::size_t> expected_odd_length) {
  json doc;
  doc["facts"] = json::array();
  for (const auto& [f, m] : g.db.facts()) {
    doc["facts"].push_back({f.tail, f.label.name(), f.head});
  }
  doc["t_in"] = g.t_in;
  doc["t_out"] = g.t_out;
  doc["label"] = g.label.name();
  if (expected_odd_length) doc["expected_odd_length"] = *expected_odd_length;
  return doc.dump(2) + "\n";
}

std::optional<PreGadget> builtin_gadget(std::string_view language) {
  if (language != "aa" && language != "aaa") return std::nullopt;
  Letter a("a");
  PreGadget g{GraphDB(), "t_in", "t_out", a};
  g.db.add_fact(Fact{"t_in", a, "1"});
  g.db.add_fact(Fact{"1", a, "2"});
  g.db.add_fact(Fact{"2", a, "3"});
  g.db.add_fact(Fact{"t_out", a, "2"});
  return g;
}

std::vector<std::string> builtin_gadget_names() { return {"aa", "aaa"}; }

Completion completion(const PreGadget& g) {
  g.check();
  std::set<Node> adom = g.db.adom();
  Node s_in = fresh_name(adom, "s_in");
  adom.insert(s_in);
  Node s_out = fresh_name(adom, "s_out");
  Completion c{g.db, Fact{s_in, g.label, g.t_in}, Fact{s_out, g.label, g.t_out}};
  c.db.add_fact(c.f_in);
  c.db.add_fact(c.f_out);
  return c;
}

std::size_t MatchHypergraph::index_of(const Fact& f) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), f);
  if (it == vertices.end() || *it != f) {
    throw InputError("fact " + f.render() + " is not a vertex");
  }
  return static_cast<std::size_t>(it - vertices.begin());
}

std::size_t MatchHypergraph::num_alive() const {
  return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true));
}

std::vector<std::size_t> MatchHypergraph::incident(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (std::binary_search(edges[i].begin(), edges[i].end(), v)) out.push_back(i);
  }
  return out;
}

MatchHypergraph hypergraph_of_matches(const GraphDB& d,
                                      const FiniteLanguage& language) {
  MatchHypergraph h;
  h.vertices = d.fact_list();
  h.alive.assign(h.vertices.size(), true);
  for (const Match& m : enumerate_matches(d, language)) {
    std::vector<std::size_t> e;
    for (const Fact& f : m.facts) e.push_back(h.index_of(f));
    std::sort(e.begin(), e.end());
    h.edges.push_back(std::move(e));
  }
  return h;
}

MatchHypergraph hypergraph_of_completion(const Completion& c,
                                         const FiniteLanguage& language) {
  MatchHypergraph h = hypergraph_of_matches(c.db, language);
  h.f_in = h.index_of(c.f_in);
  h.f_out = h.index_of(c.f_out);
  return h;
}

std::string RuleApplication::describe(const MatchHypergraph& h) const {
  auto edge = [&](const std::vector<std::size_t>& e) {
    std::string s = "{";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i > 0) s += ", ";
      s += h.vertices[e[i]].render();
    }
    return s + "}";
  };
  if (kind == Kind::kEdgeDomination) {
    return "edge-domination: drop " + edge(removed_edge) + " containing " +
           edge(dominating_edge);
  }
  return "node-domination: drop " + h.vertices[removed_vertex].render() +
         " dominated by " + h.vertices[dominating_vertex].render();
}

bool apply_edge_domination(MatchHypergraph& h,
                           const std::vector<std::size_t>& removed_edge,
                           const std::vector<std::size_t>& dominating_edge) {
  if (!std::includes(removed_edge.begin(), removed_edge.end(),
                     dominating_edge.begin(), dominating_edge.end())) {
    return false;
  }
  auto removed = std::find(h.edges.begin(), h.edges.end(), removed_edge);
  if (removed == h.edges.end()) return false;
  bool has_other = false;
  for (auto it = h.edges.begin(); it != h.edges.end(); ++it) {
    if (it != removed && *it == dominating_edge) has_other = true;
  }
  if (!has_other) return false;
  h.edges.erase(removed);
  return true;
}

bool apply_node_domination(MatchHypergraph& h, std::size_t removed,
                           std::size_t dominator) {
  if (removed == dominator || removed >= h.vertices.size() ||
      dominator >= h.vertices.size() || !h.alive[removed] ||
      !h.alive[dominator] || h.is_protected(removed)) {
    return false;
  }
  for (const auto& e : h.edges) {
    if (std::binary_search(e.begin(), e.end(), removed) &&
        !std::binary_search(e.begin(), e.end(), dominator)) {
      return false;
    }
  }
  for (auto& e : h.edges) {
    e.erase(std::remove(e.begin(), e.end(), removed), e.end());
  }
  h.alive[removed] = false;
  return true;
}

std::vector<RuleApplication> edge_domination_fixpoint(MatchHypergraph& h) {
  std::vector<RuleApplication> log;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < h.edges.size() && !changed; ++i) {
      for (std::size_t j = 0; j < h.edges.size() && !changed; ++j) {
        if (i == j) continue;
        const auto& big = h.edges[i];
        const auto& small = h.edges[j];
        if (big == small ? i < j
                         : !std::includes(big.begin(), big.end(),
                                          small.begin(), small.end())) {
          continue;
        }
        RuleApplication r{RuleApplication::Kind::kEdgeDomination, big, small};
        h.edges.erase(h.edges.begin() + static_cast<std::ptrdiff_t>(i));
        log.push_back(std::move(r));
        changed = true;
      }
    }
  }
  return log;
}

bool apply_rule(MatchHypergraph& h, const RuleApplication& rule) {
  if (rule.kind == RuleApplication::Kind::kEdgeDomination) {
    return apply_edge_domination(h, rule.removed_edge, rule.dominating_edge);
  }
  return apply_node_domination(h, rule.removed_vertex, rule.dominating_vertex);
}

std::optional<std::size_t> odd_path_length(const MatchHypergraph& h) {
  if (!h.f_in || !h.f_out || *h.f_in == *h.f_out) return std::nullopt;
  std::size_t n = h.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : h.edges) {
    if (e.size() != 2) return std::nullopt;
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::size_t alive = h.num_alive();
  if (h.edges.size() + 1 != alive || h.edges.size() % 2 == 0) return std::nullopt;
  for (std::size_t v = 0; v < n; ++v) {
    if (!h.alive[v]) continue;
    std::size_t want = h.is_protected(v) ? 1 : 2;
    if (adj[v].size() != want) return std::nullopt;
  }
  // Connected and acyclic follows from the degree sequence, the edge count
  // and reachability of every vertex.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{*h.f_in};
  seen[*h.f_in] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  if (reached != alive) return std::nullopt;
  return h.edges.size();
}

CondenseResult condense(const MatchHypergraph& h, std::size_t budget) {
  CondenseResult result;
  CondenseSearch search(h, budget);
  auto steps = search.run();
  result.explored = search.explored();
  if (!steps && search.exhausted()) {
    steps = search.greedy();
    if (!steps) {
      result.outcome = CondenseOutcome::kInconclusive;
      result.result = h;
      return result;
    }
  }
  if (!steps) {
    result.outcome = CondenseOutcome::kNotFound;
    result.result = h;
    return result;
  }
  MatchHypergraph g = h;
  result.trace = edge_domination_fixpoint(g);
  for (const auto& [v, w] : *steps) {
    RuleApplication r{RuleApplication::Kind::kNodeDomination, {}, {}, v, w};
    if (!apply_node_domination(g, v, w)) {
      throw std::logic_error("condensation replay diverged from the search");
    }
    result.trace.push_back(r);
    auto more = edge_domination_fixpoint(g);
    result.trace.insert(result.trace.end(), more.begin(), more.end());
  }
  result.outcome = CondenseOutcome::kFound;
  result.result = std::move(g);
  return result;
}

GadgetReport validate_gadget(const PreGadget& g, const FiniteLanguage& language,
                             std::size_t budget) {
  if (!is_reduced_finite(language)) {
    throw InputError("gadget validation requires a reduced language");
  }
  GadgetReport report;
  Completion c = completion(g);
  report.initial = hypergraph_of_completion(c, language);
  CondenseResult r = condense(report.initial, budget);
  report.outcome = r.outcome;
  report.trace = std::move(r.trace);
  switch (r.outcome) {
    case CondenseOutcome::kFound:
      report.valid = true;
      report.odd_path_length = *odd_path_length(r.result);
      report.reason = "odd path of length " +
                      std::to_string(report.odd_path_length);
      break;
    case CondenseOutcome::kNotFound:
      report.reason = "no condensation is an odd path from F_in to F_out";
      break;
    case CondenseOutcome::kInconclusive:
      report.reason = "search budget of " + std::to_string(budget) +
                      " states exhausted";
      break;
  }
  return report;
}

void UndirectedGraph::add_edge(const std::string& u, const std::string& v) {
  if (u == v) throw InputError("self-loop on " + u);
  vertices_.insert(u);
  vertices_.insert(v);
  edges_.insert(std::minmax(u, v));
}

UndirectedGraph UndirectedGraph::parse(std::string_view text) {
  UndirectedGraph g;
  std::size_t line_no = 0;
  for (const auto& tok : token_lines(text)) {
    ++line_no;
    try {
      if (tok.size() == 1) {
        g.add_vertex(tok[0]);
      } else if (tok.size() == 2) {
        g.add_edge(tok[0], tok[1]);
      } else if (!tok.empty()) {
        throw ParseError("expected 'u v'", line_no);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return g;
}

void DirectedGraph::add_edge(const std::string& u, const std::string& v) {
  if (u == v) throw InputError("self-loop on " + u);
  vertices_.insert(u);
  vertices_.insert(v);
  edges_.emplace(u, v);
}

DirectedGraph DirectedGraph::parse(std::string_view text) {
  DirectedGraph g;
  std::size_t line_no = 0;
  for (const auto& tok : token_lines(text)) {
    ++line_no;
    try {
      if (tok.size() == 1) {
        g.add_vertex(tok[0]);
      } else if (tok.size() == 3 && tok[1] == "->") {
        g.add_edge(tok[0], tok[2]);
      } else if (!tok.empty()) {
        throw ParseError("expected 'u -> v'", line_no);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return g;
}

DirectedGraph orient(const UndirectedGraph& g) {
  DirectedGraph d;
  for (const auto& v : g.vertices()) d.add_vertex(v);
  for (const auto& [u, v] : g.edges()) d.add_edge(u, v);
  return d;
}

GraphDB encode_graph(const DirectedGraph& g, const PreGadget& gadget) {
  gadget.check();
  GraphDB out;
  for (const auto& u : g.vertices()) {
    out.add_fact(Fact{"s." + u, gadget.label, "t." + u});
  }
  std::size_t k = 0;
  for (const auto& [u, v] : g.edges()) {
    ++k;
    auto rename = [&](const Node& x) -> Node {
      if (x == gadget.t_in) return "t." + u;
      if (x == gadget.t_out) return "t." + v;
      return "e" + std::to_string(k) + "." + x;
    };
    for (const auto& [f, m] : gadget.db.facts()) {
      out.add_fact(Fact{rename(f.tail), f.label, rename(f.head)}, m);
    }
  }
  return out;
}

UndirectedGraph subdivide(const UndirectedGraph& g, std::size_t ell) {
  if (ell == 0 || ell % 2 == 0) {
    throw InputError("subdivision length must be odd, got " +
                     std::to_string(ell));
  }
  UndirectedGraph out;
  for (const auto& v : g.vertices()) out.add_vertex(v);
  for (const auto& [u, v] : g.edges()) {
    std::string prev = u;
    for (std::size_t i = 1; i < ell; ++i) {
      std::string mid = "(" + u + "," + v + ")." + std::to_string(i);
      out.add_edge(prev, mid);
      prev = mid;
    }
    out.add_edge(prev, v);
  }
  return out;
}

namespace {

std::size_t cover(std::vector<std::pair<std::size_t, std::size_t>> edges,
                  std::size_t n) {
  if (edges.empty()) return 0;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  auto without = [&](const std::vector<std::size_t>& taken) {
    std::vector<bool> gone(n, false);
    for (std::size_t x : taken) gone[x] = true;
    std::vector<std::pair<std::size_t, std::size_t>> rest;
    for (const auto& e : edges) {
      if (!gone[e.first] && !gone[e.second]) rest.push_back(e);
    }
    return rest;
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (adj[u].size() == 1) return 1 + cover(without({adj[u][0]}), n);
  }
  std::size_t best = 0;
  for (std::size_t u = 1; u < n; ++u) {
    if (adj[u].size() > adj[best].size()) best = u;
  }
  if (adj[best].size() <= 2) {
    // Disjoint cycles: ceil(length / 2) each.
    std::vector<bool> seen(n, false);
    std::size_t total = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s] || adj[s].empty()) continue;
      std::size_t len = 0;
      std::vector<std::size_t> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        ++len;
        for (std::size_t y : adj[x]) {
          if (!seen[y]) {
            seen[y] = true;
            stack.push_back(y);
          }
        }
      }
      total += (len + 1) / 2;
    }
    return total;
  }
  std::size_t take_v = 1 + cover(without({best}), n);
  std::size_t take_nbrs = adj[best].size() + cover(without(adj[best]), n);
  return std::min(take_v, take_nbrs);
}

}  // namespace

std::size_t vertex_cover_bruteforce(const UndirectedGraph& g, std::size_t cap) {
  if (g.vertices().size() > cap) {
    throw ResourceError("vertex cover is capped at " + std::to_string(cap) +
                        " vertices, graph has " +
                        std::to_string(g.vertices().size()));
  }
  std::vector<std::string> names(g.vertices().begin(), g.vertices().end());
  auto index = [&](const std::string& v) {
    return static_cast<std::size_t>(
        std::lower_bound(names.begin(), names.end(), v) - names.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(index(u), index(v));
  return cover(edges, names.size());
}

RoundtripReport hardness_roundtrip(const FiniteLanguage& language,
                                   const PreGadget& gadget,
                                   const UndirectedGraph& g,
                                   const RoundtripOptions& options) {
  GadgetReport validation =
      validate_gadget(gadget, language, options.condense_budget);
  if (!validation.valid) {
    throw InputError("not a gadget for " + language.render() + ": " +
                     validation.reason);
  }
  RoundtripReport report;
  report.odd_path_length = validation.odd_path_length;
  report.edges = g.edges().size();
  report.vertex_cover = vertex_cover_bruteforce(g, options.vertex_cover_cap);
  report.expected =
      report.vertex_cover + report.edges * (report.odd_path_length - 1) / 2;
  GraphDB encoding = encode_graph(orient(g), gadget);
  report.resilience = resilience_exact(encoding.with_unit_multiplicities(),
                                       finite_to_epsnfa(language),
                                       options.exact_fact_cap)
                          .value;
  report.holds = report.resilience == Cost(report.expected);
  return report;
}

}  // namespace rpqres
