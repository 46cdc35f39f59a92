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

// Hardness gadgets: pre-gadgets, hypergraphs of matches and their
// condensation, graph encodings and the vertex-cover reduction check.

#ifndef RPQRES_GADGETS_HPP_
#define RPQRES_GADGETS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rpqres/graphdb.hpp"
#include "rpqres/lang.hpp"

namespace rpqres {

struct PreGadget {
  GraphDB db;
  Node t_in;
  Node t_out;
  Letter label;

  // Throws InputError unless t_in != t_out, both occur in the database and
  // neither is the head of a fact.
  void check() const;
};

struct GadgetFile {
  PreGadget gadget;
  std::optional<std::size_t> expected_odd_length;
};

// {"facts": [[tail, label, head], ...], "t_in": .., "t_out": ..,
//  "label": .., "expected_odd_length": n}
GadgetFile parse_gadget_file(std::string_view json_text);
std::string gadget_to_json(const PreGadget& g,
                           std::optional<std::size_t> expected_odd_length = {});

// Built-in pre-gadgets, keyed by language ("aa", "aaa").
std::optional<PreGadget> builtin_gadget(std::string_view language);
std::vector<std::string> builtin_gadget_names();

struct Completion {
  GraphDB db;
  Fact f_in;
  Fact f_out;
};

// Adds s_in -a-> t_in and s_out -a-> t_out with fresh s_in, s_out.
Completion completion(const PreGadget& g);

// Facts as vertices; hyperedges are sorted vertex-index lists and may
// repeat. Removed vertices stay in `vertices` with alive = false.
struct MatchHypergraph {
  std::vector<Fact> vertices;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> edges;
  std::optional<std::size_t> f_in;
  std::optional<std::size_t> f_out;

  std::size_t index_of(const Fact& f) const;
  std::size_t num_alive() const;
  // Indices of the edges containing v.
  std::vector<std::size_t> incident(std::size_t v) const;
  bool is_protected(std::size_t v) const { return v == f_in || v == f_out; }
};

// Vertices are all facts of `d`.
MatchHypergraph hypergraph_of_matches(const GraphDB& d,
                                      const FiniteLanguage& language);
MatchHypergraph hypergraph_of_completion(const Completion& c,
                                         const FiniteLanguage& language);

struct RuleApplication {
  enum class Kind { kEdgeDomination, kNodeDomination };
  Kind kind;
  // Edge domination: `removed_edge` ⊇ `dominating_edge` is dropped.
  std::vector<std::size_t> removed_edge;
  std::vector<std::size_t> dominating_edge;
  // Node domination: E(removed_vertex) ⊆ E(dominating_vertex).
  std::size_t removed_vertex = 0;
  std::size_t dominating_vertex = 0;

  std::string describe(const MatchHypergraph& h) const;
};

// Both return false (leaving h untouched) when the rule does not apply.
bool apply_edge_domination(MatchHypergraph& h,
                           const std::vector<std::size_t>& removed_edge,
                           const std::vector<std::size_t>& dominating_edge);
bool apply_node_domination(MatchHypergraph& h, std::size_t removed,
                           std::size_t dominator);
// Applies edge domination until no edge contains another; returns the log.
std::vector<RuleApplication> edge_domination_fixpoint(MatchHypergraph& h);
bool apply_rule(MatchHypergraph& h, const RuleApplication& rule);

// Length (edge count) of the odd path from f_in to f_out formed by the
// alive vertices and the edges, if that is what h is.
std::optional<std::size_t> odd_path_length(const MatchHypergraph& h);

enum class CondenseOutcome { kFound, kNotFound, kInconclusive };

struct CondenseResult {
  CondenseOutcome outcome = CondenseOutcome::kNotFound;
  MatchHypergraph result;  // the odd path when found
  std::vector<RuleApplication> trace;
  std::size_t explored = 0;
};

inline constexpr std::size_t kDefaultCondenseBudget = 200000;

// Edge domination to fixpoint, then a memoized search over node-domination
// sequences, never removing f_in or f_out. Beyond `budget` explored states
// a greedy pass is tried and failure is reported as inconclusive.
CondenseResult condense(const MatchHypergraph& h,
                        std::size_t budget = kDefaultCondenseBudget);

struct GadgetReport {
  CondenseOutcome outcome = CondenseOutcome::kNotFound;
  bool valid = false;
  std::size_t odd_path_length = 0;
  MatchHypergraph initial;
  std::vector<RuleApplication> trace;
  std::string reason;
};

// Throws InputError when `language` is not reduced.
GadgetReport validate_gadget(const PreGadget& g, const FiniteLanguage& language,
                             std::size_t budget = kDefaultCondenseBudget);

class UndirectedGraph {
 public:
  void add_vertex(const std::string& v) { vertices_.insert(v); }
  // Self-loops are rejected.
  void add_edge(const std::string& u, const std::string& v);

  const std::set<std::string>& vertices() const { return vertices_; }
  // Each edge stored once with first < second.
  const std::set<std::pair<std::string, std::string>>& edges() const {
    return edges_;
  }

  // `u v` per line; a single token declares an isolated vertex.
  static UndirectedGraph parse(std::string_view text);

 private:
  std::set<std::string> vertices_;
  std::set<std::pair<std::string, std::string>> edges_;
};

class DirectedGraph {
 public:
  void add_vertex(const std::string& v) { vertices_.insert(v); }
  void add_edge(const std::string& u, const std::string& v);

  const std::set<std::string>& vertices() const { return vertices_; }
  const std::set<std::pair<std::string, std::string>>& edges() const {
    return edges_;
  }

  // `u -> v` per line; a single token declares an isolated vertex.
  static DirectedGraph parse(std::string_view text);

 private:
  std::set<std::string> vertices_;
  std::set<std::pair<std::string, std::string>> edges_;
};

// The lexicographically smaller endpoint becomes the tail.
DirectedGraph orient(const UndirectedGraph& g);

// Vertex u gives s.u -a-> t.u; the k-th edge (u, v) gives a copy of the
// pre-gadget with t_in as t.u, t_out as t.v and other elements renamed
// e<k>.<name>.
GraphDB encode_graph(const DirectedGraph& g, const PreGadget& gadget);

// Replaces every edge by a path of `ell` edges. Throws InputError when ell
// is even or zero.
UndirectedGraph subdivide(const UndirectedGraph& g, std::size_t ell);

inline constexpr std::size_t kDefaultVertexCoverCap = 20;

// Exact minimum vertex cover. Throws ResourceError beyond `cap` vertices.
std::size_t vertex_cover_bruteforce(const UndirectedGraph& g,
                                    std::size_t cap = kDefaultVertexCoverCap);

struct RoundtripReport {
  bool holds = false;
  Cost resilience;
  std::size_t vertex_cover = 0;
  std::size_t edges = 0;
  std::size_t odd_path_length = 0;
  std::size_t expected = 0;  // vertex_cover + edges * (ell - 1) / 2
};

struct RoundtripOptions {
  std::size_t exact_fact_cap = 64;
  std::size_t vertex_cover_cap = kDefaultVertexCoverCap;
  std::size_t condense_budget = kDefaultCondenseBudget;
};

// Encodes an orientation of g and compares the set resilience of the
// encoding with vc(g) + m(ℓ-1)/2. Throws InputError when the gadget is not
// valid for `language`.
RoundtripReport hardness_roundtrip(const FiniteLanguage& language,
                                   const PreGadget& gadget,
                                   const UndirectedGraph& g,
                                   const RoundtripOptions& options = {});

}  // namespace rpqres

#endif  // RPQRES_GADGETS_HPP_
