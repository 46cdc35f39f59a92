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

// Test-only brute-force oracles and random generators. Nothing here goes
// through the flow or automata code paths it is used to check, except the
// satisfaction test of the resilience oracle.

#ifndef RPQRES_TESTS_ORACLES_HPP_
#define RPQRES_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rpqres/automata.hpp"
#include "rpqres/flow.hpp"
#include "rpqres/gadgets.hpp"
#include "rpqres/graphdb.hpp"
#include "rpqres/lang.hpp"

namespace rpqres::oracle {

// Positions reachable after matching r against w starting at `from`.
inline std::set<std::size_t> regex_ends(const Regex& r, const Word& w,
                                        std::size_t from) {
  switch (r.kind) {
    case Regex::Kind::kEmpty:
      return {};
    case Regex::Kind::kEpsilon:
      return {from};
    case Regex::Kind::kLetter:
      if (from < w.size() && w[from] == *r.letter) return {from + 1};
      return {};
    case Regex::Kind::kConcat: {
      std::set<std::size_t> cur{from};
      for (const Regex& c : r.children) {
        std::set<std::size_t> next;
        for (std::size_t p : cur) {
          auto e = regex_ends(c, w, p);
          next.insert(e.begin(), e.end());
        }
        cur = std::move(next);
      }
      return cur;
    }
    case Regex::Kind::kUnion: {
      std::set<std::size_t> out;
      for (const Regex& c : r.children) {
        auto e = regex_ends(c, w, from);
        out.insert(e.begin(), e.end());
      }
      return out;
    }
    case Regex::Kind::kStar: {
      std::set<std::size_t> out{from};
      std::vector<std::size_t> todo{from};
      while (!todo.empty()) {
        std::size_t p = todo.back();
        todo.pop_back();
        for (std::size_t q : regex_ends(r.children[0], w, p)) {
          if (out.insert(q).second) todo.push_back(q);
        }
      }
      return out;
    }
  }
  return {};
}

inline bool regex_matches(const Regex& r, const Word& w) {
  return regex_ends(r, w, 0).count(w.size()) > 0;
}

inline std::vector<Word> all_words(const std::vector<Letter>& sigma,
                                   std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Letter a : sigma) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

// Minimum total multiplicity of a fact subset whose removal falsifies Q_L,
// by enumeration of all subsets. Cost::infinite() when ε ∈ L.
inline Cost resilience(const GraphDB& d, const EpsNFA& a) {
  std::vector<Fact> facts = d.fact_list();
  if (satisfies(GraphDB(), a)) return Cost::infinite();
  std::uint64_t best = d.total_multiplicity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << facts.size());
       ++mask) {
    std::set<Fact> removed;
    std::uint64_t cost = 0;
    for (std::size_t i = 0; i < facts.size(); ++i) {
      if (mask >> i & 1) {
        removed.insert(facts[i]);
        cost += d.multiplicity(facts[i]);
      }
    }
    if (cost < best && !satisfies(d.without(removed), a)) best = cost;
  }
  return Cost(best);
}

inline bool st_connected(const FlowNetwork& n, std::uint64_t removed_mask) {
  std::vector<bool> seen(n.num_vertices(), false);
  std::vector<std::size_t> stack{n.source()};
  seen[n.source()] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < n.edges().size(); ++i) {
      const FlowEdge& e = n.edges()[i];
      if (e.from != v || (removed_mask >> i & 1) || seen[e.to]) continue;
      if (e.capacity == Cost(0)) continue;
      seen[e.to] = true;
      stack.push_back(e.to);
    }
  }
  return seen[n.target()];
}

inline Cost min_cut(const FlowNetwork& n) {
  Cost best = Cost::infinite();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n.edges().size());
       ++mask) {
    Cost cost(0);
    for (std::size_t i = 0; i < n.edges().size(); ++i) {
      if (mask >> i & 1) cost += n.edges()[i].capacity;
    }
    if (cost < best && !st_connected(n, mask)) best = cost;
  }
  return best;
}

// Minimum hitting set of the alive part of h.
inline std::size_t min_hitting_set(const MatchHypergraph& h) {
  std::vector<std::size_t> alive;
  for (std::size_t v = 0; v < h.vertices.size(); ++v) {
    if (h.alive[v]) alive.push_back(v);
  }
  std::size_t best = alive.size() + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << alive.size());
       ++mask) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    std::set<std::size_t> chosen;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (mask >> i & 1) chosen.insert(alive[i]);
    }
    bool hits = std::all_of(h.edges.begin(), h.edges.end(), [&](const auto& e) {
      return std::any_of(e.begin(), e.end(),
                         [&](std::size_t v) { return chosen.count(v) > 0; });
    });
    if (hits) best = size;
  }
  return best;
}

inline std::size_t vertex_cover(const UndirectedGraph& g) {
  std::vector<std::string> names(g.vertices().begin(), g.vertices().end());
  std::size_t best = names.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << names.size());
       ++mask) {
    std::set<std::string> chosen;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (mask >> i & 1) chosen.insert(names[i]);
    }
    if (chosen.size() >= best) continue;
    bool covers = std::all_of(
        g.edges().begin(), g.edges().end(), [&](const auto& e) {
          return chosen.count(e.first) > 0 || chosen.count(e.second) > 0;
        });
    if (covers) best = chosen.size();
  }
  return best;
}

// Random generators; all deterministic given the engine.

inline std::vector<Letter> letters(std::string_view names) {
  std::vector<Letter> out;
  for (char c : names) out.emplace_back(std::string(1, c));
  return out;
}

inline GraphDB random_db(std::mt19937& rng, const std::vector<Letter>& sigma,
                         std::size_t max_facts, std::size_t num_nodes,
                         std::uint64_t max_mult) {
  GraphDB d;
  std::uniform_int_distribution<std::size_t> count(0, max_facts);
  std::uniform_int_distribution<std::size_t> node(0, num_nodes - 1);
  std::uniform_int_distribution<std::size_t> letter(0, sigma.size() - 1);
  std::uniform_int_distribution<std::uint64_t> mult(1, max_mult);
  std::size_t want = count(rng);
  for (std::size_t tries = 0; d.size() < want && tries < 10 * max_facts + 10;
       ++tries) {
    Fact f{std::to_string(node(rng)), sigma[letter(rng)],
           std::to_string(node(rng))};
    if (!d.contains(f)) d.add_fact(f, mult(rng));
  }
  return d;
}

inline Regex random_regex(std::mt19937& rng, const std::vector<Letter>& sigma,
                          std::size_t depth) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 5);
  std::uniform_int_distribution<std::size_t> letter(0, sigma.size() - 1);
  switch (pick(rng)) {
    case 0:
    case 1:
      return std::uniform_int_distribution<int>(0, 9)(rng) == 0
                 ? Regex::epsilon()
                 : Regex::of(sigma[letter(rng)]);
    case 2:
    case 3:
      return Regex::concat({random_regex(rng, sigma, depth - 1),
                            random_regex(rng, sigma, depth - 1)});
    case 4:
      return Regex::alt({random_regex(rng, sigma, depth - 1),
                         random_regex(rng, sigma, depth - 1)});
    default:
      return Regex::star(random_regex(rng, sigma, depth - 1));
  }
}

inline UndirectedGraph random_graph(std::mt19937& rng, std::size_t max_vertices,
                                    std::size_t max_edges) {
  UndirectedGraph g;
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_vertices)(rng);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  if (n < 2) return g;
  std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_edges)(rng);
  std::uniform_int_distribution<std::size_t> vertex(0, n - 1);
  for (std::size_t tries = 0; g.edges().size() < m && tries < 50; ++tries) {
    std::size_t u = vertex(rng), v = vertex(rng);
    if (u != v) g.add_edge("v" + std::to_string(u), "v" + std::to_string(v));
  }
  return g;
}

}  // namespace rpqres::oracle

#endif  // RPQRES_TESTS_ORACLES_HPP_
