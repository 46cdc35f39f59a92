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

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "rpqres/gadgets.hpp"
#include "rpqres/solvers.hpp"

namespace rpqres {
namespace {

FiniteLanguage L(std::string_view s) { return FiniteLanguage::parse_inline(s); }

PreGadget aa_gadget() { return *builtin_gadget("aa"); }

UndirectedGraph triangle() { return UndirectedGraph::parse("1 2\n2 3\n1 3\n"); }

MatchHypergraph random_hypergraph(std::mt19937& rng) {
  MatchHypergraph h;
  std::size_t n = std::uniform_int_distribution<std::size_t>(3, 9)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    h.vertices.push_back(Fact{"v" + std::to_string(i), Letter("a"), "w"});
  }
  std::sort(h.vertices.begin(), h.vertices.end());
  h.alive.assign(n, true);
  std::size_t m = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  std::uniform_int_distribution<std::size_t> size(1, 3), vertex(0, n - 1);
  for (std::size_t k = 0; k < m; ++k) {
    std::set<std::size_t> e;
    for (std::size_t j = size(rng); j > 0; --j) e.insert(vertex(rng));
    h.edges.emplace_back(e.begin(), e.end());
  }
  h.f_in = 0;
  h.f_out = n - 1;
  return h;
}

TEST(PreGadgetTest, BuiltinsAndChecks) {
  PreGadget g = aa_gadget();
  EXPECT_EQ(g.db.size(), 4u);
  EXPECT_EQ(builtin_gadget("aaa")->db, g.db);
  EXPECT_FALSE(builtin_gadget("axb|cxd"));
  EXPECT_NO_THROW(g.check());

  PreGadget bad = g;
  bad.db.add_fact(Fact{"3", Letter("a"), "t_in"});
  EXPECT_THROW(bad.check(), InputError);
  PreGadget same = g;
  same.t_out = same.t_in;
  EXPECT_THROW(same.check(), InputError);
}

TEST(PreGadgetTest, JsonRoundTrip) {
  PreGadget g = aa_gadget();
  GadgetFile f = parse_gadget_file(gadget_to_json(g, 5));
  EXPECT_EQ(f.gadget.db, g.db);
  EXPECT_EQ(f.gadget.t_in, g.t_in);
  EXPECT_EQ(f.gadget.label, g.label);
  EXPECT_EQ(f.expected_odd_length, 5u);
  EXPECT_THROW(parse_gadget_file("{\"facts\": 3}"), InputError);
  EXPECT_THROW(parse_gadget_file("not json"), InputError);
}

TEST(CompletionTest, AddsTwoFacts) {
  Completion c = completion(aa_gadget());
  EXPECT_EQ(c.db.size(), 6u);
  EXPECT_EQ(c.f_in.head, "t_in");
  EXPECT_EQ(c.f_out.head, "t_out");

  PreGadget clash = aa_gadget();
  clash.db.add_fact(Fact{"s_in", Letter("b"), "3"});
  Completion c2 = completion(clash);
  EXPECT_EQ(c2.db.size(), clash.db.size() + 2);
  EXPECT_NE(c2.f_in.tail, "s_in");
}

TEST(CondenseTest, AaGadgetIsAlreadyAPath) {
  GadgetReport r = validate_gadget(aa_gadget(), L("aa"));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.odd_path_length, 5u);
  EXPECT_TRUE(r.trace.empty());
  ASSERT_EQ(r.initial.edges.size(), 5u);
  for (const auto& e : r.initial.edges) EXPECT_EQ(e.size(), 2u);
}

TEST(CondenseTest, AaaGadgetCondenses) {
  GadgetReport r = validate_gadget(aa_gadget(), L("aaa"));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.odd_path_length, 3u);
  EXPECT_FALSE(r.trace.empty());
}

TEST(CondenseTest, InvalidAndRejected) {
  PreGadget lonely{GraphDB::parse("t_in b x\n"), "t_in", "x", Letter("a")};
  lonely.db.add_fact(Fact{"t_out", Letter("b"), "y"});
  lonely.t_out = "t_out";
  GadgetReport r = validate_gadget(lonely, L("aa"));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.outcome, CondenseOutcome::kNotFound);
  EXPECT_THROW(validate_gadget(aa_gadget(), L("a|aa")), InputError);
}

TEST(CondenseTest, Rules) {
  MatchHypergraph h;
  for (int i = 0; i < 3; ++i) {
    h.vertices.push_back(Fact{"v" + std::to_string(i), Letter("a"), "w"});
  }
  h.alive.assign(3, true);
  h.edges = {{0, 1}, {0, 1}, {1, 2}};
  auto log = edge_domination_fixpoint(h);
  EXPECT_EQ(log.size(), 1u);
  EXPECT_EQ(h.edges.size(), 2u);

  // v2 occurs only in {1, 2}, alongside v1.
  EXPECT_TRUE(apply_node_domination(h, 2, 1));
  EXPECT_FALSE(h.alive[2]);
  EXPECT_FALSE(apply_node_domination(h, 0, 0));
}

TEST(CondenseTest, BudgetExhaustionIsInconclusive) {
  std::mt19937 rng(71);
  MatchHypergraph h = random_hypergraph(rng);
  // A tiny budget without a greedy success cannot be reported as invalid.
  CondenseResult r = condense(h, 0);
  EXPECT_NE(r.outcome, CondenseOutcome::kNotFound);
}

TEST(CondenseTest, RulesPreserveMinimumHittingSet) {
  std::mt19937 rng(72);
  std::size_t steps = 0;
  for (int i = 0; i < 200; ++i) {
    MatchHypergraph h = random_hypergraph(rng);
    CondenseResult r = condense(h);
    if (r.outcome != CondenseOutcome::kFound) continue;
    MatchHypergraph g = h;
    std::size_t before = oracle::min_hitting_set(g);
    for (const RuleApplication& rule : r.trace) {
      ASSERT_TRUE(apply_rule(g, rule));
      EXPECT_EQ(oracle::min_hitting_set(g), before);
      ++steps;
    }
    EXPECT_EQ(odd_path_length(g), odd_path_length(r.result));
  }
  EXPECT_GT(steps, 0u);
}

TEST(CondenseTest, SearchAgreesWithExhaustiveSearch) {
  // Exhaustive: every node-domination sequence, with edge domination to a
  // fixpoint after each step.
  std::function<bool(MatchHypergraph)> reachable = [&](MatchHypergraph h) {
    edge_domination_fixpoint(h);
    if (odd_path_length(h)) return true;
    for (std::size_t v = 0; v < h.vertices.size(); ++v) {
      for (std::size_t w = 0; w < h.vertices.size(); ++w) {
        MatchHypergraph next = h;
        if (apply_node_domination(next, v, w) && reachable(next)) return true;
      }
    }
    return false;
  };
  std::mt19937 rng(73);
  for (int i = 0; i < 150; ++i) {
    MatchHypergraph h = random_hypergraph(rng);
    if (h.vertices.size() > 6) continue;
    bool found = condense(h).outcome == CondenseOutcome::kFound;
    EXPECT_EQ(found, reachable(h));
  }
}

TEST(EncodeTest, Triangle) {
  GraphDB enc = encode_graph(orient(triangle()), aa_gadget());
  EXPECT_EQ(enc.size(), 15u);
  EXPECT_TRUE(enc.contains(Fact{"s.1", Letter("a"), "t.1"}));
  EXPECT_TRUE(enc.contains(Fact{"t.1", Letter("a"), "e1.1"}));
  EXPECT_TRUE(enc.contains(Fact{"t.2", Letter("a"), "e1.2"}));
  EXPECT_EQ(resilience_exact(enc, finite_to_epsnfa(L("aa"))).value, Cost(8));
  EXPECT_TRUE(encode_graph(DirectedGraph(), aa_gadget()).empty());
}

TEST(EncodeTest, SingleEdgeIsTheCompletion) {
  DirectedGraph g = DirectedGraph::parse("u -> v\n");
  GraphDB enc = encode_graph(g, aa_gadget());
  Completion c = completion(aa_gadget());
  EXPECT_EQ(enc.size(), c.db.size());
  EXPECT_EQ(enumerate_matches(enc, L("aa")).size(),
            enumerate_matches(c.db, L("aa")).size());
}

TEST(EncodeTest, MatchesStayInsideOneCopy) {
  std::mt19937 rng(74);
  for (int i = 0; i < 20; ++i) {
    UndirectedGraph g = oracle::random_graph(rng, 5, 6);
    GraphDB enc = encode_graph(orient(g), aa_gadget());
    for (const Match& m : enumerate_matches(enc, L("aa"))) {
      std::set<std::string> copies;
      for (const Fact& f : m.facts) {
        for (const Node& x : {f.tail, f.head}) {
          if (x[0] == 'e') copies.insert(x.substr(0, x.find('.')));
        }
      }
      EXPECT_LE(copies.size(), 1u);
    }
  }
}

TEST(GraphTest, ParseOrientSubdivide) {
  UndirectedGraph g = UndirectedGraph::parse("b a\nc\n# comment\n");
  EXPECT_EQ(g.vertices().size(), 3u);
  EXPECT_EQ(*g.edges().begin(), std::make_pair(std::string("a"), std::string("b")));
  EXPECT_THROW(UndirectedGraph::parse("a a\n"), ParseError);
  EXPECT_THROW(UndirectedGraph::parse("a b c\n"), ParseError);
  EXPECT_THROW(DirectedGraph::parse("a b\n"), ParseError);
  DirectedGraph d = orient(g);
  EXPECT_EQ(d.edges().begin()->first, "a");

  UndirectedGraph t5 = subdivide(triangle(), 5);
  EXPECT_EQ(t5.vertices().size(), 15u);
  EXPECT_EQ(t5.edges().size(), 15u);
  EXPECT_EQ(vertex_cover_bruteforce(t5), 8u);
  EXPECT_EQ(subdivide(triangle(), 1).edges(), triangle().edges());
  UndirectedGraph p3 = subdivide(UndirectedGraph::parse("u v\n"), 3);
  EXPECT_EQ(p3.edges().size(), 3u);
  EXPECT_EQ(vertex_cover_bruteforce(p3), 2u);
  EXPECT_THROW(subdivide(triangle(), 4), InputError);
  EXPECT_THROW(subdivide(triangle(), 0), InputError);
  EXPECT_THROW(vertex_cover_bruteforce(subdivide(triangle(), 9)), ResourceError);
}

TEST(GraphTest, VertexCoverAndSubdivisionFormula) {
  std::mt19937 rng(75);
  for (int i = 0; i < 30; ++i) {
    UndirectedGraph g = oracle::random_graph(rng, 7, 10);
    std::size_t vc = oracle::vertex_cover(g);
    EXPECT_EQ(vertex_cover_bruteforce(g), vc);
    for (std::size_t ell : {3u, 5u}) {
      UndirectedGraph s = subdivide(g, ell);
      EXPECT_EQ(vertex_cover_bruteforce(s, 64),
                vc + g.edges().size() * (ell - 1) / 2);
    }
  }
}

TEST(RoundtripTest, Examples) {
  FiniteLanguage aa = L("aa");
  RoundtripReport tri = hardness_roundtrip(aa, aa_gadget(), triangle());
  EXPECT_TRUE(tri.holds);
  EXPECT_EQ(tri.resilience, Cost(8));
  EXPECT_EQ(tri.vertex_cover, 2u);
  RoundtripReport edge =
      hardness_roundtrip(aa, aa_gadget(), UndirectedGraph::parse("u v\n"));
  EXPECT_EQ(edge.resilience, Cost(3));
  EXPECT_TRUE(edge.holds);
  RoundtripReport empty = hardness_roundtrip(aa, aa_gadget(), UndirectedGraph());
  EXPECT_EQ(empty.resilience, Cost(0));
  EXPECT_TRUE(empty.holds);
}

}  // namespace
}  // namespace rpqres
