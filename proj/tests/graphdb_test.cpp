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

#include <random>

#include "oracles.hpp"
#include "rpqres/gadgets.hpp"
#include "rpqres/graphdb.hpp"
#include "rpqres/solvers.hpp"

namespace rpqres {
namespace {

EpsNFA R(std::string_view s) { return regex_to_epsnfa(parse_regex(s)); }
FiniteLanguage L(std::string_view s) { return FiniteLanguage::parse_inline(s); }

// Fact sets of all walks whose label is in l, by direct walk extension.
std::set<std::set<Fact>> walk_fact_sets(const GraphDB& d,
                                        const FiniteLanguage& l) {
  std::set<std::set<Fact>> out;
  std::vector<Fact> facts = d.fact_list();
  for (const Word& w : l.words()) {
    if (w.empty()) {
      out.insert({});
      continue;
    }
    std::vector<std::vector<Fact>> walks{{}};
    for (Letter a : w) {
      std::vector<std::vector<Fact>> next;
      for (const auto& walk : walks) {
        for (const Fact& f : facts) {
          if (f.label != a) continue;
          if (!walk.empty() && walk.back().head != f.tail) continue;
          next.push_back(walk);
          next.back().push_back(f);
        }
      }
      walks = std::move(next);
    }
    for (const auto& walk : walks) out.insert({walk.begin(), walk.end()});
  }
  return out;
}

TEST(GraphDbTest, ParseAndSerialize) {
  GraphDB d = GraphDB::parse("u a v\n# comment\nv b w 3\n");
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.multiplicity(Fact{"u", Letter("a"), "v"}), 1u);
  EXPECT_EQ(d.multiplicity(Fact{"v", Letter("b"), "w"}), 3u);
  EXPECT_EQ(d.total_multiplicity(), 4u);
  EXPECT_EQ(GraphDB::parse(d.serialize()), d);
  EXPECT_EQ(d.serialize(), "u a v\nv b w 3\n");
  EXPECT_EQ(d.adom(), (std::set<Node>{"u", "v", "w"}));
}

TEST(GraphDbTest, ParseErrors) {
  EXPECT_THROW(GraphDB::parse("u a v\nu a v\n"), ParseError);
  EXPECT_THROW(GraphDB::parse("u a v 0\n"), ParseError);
  EXPECT_THROW(GraphDB::parse("u a v x\n"), ParseError);
  EXPECT_THROW(GraphDB::parse("u a\n"), ParseError);
  try {
    GraphDB::parse("u a v\nu a\n");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(GraphDbTest, Reversal) {
  GraphDB d = GraphDB::parse("u a v 2\nv b w\n");
  GraphDB r = d.reversed();
  EXPECT_EQ(r.multiplicity(Fact{"v", Letter("a"), "u"}), 2u);
  EXPECT_EQ(r.reversed(), d);
}

TEST(SatisfiesTest, Examples) {
  EXPECT_TRUE(satisfies(GraphDB::parse("u a v\nv a w\n"), R("aa")));
  EXPECT_TRUE(satisfies(GraphDB(), R("~|ab")));
  EXPECT_FALSE(satisfies(GraphDB::parse("u a v\n"), R("aa")));
  EXPECT_TRUE(satisfies(GraphDB::parse("u a u\n"), R("aaa")));
  auto walk = find_witness_walk(GraphDB::parse("u a v\nv x v\nv b w\n"),
                                R("ax*b"));
  ASSERT_TRUE(walk);
  EXPECT_EQ(walk->size(), 2u);
}

TEST(SatisfiesTest, Monotone) {
  std::mt19937 rng(31);
  std::vector<Letter> sigma = oracle::letters("ab");
  for (int i = 0; i < 100; ++i) {
    Regex r = oracle::random_regex(rng, sigma, 3);
    EpsNFA a = regex_to_epsnfa(r);
    GraphDB d = oracle::random_db(rng, sigma, 6, 3, 1);
    if (d.empty() || !satisfies(d, a)) continue;
    GraphDB bigger = d;
    bigger.add_fact(Fact{"fresh", sigma[0], "0"});
    EXPECT_TRUE(satisfies(bigger, a)) << print_regex(r);
  }
}

TEST(MatchesTest, Examples) {
  PreGadget g = *builtin_gadget("aa");
  Completion c = completion(g);
  EXPECT_EQ(enumerate_matches(c.db, L("aa")).size(), 5u);

  auto loop = enumerate_matches(GraphDB::parse("u a u\n"), L("aa"));
  ASSERT_EQ(loop.size(), 1u);
  EXPECT_EQ(loop[0].facts.size(), 1u);
  EXPECT_EQ(loop[0].walk.size(), 2u);
  EXPECT_EQ(loop[0].word(), parse_word("aa"));

  EXPECT_TRUE(enumerate_matches(GraphDB::parse("u b v\n"), L("aa")).empty());
  auto eps = enumerate_matches(GraphDB::parse("u b v\n"), L("~"));
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_TRUE(eps[0].facts.empty());
}

TEST(MatchesTest, AgreeWithWalkEnumeration) {
  std::mt19937 rng(32);
  std::vector<Letter> sigma = oracle::letters("ab");
  for (int i = 0; i < 150; ++i) {
    FiniteLanguage l;
    for (const char* w : {"ab", "ba", "aa", "bab"}) {
      if (rng() % 2) l.insert(parse_word(w));
    }
    GraphDB d = oracle::random_db(rng, sigma, 6, 3, 1);
    std::set<std::set<Fact>> got;
    for (const Match& m : enumerate_matches(d, l)) {
      EXPECT_TRUE(l.contains(m.word()));
      got.insert(m.facts);
    }
    EXPECT_EQ(got, walk_fact_sets(d, l));
    EXPECT_EQ(!got.empty(), satisfies(d, finite_to_epsnfa(l)));
  }
}

TEST(MatchesTest, HittingSetEqualsSetResilience) {
  std::mt19937 rng(33);
  std::vector<Letter> sigma = oracle::letters("abc");
  for (int i = 0; i < 100; ++i) {
    FiniteLanguage l = L(i % 2 ? "ab|bc" : "abc|ca");
    GraphDB d = oracle::random_db(rng, sigma, 8, 4, 1);
    MatchHypergraph h = hypergraph_of_matches(d, l);
    EXPECT_EQ(Cost(oracle::min_hitting_set(h)),
              resilience_exact(d, finite_to_epsnfa(l)).value)
        << d.serialize();
  }
}

}  // namespace
}  // namespace rpqres
