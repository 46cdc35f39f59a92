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
#include "rpqres/solvers.hpp"

namespace rpqres {
namespace {

EpsNFA R(std::string_view s) { return regex_to_epsnfa(parse_regex(s)); }
FiniteLanguage L(std::string_view s) { return FiniteLanguage::parse_inline(s); }
GraphDB D(std::string_view s) { return GraphDB::parse(s); }

std::vector<Letter> sigma_of(const EpsNFA& a) {
  return {a.alphabet().begin(), a.alphabet().end()};
}

// The contingency falsifies the query and its multiplicity is the value.
void expect_valid_contingency(const GraphDB& d, const EpsNFA& a,
                              const ResilienceAnswer& r) {
  if (r.value.is_infinite()) return;
  std::set<Fact> removed(r.contingency.begin(), r.contingency.end());
  EXPECT_FALSE(satisfies(d.without(removed), a)) << d.serialize();
  EXPECT_EQ(Cost(d.total_multiplicity(r.contingency)), r.value)
      << d.serialize();
}

TEST(ExactTest, Examples) {
  EXPECT_EQ(resilience_exact(D("u b v\n"), R("aa")).value, Cost(0));
  EXPECT_TRUE(resilience_exact(D("u a v\n"), R("~|aa")).value.is_infinite());
  ResilienceAnswer r = resilience_exact(D("u a v\nv a w\nw a x\n"), R("aa"));
  EXPECT_EQ(r.value, Cost(1));
  EXPECT_EQ(r.contingency, (std::vector<Fact>{Fact{"v", Letter("a"), "w"}}));
  EXPECT_THROW(resilience_exact(D("u a v\nv a w\n"), R("aa"), 1), ResourceError);
}

TEST(ExactTest, MatchesSubsetOracle) {
  std::mt19937 rng(61);
  for (const char* text : {"aa", "ab|bc", "ax*b", "a(b|c)*a", "abc|be", "~|ab"}) {
    EpsNFA a = R(text);
    for (int i = 0; i < 60; ++i) {
      GraphDB d = oracle::random_db(rng, sigma_of(a), 9, 4, 3);
      ResilienceAnswer r = resilience_exact(d, a);
      ASSERT_EQ(r.value, oracle::resilience(d, a)) << text << "\n" << d.serialize();
      expect_valid_contingency(d, a, r);
    }
  }
}

TEST(LocalTest, Examples) {
  EXPECT_EQ(resilience_local(D("u c v\n"), R("ax*b")).value, Cost(0));
  ResilienceAnswer r =
      resilience_local(D("s a 1 5\n1 x 2 2\n2 b t 9\n1 x 3 4\n3 b t 1\n"),
                       R("ax*b"));
  EXPECT_EQ(r.value, Cost(3));
  EXPECT_EQ(r.method, Method::kLocal);
  EXPECT_THROW(resilience_local(D("u a v\n"), R("aa")), RefusalError);
  EXPECT_TRUE(resilience_local(D("u a v\n"), R("~|a")).value.is_infinite());
}

TEST(LocalTest, ContingencyIsValid) {
  std::mt19937 rng(62);
  for (const char* text : {"ax*b", "ab|ad|cd", "a|b", "a(b|c)*d", "ab*"}) {
    EpsNFA a = R(text);
    for (int i = 0; i < 80; ++i) {
      GraphDB d = oracle::random_db(rng, sigma_of(a), 8, 4, 5);
      ResilienceAnswer r = resilience_local(d, a);
      ASSERT_EQ(r.value, oracle::resilience(d, a)) << text << "\n" << d.serialize();
      expect_valid_contingency(d, a, r);
    }
  }
}

TEST(ExtractWordListTest, Examples) {
  EXPECT_EQ(extract_word_list(R("ab|bc")), L("ab|bc"));
  EXPECT_EQ(extract_word_list(R("axyb|bztc|cd|dea")), L("axyb|bztc|cd|dea"));
  EXPECT_EQ(extract_word_list(R("~|ab")), L("~|ab"));
  EXPECT_EQ(extract_word_list(R("a|b(c|d)")), L("a|bc|bd"));
  try {
    extract_word_list(R("abc|xby"));
    FAIL() << "expected an input error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
  EXPECT_THROW(extract_word_list(R("ax*b")), InputError);
}

TEST(BclTest, Examples) {
  ResilienceAnswer r = resilience_bcl(D("u a v\nv b w\nw c t\n"), L("ab|bc"));
  EXPECT_EQ(r.value, Cost(1));
  EXPECT_EQ(r.contingency, (std::vector<Fact>{Fact{"v", Letter("b"), "w"}}));
  EXPECT_EQ(resilience_bcl(D("u c v\n"), L("ab|bc")).value, Cost(0));
  EXPECT_THROW(resilience_bcl(D("u a v\n"), L("ab|bc|ca")), RefusalError);
  EXPECT_EQ(resilience_bcl(D("u a v 3\nu b v 2\n"), L("a|b")).value, Cost(5));
  EXPECT_EQ(resilience_bcl(D("u a v\nv b w\nw c t\n"), R("ab|bc")).value,
            Cost(1));
}

TEST(BclTest, ContingencyIsValid) {
  std::mt19937 rng(63);
  for (const char* text : {"ab|bc", "axyb|bztc|cd|dea", "ab|cd|c", "abc|cd"}) {
    FiniteLanguage l = L(text);
    EpsNFA a = finite_to_epsnfa(l);
    for (int i = 0; i < 60; ++i) {
      GraphDB d = oracle::random_db(rng, sigma_of(a), 9, 4, 4);
      ResilienceAnswer r = resilience_bcl(d, l);
      ASSERT_EQ(r.value, oracle::resilience(d, a)) << text << "\n" << d.serialize();
      expect_valid_contingency(d, a, r);
    }
  }
}

TEST(SubmodTest, Examples) {
  EXPECT_EQ(resilience_submod(D("u a v\nw c x\n"), L("abc|be")).value, Cost(0));
  GraphDB d = D("u a v\nv b w\nw c x\nv2 b w2\nw2 e y\n");
  ResilienceAnswer r = resilience_submod(d, L("abc|be"));
  EXPECT_EQ(r.value, Cost(2));
  EXPECT_EQ(r.value, oracle::resilience(d, R("abc|be")));
  EXPECT_THROW(resilience_submod(d, L("abc|bef")), RefusalError);
}

TEST(SubmodTest, ContingencyIsValidIncludingMirror) {
  std::mt19937 rng(64);
  for (const char* text : {"abc|be", "abcd|ce", "cba|eb", "ab|ac"}) {
    FiniteLanguage l = L(text);
    EpsNFA a = finite_to_epsnfa(l);
    for (int i = 0; i < 60; ++i) {
      GraphDB d = oracle::random_db(rng, sigma_of(a), 9, 4, 4);
      ResilienceAnswer r = resilience_submod(d, l);
      ASSERT_EQ(r.value, oracle::resilience(d, a)) << text << "\n" << d.serialize();
      expect_valid_contingency(d, a, r);
    }
  }
}

TEST(SubmodTest, ChainResilienceWithoutTails) {
  std::mt19937 rng(65);
  Word chain = parse_word("abc");
  EpsNFA a = word_automaton(chain);
  for (int i = 0; i < 100; ++i) {
    GraphDB d = oracle::random_db(rng, oracle::letters("abc"), 8, 4, 3);
    std::set<Node> removed;
    for (const Node& v : d.adom()) {
      if (rng() % 2) removed.insert(v);
    }
    std::set<Fact> gone;
    for (const auto& [f, m] : d.facts()) {
      if (f.label == Letter("c") && removed.count(f.tail)) gone.insert(f);
    }
    EXPECT_EQ(chain_resilience_without_tails(d, chain, removed),
              oracle::resilience(d.without(gone), a));
  }
}

TEST(DispatchTest, MethodSelection) {
  GraphDB d = D("u a v\nv x v\nv b w\nw c t\n");
  EXPECT_EQ(resilience(d, LanguageSpec::parse("ax*b"), Semantics::kSet).method,
            Method::kLocal);
  EXPECT_EQ(resilience(d, LanguageSpec::parse("ab|bc"), Semantics::kSet).method,
            Method::kBcl);
  EXPECT_EQ(resilience(d, LanguageSpec::parse("abc|be"), Semantics::kSet).method,
            Method::kSubmod);
  EXPECT_EQ(resilience(d, LanguageSpec::parse("abcd|be"), Semantics::kSet).method,
            Method::kExact);
  EXPECT_THROW(resilience(d, LanguageSpec::parse("aa"), Semantics::kSet,
                          SolverChoice::kLocal),
               RefusalError);
}

TEST(DispatchTest, ExactFallbackHitsCap) {
  GraphDB d;
  for (int i = 0; i < 30; ++i) {
    d.add_fact(Fact{std::to_string(i), Letter("a"), std::to_string(i + 1)});
  }
  EXPECT_THROW(resilience(d, LanguageSpec::parse("aa"), Semantics::kSet),
               ResourceError);
}

TEST(DispatchTest, Laws) {
  std::mt19937 rng(66);
  for (const char* text : {"ax*b", "ab|bc", "abc|be", "aa", "abcd|be", "~|ab"}) {
    LanguageSpec spec = LanguageSpec::parse(text);
    const EpsNFA& a = spec.automaton();
    FiniteLanguage mirrored;
    if (spec.is_finite()) mirrored = mirror_finite(*spec.finite());
    for (int i = 0; i < 40; ++i) {
      GraphDB d = oracle::random_db(rng, sigma_of(a), 8, 4, 4);
      Cost bag = resilience(d, spec, Semantics::kBag).value;
      Cost set = resilience(d, spec, Semantics::kSet).value;
      EXPECT_EQ(set, resilience(d.with_unit_multiplicities(), spec,
                                Semantics::kBag)
                         .value);
      EXPECT_EQ(bag == Cost(0), !satisfies(d, a)) << text;
      EXPECT_EQ(bag.is_infinite(), accepts(a, Word{})) << text;
      if (spec.is_finite()) {
        EXPECT_EQ(bag, resilience(d.reversed(),
                                  LanguageSpec::from_finite(mirrored),
                                  Semantics::kBag)
                           .value)
            << text << "\n" << d.serialize();
      }
      if (!d.empty()) {
        GraphDB smaller = d;
        smaller.remove_fact(d.fact_list().front());
        EXPECT_LE(resilience(smaller, spec, Semantics::kBag).value, bag);
      }
    }
  }
}

}  // namespace
}  // namespace rpqres
