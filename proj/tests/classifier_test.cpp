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
#include "rpqres/classifier.hpp"

namespace rpqres {
namespace {

FiniteLanguage L(std::string_view s) { return FiniteLanguage::parse_inline(s); }
Word W(std::string_view s) { return parse_word(s); }

Verdict C(std::string_view s) { return classify(LanguageSpec::parse(s)); }

FiniteLanguage rename(const FiniteLanguage& l, const std::map<Letter, Letter>& f) {
  FiniteLanguage out;
  for (const Word& w : l.words()) {
    Word v;
    for (Letter a : w) v.push_back(f.at(a));
    out.insert(v);
  }
  return out;
}

TEST(FourLeggedTest, Examples) {
  auto legs = is_four_legged_finite(L("axb|cxd"));
  ASSERT_TRUE(legs);
  EXPECT_EQ(legs->x, Letter("x"));
  EXPECT_EQ(legs->alpha, W("a"));
  EXPECT_EQ(legs->delta, W("d"));
  EXPECT_FALSE(is_four_legged_finite(L("aa")));
  EXPECT_FALSE(is_four_legged_finite(L("ab|bc")));
  EXPECT_THROW(is_four_legged_finite(L("a|ab")), InputError);
}

TEST(FourLeggedTest, WitnessIsCartesianCounterexample) {
  std::mt19937 rng(51);
  std::vector<Letter> sigma = oracle::letters("abcx");
  std::uniform_int_distribution<std::size_t> count(1, 4), len(1, 4), pick(0, 3);
  for (int i = 0; i < 300; ++i) {
    FiniteLanguage l;
    for (std::size_t k = count(rng); k > 0; --k) {
      Word w;
      for (std::size_t j = len(rng); j > 0; --j) w.push_back(sigma[pick(rng)]);
      l.insert(w);
    }
    l = reduce_finite(l);
    auto legs = is_four_legged_finite(l);
    if (!legs) continue;
    EXPECT_FALSE(legs->alpha.empty() || legs->beta.empty() ||
                 legs->gamma.empty() || legs->delta.empty());
    Word x{legs->x};
    EXPECT_TRUE(l.contains(concat(concat(legs->alpha, x), legs->beta)));
    EXPECT_TRUE(l.contains(concat(concat(legs->gamma, x), legs->delta)));
    EXPECT_FALSE(l.contains(concat(concat(legs->alpha, x), legs->delta)));
    EXPECT_FALSE(is_letter_cartesian_finite(l));
  }
}

TEST(ChainTest, Examples) {
  EXPECT_TRUE(is_chain_language(L("ab|bc")));
  EXPECT_TRUE(is_chain_language(L("ab|bc|ca")));
  EXPECT_TRUE(is_chain_language(L("axyb|bztc|cd|dea")));
  ChainReport aa = check_chain_language(L("aa"));
  EXPECT_FALSE(aa.is_chain);
  ASSERT_TRUE(aa.letter);
  EXPECT_EQ(*aa.letter, Letter("a"));
  ChainReport inner = check_chain_language(L("abc|xby"));
  EXPECT_FALSE(inner.is_chain);
  EXPECT_EQ(*inner.letter, Letter("b"));
}

TEST(BclTest, EndpointGraphAndBipartiteness) {
  EndpointGraph g = endpoint_graph(L("ab|bc"));
  EXPECT_EQ(g.edges.size(), 2u);
  EXPECT_TRUE(g.edges.count({Letter("a"), Letter("b")}));
  EXPECT_TRUE(is_bcl(L("ab|bc")));
  BclReport tri = check_bcl(L("ab|bc|ca"));
  EXPECT_FALSE(tri.is_bcl);
  EXPECT_EQ(tri.odd_cycle.size(), 3u);
  EXPECT_TRUE(is_bcl(L("axyb|bztc|cd|dea")));
}

TEST(BclTest, SubsetsOfBclAreBcl) {
  FiniteLanguage l = L("axyb|bztc|cd|dea");
  std::vector<Word> words(l.words().begin(), l.words().end());
  for (std::size_t mask = 0; mask < (std::size_t{1} << words.size()); ++mask) {
    FiniteLanguage sub;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (mask >> i & 1) sub.insert(words[i]);
    }
    EXPECT_TRUE(is_bcl(sub)) << sub.render();
  }
}

TEST(SubmodTest, Pattern) {
  auto abc = matches_submod_pattern(L("abc|be"));
  ASSERT_TRUE(abc);
  EXPECT_EQ(abc->n, 3u);
  EXPECT_EQ(abc->letters, (std::vector<Letter>{Letter("a"), Letter("b"),
                                               Letter("c"), Letter("e")}));
  EXPECT_FALSE(abc->mirrored);
  auto abcd = matches_submod_pattern(L("abcd|ce"));
  ASSERT_TRUE(abcd);
  EXPECT_EQ(abcd->n, 4u);
  EXPECT_FALSE(matches_submod_pattern(L("abc|bef")));
  auto mirrored = matches_submod_pattern(L("cba|eb"));
  ASSERT_TRUE(mirrored);
  EXPECT_TRUE(mirrored->mirrored);
}

TEST(CatalogTest, InvariantUnderRenamingAndMirror) {
  std::vector<Letter> pool = oracle::letters("pqrstuvw");
  std::mt19937 rng(52);
  for (const FiniteLanguage& entry : known_hard_catalog()) {
    Alphabet sigma = entry.alphabet();
    std::vector<Letter> targets = pool;
    std::shuffle(targets.begin(), targets.end(), rng);
    std::map<Letter, Letter> f;
    std::size_t i = 0;
    for (Letter a : sigma) f.emplace(a, targets[i++]);
    FiniteLanguage renamed = rename(entry, f);
    EXPECT_TRUE(match_known_hard(renamed)) << renamed.render();
    EXPECT_TRUE(match_known_hard(mirror_finite(renamed))) << renamed.render();
    EXPECT_TRUE(isomorphic_up_to_renaming(renamed, entry));
  }
  EXPECT_FALSE(match_known_hard(L("ab|bc")));
  EXPECT_FALSE(isomorphic_up_to_renaming(L("ab|bc"), L("ab|cd")));
}

TEST(ClassifyTest, Summaries) {
  EXPECT_EQ(C("ax*b").summary(), "PTIME (local)");
  EXPECT_EQ(C("aa").summary(), "NP-hard (repeated letter)");
  EXPECT_EQ(C("abc|bcd").summary(), "UNKNOWN");
  EXPECT_EQ(C("axb|cxd").summary(), "NP-hard (four-legged)");
  EXPECT_EQ(C("ab|bc").summary(), "PTIME (bcl)");
  EXPECT_EQ(C("abc|be").summary(), "PTIME (submod)");
  EXPECT_EQ(C("b(aa)*d").summary(), "NP-hard (not star-free)");
  EXPECT_EQ(C("abcd|be").status, Status::kUnknown);
}

TEST(ClassifyTest, EdgeCases) {
  EXPECT_EQ(C("~|ab").summary(), "PTIME (local)");
  EXPECT_EQ(C("∅").summary(), "PTIME (local)");
  EXPECT_EQ(C("a|aa").summary(), "PTIME (local)");
  // Not reduced: abbc|bb behaves like bb.
  EXPECT_EQ(C("abbc|bb").reason, "repeated letter");
  // Infinite language whose reduction is finite.
  EXPECT_EQ(C("a|ab*").summary(), "PTIME (local)");
  Verdict v = C("aa");
  EXPECT_EQ(v.witness.at("word"), "aa");
  EXPECT_EQ(v.witness.at("letter"), "a");
}

TEST(ClassifyTest, FiniteCriteriaAreConsistent) {
  const std::vector<std::string> corpus = {
      "ax*b",     "ab|ad|cd", "abc|abd",  "abc|be",   "abcd|ce",  "ab|bc",
      "axb|byc",  "aaaa",     "aa",       "abca|cab", "axb|cxd",  "ab|bc|ca",
      "abc|be|ef", "abcd|bef", "abcd|be", "abc|bcd",  "abc|bef",  "ab",
      "a|b",      "aba",      "abab",     "aab",      "abc|cde",  "abc|cd",
      "ab|cd",    "ab|ba",    "abc",      "abcd|bc",  "ab|b",     "ac|bc",
      "abcd|be|ef", "axyb|bztc|cd|dea", "abc|bc|ca", "ab|bc|cd", "ab|bc|cd|da",
      "abc|cab",  "xab|aby",  "abc|db|be", "ab|cb|cd", "a|bc|cd",
      "ab|bc|ce", "abc|ce",   "abc|ae",   "abcd|de",  "ab|ca",    "abc|ca",
      "ax|xb",    "ba|ab|bb", "abcde|cf", "abc|cd|de"};
  for (const std::string& s : corpus) {
    Verdict v = C(s);
    auto spec = LanguageSpec::parse(s);
    if (!spec.is_finite()) continue;
    CriteriaReport r = evaluate_criteria(reduce_finite(*spec.finite()));
    EXPECT_FALSE(r.any_tractable() && r.any_hard()) << s;
    if (r.repeated_letter) EXPECT_FALSE(r.local) << s;
    if (v.status == Status::kPtime) EXPECT_TRUE(r.any_tractable()) << s;
    if (v.status == Status::kNpHard) EXPECT_TRUE(r.any_hard()) << s;
  }
}

TEST(ClassifyTest, MirrorInvariance) {
  for (const char* s : {"abc|be", "abcd|ce", "abc|be|ef", "abcd|bef", "ab|bc",
                        "aa", "axb|cxd", "abc|bcd"}) {
    FiniteLanguage l = L(s);
    EXPECT_EQ(classify_finite(l).status, classify_finite(mirror_finite(l)).status)
        << s;
  }
}

TEST(LanguageSpecTest, Sources) {
  LanguageSpec r = LanguageSpec::parse("ab|bc");
  ASSERT_TRUE(r.is_finite());
  EXPECT_EQ(*r.finite(), L("ab|bc"));
  LanguageSpec f = LanguageSpec::from_finite(L("ab"));
  EXPECT_TRUE(accepts(f.automaton(), W("ab")));
  LanguageSpec inf = LanguageSpec::parse("ax*b");
  EXPECT_FALSE(inf.is_finite());
}

}  // namespace
}  // namespace rpqres
