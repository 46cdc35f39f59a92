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

#include "rpqres/classifier.hpp"

#include <algorithm>
#include <numeric>

namespace rpqres {
namespace {

void put_legs(Verdict& v, const CartesianCounterexample& c) {
  v.witness["x"] = c.x.render();
  v.witness["alpha"] = render_word(c.alpha);
  v.witness["beta"] = render_word(c.beta);
  v.witness["gamma"] = render_word(c.gamma);
  v.witness["delta"] = render_word(c.delta);
}

std::optional<SubmodPattern> direct_submod_pattern(
    const FiniteLanguage& language) {
  if (language.size() != 2) return std::nullopt;
  const Word& w1 = *language.words().begin();
  const Word& w2 = *std::next(language.words().begin());
  for (const auto& [chain, extra] : {std::pair(w1, w2), std::pair(w2, w1)}) {
    std::size_t n = chain.size();
    if (n < 2 || extra.size() != 2) continue;
    if (has_repeated_letter(chain)) continue;
    if (extra[0] != chain[n - 2]) continue;
    if (std::find(chain.begin(), chain.end(), extra[1]) != chain.end()) continue;
    std::vector<Letter> letters = chain;
    letters.push_back(extra[1]);
    return SubmodPattern{n, letters, false};
  }
  return std::nullopt;
}

// Four-legged witness among the words of red(L) up to `max_length`, with
// membership of αxδ decided on the full automaton.
std::optional<CartesianCounterexample> bounded_four_legged(
    const Dfa& red, const EpsNFA& red_nfa, std::size_t max_length) {
  std::set<Word> words = enumerate_words(red_nfa, max_length);
  for (const Word& w1 : words) {
    for (std::size_t i = 1; i + 1 < w1.size(); ++i) {
      for (const Word& w2 : words) {
        for (std::size_t j = 1; j + 1 < w2.size(); ++j) {
          if (w1[i] != w2[j]) continue;
          Word joined = subword(w1, 0, i + 1);
          Word delta = subword(w2, j + 1, w2.size());
          joined.insert(joined.end(), delta.begin(), delta.end());
          if (!red.accepts(joined)) {
            return CartesianCounterexample{
                w1[i], subword(w1, 0, i), subword(w1, i + 1, w1.size()),
                subword(w2, 0, j), delta};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

LanguageSpec LanguageSpec::from_regex(const Regex& r) {
  LanguageSpec spec = from_automaton(regex_to_epsnfa(r));
  spec.description_ = print_regex(r);
  return spec;
}

LanguageSpec LanguageSpec::from_finite(const FiniteLanguage& language) {
  LanguageSpec spec;
  spec.automaton_ = finite_to_epsnfa(language);
  spec.finite_ = language;
  spec.description_ = language.render();
  return spec;
}

LanguageSpec LanguageSpec::from_automaton(const EpsNFA& a) {
  LanguageSpec spec;
  spec.automaton_ = a;
  if (rpqres::is_finite(a)) spec.finite_ = to_finite_language(a);
  spec.description_ = "<automaton>";
  return spec;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::kPtime:
      return "PTIME";
    case Status::kNpHard:
      return "NP-hard";
    case Status::kUnknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string Verdict::summary() const {
  switch (status) {
    case Status::kPtime:
      return "PTIME (" + method_name(*method) + ")";
    case Status::kNpHard:
      return "NP-hard (" + reason + ")";
    case Status::kUnknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<CartesianCounterexample> is_four_legged_finite(
    const FiniteLanguage& language) {
  if (!is_reduced_finite(language)) {
    throw InputError("four-legged test requires a reduced language");
  }
  for (const Word& w1 : language.words()) {
    for (std::size_t i = 1; i + 1 < w1.size(); ++i) {
      for (const Word& w2 : language.words()) {
        for (std::size_t j = 1; j + 1 < w2.size(); ++j) {
          if (w1[i] != w2[j]) continue;
          Word joined = subword(w1, 0, i + 1);
          Word delta = subword(w2, j + 1, w2.size());
          joined.insert(joined.end(), delta.begin(), delta.end());
          if (!language.contains(joined)) {
            return CartesianCounterexample{
                w1[i], subword(w1, 0, i), subword(w1, i + 1, w1.size()),
                subword(w2, 0, j), delta};
          }
        }
      }
    }
  }
  return std::nullopt;
}

ChainReport check_chain_language(const FiniteLanguage& language) {
  for (const Word& w : language.words()) {
    if (auto r = has_repeated_letter(w)) {
      return ChainReport{false, r->letter,
                         "word " + render_word(w) + " repeats letter " +
                             r->letter.render()};
    }
  }
  for (const Word& w : language.words()) {
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
      for (const Word& other : language.words()) {
        if (other == w) continue;
        if (std::find(other.begin(), other.end(), w[i]) != other.end()) {
          return ChainReport{false, w[i],
                             "inner letter " + w[i].render() + " of " +
                                 render_word(w) + " also occurs in " +
                                 render_word(other)};
        }
      }
    }
  }
  return ChainReport{};
}

bool is_chain_language(const FiniteLanguage& language) {
  return check_chain_language(language).is_chain;
}

EndpointGraph endpoint_graph(const FiniteLanguage& language) {
  EndpointGraph g;
  g.vertices = language.alphabet();
  for (const Word& w : language.words()) {
    if (w.size() < 2 || w.front() == w.back()) continue;
    g.edges.insert(std::minmax(w.front(), w.back()));
  }
  return g;
}

BclReport check_bcl(const FiniteLanguage& language) {
  BclReport report;
  report.chain = check_chain_language(language);
  EndpointGraph g = endpoint_graph(language);
  std::map<Letter, std::vector<Letter>> adj;
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::map<Letter, bool> color;
  std::map<Letter, std::optional<Letter>> parent;
  std::map<Letter, std::size_t> depth;
  bool bipartite = true;
  for (const auto& [root, unused] : adj) {
    if (color.count(root) || !bipartite) continue;
    color[root] = true;
    parent[root] = std::nullopt;
    depth[root] = 0;
    std::vector<Letter> queue{root};
    for (std::size_t i = 0; i < queue.size() && bipartite; ++i) {
      Letter u = queue[i];
      for (Letter w : adj[u]) {
        if (!color.count(w)) {
          color[w] = !color[u];
          parent[w] = u;
          depth[w] = depth[u] + 1;
          queue.push_back(w);
        } else if (color[w] == color[u]) {
          // Odd cycle: u .. lca .. w, closed by the edge {u, w}.
          std::vector<Letter> left{u}, right{w};
          Letter x = u, y = w;
          while (depth[x] > depth[y]) left.push_back(x = *parent[x]);
          while (depth[y] > depth[x]) right.push_back(y = *parent[y]);
          while (x != y) {
            left.push_back(x = *parent[x]);
            right.push_back(y = *parent[y]);
          }
          right.pop_back();
          report.odd_cycle = left;
          report.odd_cycle.insert(report.odd_cycle.end(), right.rbegin(),
                                  right.rend());
          bipartite = false;
          break;
        }
      }
    }
  }
  if (bipartite) report.source_side = color;
  report.is_bcl = report.chain.is_chain && bipartite;
  return report;
}

bool is_bcl(const FiniteLanguage& language) {
  return check_bcl(language).is_bcl;
}

std::optional<SubmodPattern> matches_submod_pattern(
    const FiniteLanguage& language) {
  if (auto p = direct_submod_pattern(language)) return p;
  if (auto p = direct_submod_pattern(mirror_finite(language))) {
    p->mirrored = true;
    return p;
  }
  return std::nullopt;
}

bool isomorphic_up_to_renaming(const FiniteLanguage& a,
                               const FiniteLanguage& b) {
  if (a.size() != b.size()) return false;
  Alphabet sa = a.alphabet();
  Alphabet sb = b.alphabet();
  std::vector<Letter> la(sa.begin(), sa.end());
  std::vector<Letter> lb(sb.begin(), sb.end());
  if (la.size() != lb.size()) return false;
  std::multiset<std::size_t> lengths_a, lengths_b;
  for (const Word& w : a.words()) lengths_a.insert(w.size());
  for (const Word& w : b.words()) lengths_b.insert(w.size());
  if (lengths_a != lengths_b) return false;
  std::vector<std::size_t> perm(la.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::map<Letter, Letter> rename;
    for (std::size_t i = 0; i < la.size(); ++i) rename.emplace(la[i], lb[perm[i]]);
    bool ok = true;
    for (const Word& w : a.words()) {
      Word image;
      for (Letter c : w) image.push_back(rename.at(c));
      if (!b.contains(image)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

const std::vector<FiniteLanguage>& known_hard_catalog() {
  static const auto* catalog = new std::vector<FiniteLanguage>{
      FiniteLanguage::parse_inline("ab|bc|ca"),
      FiniteLanguage::parse_inline("abcd|be|ef"),
      FiniteLanguage::parse_inline("abc|be|ef"),
      FiniteLanguage::parse_inline("abcd|bef"),
  };
  return *catalog;
}

std::optional<FiniteLanguage> match_known_hard(const FiniteLanguage& language) {
  FiniteLanguage mirrored = mirror_finite(language);
  for (const FiniteLanguage& entry : known_hard_catalog()) {
    if (isomorphic_up_to_renaming(language, entry) ||
        isomorphic_up_to_renaming(mirrored, entry)) {
      return entry;
    }
  }
  return std::nullopt;
}

Verdict classify_finite(const FiniteLanguage& language) {
  FiniteLanguage red = reduce_finite(language);
  Verdict v;
  if (red != language) v.notes.push_back("reduced to " + red.render());

  if (auto cex = find_cartesian_counterexample(red); !cex) {
    v.status = Status::kPtime;
    v.method = Method::kLocal;
    v.reason = "local";
    return v;
  } else {
    v.witness["not_local"] = cex->x.render() + " in " +
                             render_word(cex->alpha) + "|" +
                             render_word(cex->beta) + " and " +
                             render_word(cex->gamma) + "|" +
                             render_word(cex->delta);
  }

  bool repeated = std::any_of(
      red.words().begin(), red.words().end(),
      [](const Word& w) { return has_repeated_letter(w).has_value(); });
  if (repeated) {
    MaximalGapWord m = maximal_gap_words(red).front();
    v.status = Status::kNpHard;
    v.reason = "repeated letter";
    v.witness.clear();
    v.witness["word"] = render_word(m.word);
    v.witness["letter"] = m.decomposition.letter.render();
    v.witness["beta"] = render_word(m.decomposition.beta(m.word));
    v.witness["gamma"] = render_word(m.decomposition.gamma(m.word));
    v.witness["delta"] = render_word(m.decomposition.delta(m.word));
    return v;
  }

  if (auto legs = is_four_legged_finite(red)) {
    v.status = Status::kNpHard;
    v.reason = "four-legged";
    v.witness.clear();
    put_legs(v, *legs);
    return v;
  }

  BclReport bcl = check_bcl(red);
  if (bcl.is_bcl) {
    v.status = Status::kPtime;
    v.method = Method::kBcl;
    v.reason = "bipartite chain language";
    return v;
  }

  if (auto p = matches_submod_pattern(red)) {
    v.status = Status::kPtime;
    v.method = Method::kSubmod;
    v.reason = "submodularity";
    std::string letters;
    for (Letter c : p->letters) letters += c.render();
    v.witness["pattern"] = letters;
    if (p->mirrored) v.notes.push_back("pattern matched on the mirror language");
    return v;
  }

  if (auto entry = match_known_hard(red)) {
    v.status = Status::kNpHard;
    v.reason = "known hard language";
    v.witness["catalog_entry"] = entry->render();
    return v;
  }

  v.status = Status::kUnknown;
  v.reason = "unclassified";
  if (bcl.chain.is_chain && !bcl.odd_cycle.empty()) {
    std::string cycle;
    for (Letter c : bcl.odd_cycle) cycle += c.render();
    v.witness["odd_cycle"] = cycle;
    v.notes.push_back(
        "chain language with a non-bipartite endpoint graph; conjectured "
        "NP-hard");
  }
  return v;
}

Verdict classify(const LanguageSpec& spec, const ClassifyOptions& options) {
  if (spec.is_finite()) return classify_finite(*spec.finite());
  const EpsNFA& a = spec.automaton();
  Verdict v;
  v.status = Status::kUnknown;
  v.reason = "unclassified";
  try {
    Dfa red = reduce_regular(a, options.state_cap);
    EpsNFA red_nfa = red.to_nfa();
    if (is_finite(red_nfa)) {
      FiniteLanguage words = to_finite_language(red_nfa);
      Verdict fv = classify_finite(words);
      fv.notes.insert(fv.notes.begin(), "red(L) is finite: " + words.render());
      return fv;
    }
    if (is_local_language(red_nfa, options.state_cap)) {
      v.status = Status::kPtime;
      v.method = Method::kLocal;
      v.reason = "local";
      if (!is_local_language(a, options.state_cap)) {
        v.notes.push_back("red(L) is local");
      }
      return v;
    }
    auto legs = bounded_four_legged(red, red_nfa, options.four_legged_max_length);
    if (!is_aperiodic(red, options.monoid_cap)) {
      v.status = Status::kNpHard;
      v.reason = "not star-free";
      v.witness["monoid"] = "non-trivial group in the transition monoid";
      if (legs) put_legs(v, *legs);
      return v;
    }
    for (Letter e : a.alphabet()) {
      if (is_neutral_letter(a, e, options.state_cap)) {
        v.status = Status::kNpHard;
        v.reason = "neutral letter";
        v.witness["neutral"] = e.render();
        if (legs) put_legs(v, *legs);
        v.notes.push_back("red(L) is not local");
        return v;
      }
    }
    if (legs) {
      v.status = Status::kNpHard;
      v.reason = "four-legged";
      put_legs(v, *legs);
      return v;
    }
    v.notes.push_back("no four-legged witness among words of length <= " +
                      std::to_string(options.four_legged_max_length));
  } catch (const ResourceError& e) {
    v.notes.push_back(std::string("resource cap: ") + e.what());
  }
  return v;
}

CriteriaReport evaluate_criteria(const FiniteLanguage& reduced) {
  CriteriaReport r;
  r.local = is_letter_cartesian_finite(reduced);
  r.repeated_letter = std::any_of(
      reduced.words().begin(), reduced.words().end(),
      [](const Word& w) { return has_repeated_letter(w).has_value(); });
  r.four_legged = is_four_legged_finite(reduced).has_value();
  r.bcl = is_bcl(reduced);
  r.submod = matches_submod_pattern(reduced).has_value();
  r.catalog = match_known_hard(reduced).has_value();
  return r;
}

}  // namespace rpqres
