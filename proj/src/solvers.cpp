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

#include "rpqres/solvers.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>

#include "rpqres/flow.hpp"

namespace rpqres {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool accepts_empty_word(const EpsNFA& a) {
  std::vector<StateId> start =
      epsilon_closure(a, {a.initial().begin(), a.initial().end()});
  return std::any_of(start.begin(), start.end(),
                     [&](StateId s) { return a.is_final(s); });
}

ResilienceAnswer infinite_answer(Method m) {
  return ResilienceAnswer{Cost::infinite(), {}, m};
}

std::vector<Fact> sorted(std::vector<Fact> facts) {
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
  return facts;
}

// Branch and bound for the exact solver. Each search node has facts that
// are deleted, kept (never to be deleted in this subtree) or undecided.
class ExactSearch {
 public:
  enum : char { kFree = 0, kDeleted = 1, kKept = 2 };

  ExactSearch(const GraphDB& d, const EpsNFA& automaton)
      : facts_(d.fact_list()) {
    EpsNFA a = trim(automaton);
    for (const Fact& f : facts_) mult_.push_back(d.multiplicity(f));
    std::set<Node> adom = d.adom();
    std::vector<Node> nodes(adom.begin(), adom.end());
    auto index = [&](const Node& v) {
      return static_cast<std::size_t>(
          std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
    };
    std::size_t ns = a.num_states();
    out_.resize(nodes.size() * ns);
    for (const Transition& t : a.transitions()) {
      if (t.is_epsilon()) {
        for (std::size_t v = 0; v < nodes.size(); ++v) {
          out_[v * ns + t.src].push_back({v * ns + t.dst, kNone});
        }
        continue;
      }
      for (std::size_t i = 0; i < facts_.size(); ++i) {
        if (facts_[i].label != *t.label) continue;
        out_[index(facts_[i].tail) * ns + t.src].push_back(
            {index(facts_[i].head) * ns + t.dst, i});
      }
    }
    final_.assign(out_.size(), false);
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      for (StateId s : a.initial()) sources_.push_back(v * ns + s);
      for (StateId s : a.final_states()) final_[v * ns + s] = true;
    }
  }

  ResilienceAnswer run() {
    std::vector<char> status(facts_.size(), kFree);
    best_ = 0;
    for (std::uint64_t m : mult_) best_ = checked_add(best_, m);
    best_set_.assign(facts_.size(), kDeleted);
    search(status, 0);
    ResilienceAnswer answer{Cost(best_), {}, Method::kExact};
    for (std::size_t i = 0; i < facts_.size(); ++i) {
      if (best_set_[i] == kDeleted) answer.contingency.push_back(facts_[i]);
    }
    return answer;
  }

 private:
  struct Arc {
    std::size_t to;
    std::size_t fact;  // kNone for epsilon
  };

  // Walk minimizing the number of undecided steps; returns its undecided
  // facts (empty when the walk uses kept facts only), or nullopt when no
  // walk survives the deletions.
  std::optional<std::vector<std::size_t>> witness(
      const std::vector<char>& status) const {
    std::vector<std::size_t> dist(out_.size(), kNone);
    std::vector<std::pair<std::size_t, std::size_t>> parent(out_.size(),
                                                            {kNone, kNone});
    std::vector<bool> done(out_.size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t s : sources_) {
      dist[s] = 0;
      queue.push_back(s);
    }
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      if (done[x]) continue;
      done[x] = true;
      if (final_[x]) {
        std::vector<std::size_t> free;
        for (std::size_t cur = x; parent[cur].first != kNone;
             cur = parent[cur].first) {
          std::size_t f = parent[cur].second;
          if (f != kNone && status[f] == kFree) free.push_back(f);
        }
        std::sort(free.begin(), free.end());
        free.erase(std::unique(free.begin(), free.end()), free.end());
        return free;
      }
      for (const Arc& arc : out_[x]) {
        std::size_t w = 0;
        if (arc.fact != kNone) {
          if (status[arc.fact] == kDeleted) continue;
          w = status[arc.fact] == kFree ? 1 : 0;
        }
        if (dist[x] + w < dist[arc.to]) {
          dist[arc.to] = dist[x] + w;
          parent[arc.to] = {x, arc.fact};
          w == 0 ? queue.push_front(arc.to) : queue.push_back(arc.to);
        }
      }
    }
    return std::nullopt;
  }

  void search(std::vector<char>& status, std::uint64_t cost) {
    // Greedy packing of walks with disjoint undecided facts gives a lower
    // bound: each must lose one of its own facts.
    std::vector<char> packed = status;
    std::uint64_t bound = 0;
    std::optional<std::vector<std::size_t>> branch;
    while (auto w = witness(packed)) {
      if (w->empty()) return;
      if (!branch) branch = *w;
      std::uint64_t cheapest = std::numeric_limits<std::uint64_t>::max();
      for (std::size_t f : *w) {
        cheapest = std::min(cheapest, mult_[f]);
        packed[f] = kDeleted;
      }
      bound = checked_add(bound, cheapest);
      if (checked_add(cost, bound) >= best_) return;
    }
    if (!branch) {
      if (cost < best_) {
        best_ = cost;
        best_set_ = status;
      }
      return;
    }
    std::vector<char> saved = status;
    for (std::size_t f : *branch) {
      status[f] = kDeleted;
      search(status, checked_add(cost, mult_[f]));
      status[f] = kKept;
    }
    status = saved;
  }

  std::vector<Fact> facts_;
  std::vector<std::uint64_t> mult_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::size_t> sources_;
  std::vector<bool> final_;
  std::uint64_t best_ = 0;
  std::vector<char> best_set_;
};

// Words α such that the automaton accepts α when started in `init` and
// stopped in `fin`, under the promise that these words pairwise share no
// letter.
std::vector<Word> disjoint_words(const EpsNFA& t, const std::set<StateId>& init,
                                 const std::set<StateId>& fin,
                                 std::size_t max_depth) {
  EpsNFA b(t.num_states());
  for (StateId s : init) b.add_initial(s);
  for (StateId s : fin) b.add_final(s);
  for (const Transition& tr : t.transitions()) {
    b.add_transition(tr.src, tr.label, tr.dst);
  }
  b = trim(b);
  if (b.num_states() == 0) return {};

  std::vector<std::vector<StateId>> eps_back(b.num_states());
  for (const Transition& tr : b.transitions()) {
    if (tr.is_epsilon()) eps_back[tr.dst].push_back(tr.src);
  }
  std::vector<bool> in_right(b.num_states(), false);
  std::vector<StateId> stack(b.final_states().begin(), b.final_states().end());
  for (StateId s : stack) in_right[s] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : eps_back[s]) {
      if (!in_right[p]) {
        in_right[p] = true;
        stack.push_back(p);
      }
    }
  }

  struct TrieNode {
    std::map<Letter, std::size_t> children;
    bool marked = false;
    std::size_t depth = 0;
    std::optional<Letter> letter;
    std::size_t parent = kNone;
  };
  std::vector<TrieNode> trie(1);
  std::vector<std::size_t> pointer(b.num_states(), kNone);
  std::set<std::pair<StateId, std::size_t>> seen;
  std::vector<std::pair<StateId, std::size_t>> queue;
  for (StateId s : epsilon_closure(b, {b.initial().begin(), b.initial().end()})) {
    if (seen.emplace(s, 0).second) queue.emplace_back(s, 0);
  }
  std::vector<std::vector<std::size_t>> out = b.outgoing();
  auto fail = [&](std::size_t node) {
    std::string letter = trie[node].letter ? trie[node].letter->render() : "~";
    return InputError("not a chain language: letter " + letter +
                      " is shared between several words");
  };
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [s, node] = queue[qi];
    if (in_right[s]) {
      trie[node].marked = true;
    } else {
      if (pointer[s] != kNone && pointer[s] != node) {
        throw fail(trie[node].depth >= trie[pointer[s]].depth ? node
                                                               : pointer[s]);
      }
      pointer[s] = node;
    }
    for (std::size_t ti : out[s]) {
      const Transition& tr = b.transitions()[ti];
      std::size_t next = node;
      if (!tr.is_epsilon()) {
        auto it = trie[node].children.find(*tr.label);
        if (it == trie[node].children.end()) {
          TrieNode child;
          child.depth = trie[node].depth + 1;
          child.letter = *tr.label;
          child.parent = node;
          if (child.depth > max_depth) throw fail(node);
          trie.push_back(child);
          it = trie[node].children.emplace(*tr.label, trie.size() - 1).first;
        }
        next = it->second;
      }
      if (seen.emplace(tr.dst, next).second) queue.emplace_back(tr.dst, next);
    }
  }
  std::vector<Word> words;
  for (std::size_t i = 0; i < trie.size(); ++i) {
    if (i != 0 && trie[i].children.size() > 1) throw fail(i);
    if (i != 0 && trie[i].marked && !trie[i].children.empty()) throw fail(i);
    if (!trie[i].marked) continue;
    Word w;
    for (std::size_t cur = i; cur != 0; cur = trie[cur].parent) {
      w.push_back(*trie[cur].letter);
    }
    std::reverse(w.begin(), w.end());
    words.push_back(std::move(w));
  }
  return words;
}

ResilienceAnswer reversed_answer(ResilienceAnswer answer) {
  for (Fact& f : answer.contingency) std::swap(f.tail, f.head);
  answer.contingency = sorted(std::move(answer.contingency));
  return answer;
}

}  // namespace

ResilienceAnswer resilience_exact(const GraphDB& d, const EpsNFA& a,
                                  std::size_t max_facts) {
  if (accepts_empty_word(a)) return infinite_answer(Method::kExact);
  if (d.size() > max_facts) {
    throw ResourceError("exact solver is capped at " +
                        std::to_string(max_facts) + " facts, database has " +
                        std::to_string(d.size()));
  }
  return ExactSearch(d, a).run();
}

ResilienceAnswer resilience_local(const GraphDB& d, const EpsNFA& a,
                                  bool promise_local, std::size_t cap) {
  if (!promise_local && !is_local_language(a, cap)) {
    throw RefusalError(
        "the language is not local; use the bcl, submod or exact solver");
  }
  if (accepts_empty_word(a)) return infinite_answer(Method::kLocal);
  EpsNFA ro = eps_nfa_to_ro(a);
  std::set<Node> adom = d.adom();
  std::vector<Node> nodes(adom.begin(), adom.end());
  auto index = [&](const Node& v) {
    return static_cast<std::size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };
  std::size_t ns = ro.num_states();
  auto vertex = [&](std::size_t v, StateId s) { return 2 + v * ns + s; };
  FlowNetwork net(2 + nodes.size() * ns, 0, 1);
  std::map<Letter, std::vector<const Transition*>> by_letter;
  for (const Transition& t : ro.transitions()) {
    if (t.is_epsilon()) {
      for (std::size_t v = 0; v < nodes.size(); ++v) {
        net.add_edge(vertex(v, t.src), vertex(v, t.dst), Cost::infinite());
      }
    } else {
      by_letter[*t.label].push_back(&t);
    }
  }
  std::map<std::size_t, Fact> edge_fact;
  for (const auto& [f, m] : d.facts()) {
    auto it = by_letter.find(f.label);
    if (it == by_letter.end()) continue;
    for (const Transition* t : it->second) {
      std::size_t e = net.add_edge(vertex(index(f.tail), t->src),
                                   vertex(index(f.head), t->dst), Cost(m));
      edge_fact.emplace(e, f);
    }
  }
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    for (StateId s : ro.initial()) {
      net.add_edge(0, vertex(v, s), Cost::infinite());
    }
    for (StateId s : ro.final_states()) {
      net.add_edge(vertex(v, s), 1, Cost::infinite());
    }
  }
  CutResult cut = min_cut(net);
  if (cut.value.is_infinite()) return infinite_answer(Method::kLocal);
  ResilienceAnswer answer{cut.value, {}, Method::kLocal};
  for (std::size_t e : cut.edges) {
    auto it = edge_fact.find(e);
    if (it != edge_fact.end()) answer.contingency.push_back(it->second);
  }
  answer.contingency = sorted(std::move(answer.contingency));
  return answer;
}

FiniteLanguage extract_word_list(const EpsNFA& a) {
  EpsNFA t = trim(a);
  FiniteLanguage out;
  if (t.num_states() == 0) return out;
  std::vector<StateId> left =
      epsilon_closure(t, {t.initial().begin(), t.initial().end()});
  std::set<StateId> s_left(left.begin(), left.end());
  std::vector<StateId> right =
      epsilon_closure(reverse(t), {t.final_states().begin(),
                                   t.final_states().end()});
  std::set<StateId> s_right(right.begin(), right.end());
  for (StateId s : s_left) {
    if (s_right.count(s)) out.insert(Word{});
  }
  std::map<Letter, std::set<StateId>> left_heads, right_tails;
  for (const Transition& tr : t.transitions()) {
    if (tr.is_epsilon()) continue;
    if (s_left.count(tr.src) && s_right.count(tr.dst)) out.insert(Word{*tr.label});
    if (s_left.count(tr.src)) left_heads[*tr.label].insert(tr.dst);
    if (s_right.count(tr.dst)) right_tails[*tr.label].insert(tr.src);
  }
  std::size_t max_depth = t.alphabet().size();
  for (const auto& [x, heads] : left_heads) {
    for (const auto& [y, tails] : right_tails) {
      for (const Word& middle : disjoint_words(t, heads, tails, max_depth)) {
        Word w{x};
        w.insert(w.end(), middle.begin(), middle.end());
        w.push_back(y);
        out.insert(std::move(w));
      }
    }
  }
  ChainReport report = check_chain_language(out);
  if (!report.is_chain) {
    throw InputError("not a chain language: " + report.violation);
  }
  return out;
}

ResilienceAnswer resilience_bcl(const GraphDB& d,
                                const FiniteLanguage& language) {
  BclReport report = check_bcl(language);
  if (!report.is_bcl) {
    std::string why = report.chain.is_chain
                          ? "the endpoint graph is not bipartite"
                          : report.chain.violation;
    throw RefusalError("not a bipartite chain language: " + why);
  }
  if (language.contains_empty_word()) return infinite_answer(Method::kBcl);

  std::set<Letter> single;
  std::vector<Word> long_words;
  for (const Word& w : language.words()) {
    if (w.size() == 1) {
      single.insert(w[0]);
    } else {
      long_words.push_back(w);
    }
  }
  ResilienceAnswer answer{Cost(0), {}, Method::kBcl};
  std::vector<Fact> facts;
  std::vector<std::uint64_t> mult;
  for (const auto& [f, m] : d.facts()) {
    if (single.count(f.label)) {
      answer.value += Cost(m);
      answer.contingency.push_back(f);
    } else {
      facts.push_back(f);
      mult.push_back(m);
    }
  }

  // Vertices: 0 source, 1 target, 2 + 2i start of fact i, 3 + 2i its end.
  FlowNetwork net(2 + 2 * facts.size(), 0, 1);
  auto start = [](std::size_t i) { return 2 + 2 * i; };
  auto end = [](std::size_t i) { return 3 + 2 * i; };
  for (std::size_t i = 0; i < facts.size(); ++i) {
    net.add_edge(start(i), end(i), Cost(mult[i]));
  }
  std::map<std::pair<Node, Letter>, std::vector<std::size_t>> by_tail;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    by_tail[{facts[i].tail, facts[i].label}].push_back(i);
  }
  for (const Word& w : long_words) {
    bool forward = report.source_side.at(w.front());
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      for (std::size_t i = 0; i < facts.size(); ++i) {
        if (facts[i].label != w[k]) continue;
        auto it = by_tail.find({facts[i].head, w[k + 1]});
        if (it == by_tail.end()) continue;
        for (std::size_t j : it->second) {
          if (forward) {
            net.add_edge(end(i), start(j), Cost::infinite());
          } else {
            net.add_edge(end(j), start(i), Cost::infinite());
          }
        }
      }
    }
  }
  std::set<Letter> endpoints;
  for (const Word& w : long_words) {
    endpoints.insert(w.front());
    endpoints.insert(w.back());
  }
  for (std::size_t i = 0; i < facts.size(); ++i) {
    if (!endpoints.count(facts[i].label)) continue;
    if (report.source_side.at(facts[i].label)) {
      net.add_edge(0, start(i), Cost::infinite());
    } else {
      net.add_edge(end(i), 1, Cost::infinite());
    }
  }
  CutResult cut = min_cut(net);
  answer.value += cut.value;
  for (std::size_t e : cut.edges) {
    // Fact edges are the first facts.size() edges.
    if (e < facts.size()) answer.contingency.push_back(facts[e]);
  }
  answer.contingency = sorted(std::move(answer.contingency));
  return answer;
}

ResilienceAnswer resilience_bcl(const GraphDB& d, const EpsNFA& a) {
  return resilience_bcl(d, extract_word_list(a));
}

Cost chain_resilience_without_tails(const GraphDB& d, const Word& chain,
                                    const std::set<Node>& removed_tails) {
  std::set<Fact> removed;
  for (const auto& [f, m] : d.facts()) {
    if (f.label == chain.back() && removed_tails.count(f.tail)) removed.insert(f);
  }
  return resilience_local(d.without(removed), word_automaton(chain), true)
      .value;
}

ResilienceAnswer resilience_submod(const GraphDB& d, const Word& chain,
                                   Letter extra, std::size_t cap) {
  std::size_t n = chain.size();
  if (n < 2 || has_repeated_letter(chain) ||
      std::find(chain.begin(), chain.end(), extra) != chain.end()) {
    throw RefusalError(
        "submodularity solver needs n >= 2 pairwise distinct letters");
  }
  Letter before = chain[n - 2];
  Letter last = chain[n - 1];
  std::map<Node, std::uint64_t> in, out;
  for (const auto& [f, m] : d.facts()) {
    if (f.label == before) in[f.head] = checked_add(in[f.head], m);
    if (f.label == extra) out[f.tail] = checked_add(out[f.tail], m);
  }
  // Elements without incoming aₙ₋₁-facts join Z for free; elements without
  // outgoing aₙ₊₁-facts stay out of Z for free.
  std::set<Node> base;
  std::vector<Node> relevant;
  for (const Node& v : d.adom()) {
    bool has_in = in.count(v) > 0;
    bool has_out = out.count(v) > 0;
    if (!has_in) {
      base.insert(v);
    } else if (has_out) {
      relevant.push_back(v);
    }
  }
  if (relevant.size() > cap) {
    throw ResourceError(
        "submodularity solver is capped at " + std::to_string(cap) +
        " relevant elements (found " + std::to_string(relevant.size()) +
        "); use the exact solver");
  }
  Cost best = Cost::infinite();
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << relevant.size());
       ++mask) {
    std::set<Node> z = base;
    Cost cost(0);
    for (std::size_t i = 0; i < relevant.size(); ++i) {
      if (mask >> i & 1) {
        z.insert(relevant[i]);
        cost += Cost(in[relevant[i]]);
      } else {
        cost += Cost(out[relevant[i]]);
      }
    }
    if (cost >= best) continue;
    cost += chain_resilience_without_tails(d, chain, z);
    if (cost < best) {
      best = cost;
      best_mask = mask;
    }
  }
  std::set<Node> z = base;
  std::set<Node> z_relevant;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    if (best_mask >> i & 1) {
      z.insert(relevant[i]);
      z_relevant.insert(relevant[i]);
    }
  }
  std::set<Fact> removed;
  std::vector<Fact> contingency;
  for (const auto& [f, m] : d.facts()) {
    if (f.label == last && z.count(f.tail)) removed.insert(f);
    if (f.label == before && z_relevant.count(f.head)) contingency.push_back(f);
    if (f.label == extra && !z.count(f.tail) && out.count(f.tail)) {
      contingency.push_back(f);
    }
  }
  ResilienceAnswer local =
      resilience_local(d.without(removed), word_automaton(chain), true);
  contingency.insert(contingency.end(), local.contingency.begin(),
                     local.contingency.end());
  ResilienceAnswer answer{best, sorted(std::move(contingency)),
                          Method::kSubmod};
  return answer;
}

ResilienceAnswer resilience_submod(const GraphDB& d,
                                   const FiniteLanguage& language,
                                   std::size_t cap) {
  std::optional<SubmodPattern> p = matches_submod_pattern(language);
  if (!p) {
    throw RefusalError("language is not of the form a1...an | a(n-1)a(n+1)");
  }
  Word chain(p->letters.begin(), p->letters.end() - 1);
  Letter extra = p->letters.back();
  if (!p->mirrored) return resilience_submod(d, chain, extra, cap);
  return reversed_answer(resilience_submod(d.reversed(), chain, extra, cap));
}

namespace {

EpsNFA local_automaton(const LanguageSpec& language, std::size_t cap) {
  if (language.is_finite()) {
    return finite_to_epsnfa(reduce_finite(*language.finite()));
  }
  const EpsNFA& a = language.automaton();
  if (is_local_language(a, cap)) return a;
  return reduce_regular(a, cap).to_nfa();
}

FiniteLanguage explicit_words(const LanguageSpec& language) {
  if (language.is_finite()) return reduce_finite(*language.finite());
  throw RefusalError("the language is infinite");
}

}  // namespace

ResilienceAnswer resilience(const GraphDB& d, const LanguageSpec& language,
                            Semantics semantics, SolverChoice solver,
                            const SolveOptions& options) {
  GraphDB db = semantics == Semantics::kSet ? d.with_unit_multiplicities() : d;
  if (solver == SolverChoice::kAuto) {
    ClassifyOptions copts;
    copts.state_cap = options.state_cap;
    Verdict v = classify(language, copts);
    if (v.status == Status::kPtime) {
      switch (*v.method) {
        case Method::kLocal:
          solver = SolverChoice::kLocal;
          break;
        case Method::kBcl:
          solver = SolverChoice::kBcl;
          break;
        case Method::kSubmod:
          solver = SolverChoice::kSubmod;
          break;
        case Method::kExact:
          solver = SolverChoice::kExact;
          break;
      }
    } else {
      try {
        return resilience_exact(db, language.automaton(),
                                options.exact_fact_cap);
      } catch (const ResourceError& e) {
        throw ResourceError("no tractable solver applies (" +
                            v.summary() + ") and " + e.what());
      }
    }
  }
  switch (solver) {
    case SolverChoice::kLocal: {
      EpsNFA a = local_automaton(language, options.state_cap);
      return resilience_local(db, a, false, options.state_cap);
    }
    case SolverChoice::kBcl:
      if (language.is_finite()) return resilience_bcl(db, *language.finite());
      return resilience_bcl(db, language.automaton());
    case SolverChoice::kSubmod:
      return resilience_submod(db, explicit_words(language),
                               options.submod_cap);
    case SolverChoice::kExact:
    case SolverChoice::kAuto:
      break;
  }
  return resilience_exact(db, language.automaton(), options.exact_fact_cap);
}

}  // namespace rpqres
