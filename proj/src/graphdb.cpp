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

#include "rpqres/graphdb.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace rpqres {
namespace {

bool is_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

}  // namespace

std::string Fact::render() const {
  return tail + " " + label.name() + " " + head;
}

void GraphDB::add_fact(Fact f, std::uint64_t mult) {
  if (mult == 0) throw InputError("multiplicity must be positive");
  if (facts_.count(f)) throw InputError("duplicate fact " + f.render());
  facts_.emplace(std::move(f), mult);
}

void GraphDB::set_multiplicity(const Fact& f, std::uint64_t mult) {
  if (mult == 0) throw InputError("multiplicity must be positive");
  auto it = facts_.find(f);
  if (it == facts_.end()) throw InputError("unknown fact " + f.render());
  it->second = mult;
}

std::vector<Fact> GraphDB::fact_list() const {
  std::vector<Fact> out;
  out.reserve(facts_.size());
  for (const auto& [f, m] : facts_) out.push_back(f);
  return out;
}

std::uint64_t GraphDB::multiplicity(const Fact& f) const {
  auto it = facts_.find(f);
  if (it == facts_.end()) throw InputError("unknown fact " + f.render());
  return it->second;
}

std::uint64_t GraphDB::total_multiplicity() const {
  std::uint64_t total = 0;
  for (const auto& [f, m] : facts_) total = checked_add(total, m);
  return total;
}

std::uint64_t GraphDB::total_multiplicity(
    const std::vector<Fact>& subset) const {
  std::uint64_t total = 0;
  for (const Fact& f : subset) total = checked_add(total, multiplicity(f));
  return total;
}

std::set<Node> GraphDB::adom() const {
  std::set<Node> nodes;
  for (const auto& [f, m] : facts_) {
    nodes.insert(f.tail);
    nodes.insert(f.head);
  }
  return nodes;
}

GraphDB GraphDB::without(const std::set<Fact>& removed) const {
  GraphDB out;
  for (const auto& [f, m] : facts_) {
    if (!removed.count(f)) out.facts_.emplace(f, m);
  }
  return out;
}

GraphDB GraphDB::with_unit_multiplicities() const {
  GraphDB out;
  for (const auto& [f, m] : facts_) out.facts_.emplace(f, 1);
  return out;
}

GraphDB GraphDB::reversed() const {
  GraphDB out;
  for (const auto& [f, m] : facts_) {
    out.facts_.emplace(Fact{f.head, f.label, f.tail}, m);
  }
  return out;
}

GraphDB GraphDB::parse(std::string_view text) {
  GraphDB d;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    std::string t;
    while (fields >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 3 && tok.size() != 4) {
      throw ParseError("expected 'tail label head [mult]'", line_no);
    }
    std::uint64_t mult = 1;
    if (tok.size() == 4) {
      if (!is_digits(tok[3])) {
        throw ParseError("multiplicity must be a positive integer", line_no);
      }
      try {
        mult = std::stoull(tok[3]);
      } catch (const std::out_of_range&) {
        throw ParseError("multiplicity exceeds 64 bits", line_no);
      }
    }
    try {
      d.add_fact(Fact{tok[0], Letter(tok[1]), tok[2]}, mult);
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return d;
}

std::string GraphDB::serialize() const {
  std::string out;
  for (const auto& [f, m] : facts_) {
    out += f.render();
    if (m != 1) out += " " + std::to_string(m);
    out += "\n";
  }
  return out;
}

std::optional<std::vector<Fact>> find_witness_walk(const GraphDB& d,
                                                   const EpsNFA& a) {
  EpsNFA t = trim(a);
  std::vector<StateId> start =
      epsilon_closure(t, {t.initial().begin(), t.initial().end()});
  for (StateId s : start) {
    if (t.is_final(s)) return std::vector<Fact>{};
  }
  if (t.num_states() == 0) return std::nullopt;

  std::vector<Node> nodes;
  for (const Node& v : d.adom()) nodes.push_back(v);
  auto node_index = [&](const Node& v) {
    return static_cast<std::size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };
  std::vector<Fact> facts = d.fact_list();
  std::vector<std::vector<std::size_t>> out_facts(nodes.size());
  for (std::size_t i = 0; i < facts.size(); ++i) {
    out_facts[node_index(facts[i].tail)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out_trans = t.outgoing();
  std::size_t ns = t.num_states();
  std::size_t total = nodes.size() * ns;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(total, kNone);
  // Predecessor product vertex and the fact used (kNone for epsilon).
  std::vector<std::pair<std::size_t, std::size_t>> parent(total,
                                                          {kNone, kNone});
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    for (StateId s : t.initial()) {
      dist[v * ns + s] = 0;
      queue.push_back(v * ns + s);
    }
  }
  std::vector<bool> done(total, false);
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    if (done[x]) continue;
    done[x] = true;
    std::size_t v = x / ns;
    auto s = static_cast<StateId>(x % ns);
    if (t.is_final(s)) {
      std::vector<Fact> walk;
      for (std::size_t cur = x; parent[cur].first != kNone;
           cur = parent[cur].first) {
        if (parent[cur].second != kNone) {
          walk.push_back(facts[parent[cur].second]);
        }
      }
      std::reverse(walk.begin(), walk.end());
      return walk;
    }
    for (std::size_t ti : out_trans[s]) {
      const Transition& tr = t.transitions()[ti];
      if (tr.is_epsilon()) {
        std::size_t y = v * ns + tr.dst;
        if (dist[y] > dist[x]) {
          dist[y] = dist[x];
          parent[y] = {x, kNone};
          queue.push_front(y);
        }
        continue;
      }
      for (std::size_t fi : out_facts[v]) {
        if (facts[fi].label != *tr.label) continue;
        std::size_t y = node_index(facts[fi].head) * ns + tr.dst;
        if (dist[y] > dist[x] + 1) {
          dist[y] = dist[x] + 1;
          parent[y] = {x, fi};
          queue.push_back(y);
        }
      }
    }
  }
  return std::nullopt;
}

bool satisfies(const GraphDB& d, const EpsNFA& a) {
  return find_witness_walk(d, a).has_value();
}

Word Match::word() const {
  Word w;
  for (const Fact& f : walk) w.push_back(f.label);
  return w;
}

std::vector<Match> enumerate_matches(const GraphDB& d,
                                     const FiniteLanguage& language) {
  std::map<std::pair<Node, Letter>, std::vector<Fact>> by_tail;
  for (const auto& [f, m] : d.facts()) by_tail[{f.tail, f.label}].push_back(f);
  std::map<std::set<Fact>, std::vector<Fact>> found;
  std::vector<Fact> walk;
  for (const Word& w : language.words()) {
    if (w.empty()) {
      found.emplace(std::set<Fact>{}, std::vector<Fact>{});
      continue;
    }
    auto extend = [&](auto& self, const Node& at) -> void {
      if (walk.size() == w.size()) {
        found.emplace(std::set<Fact>(walk.begin(), walk.end()), walk);
        return;
      }
      auto it = by_tail.find({at, w[walk.size()]});
      if (it == by_tail.end()) return;
      for (const Fact& f : it->second) {
        walk.push_back(f);
        self(self, f.head);
        walk.pop_back();
      }
    };
    for (const auto& [f, m] : d.facts()) {
      if (f.label != w[0]) continue;
      walk.push_back(f);
      extend(extend, f.head);
      walk.pop_back();
    }
  }
  std::vector<Match> out;
  for (auto& [facts, rep] : found) out.push_back(Match{facts, rep});
  return out;
}

}  // namespace rpqres
