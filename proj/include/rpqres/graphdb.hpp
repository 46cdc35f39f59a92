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

// Labeled graph databases with fact multiplicities, query evaluation and
// match enumeration.

#ifndef RPQRES_GRAPHDB_HPP_
#define RPQRES_GRAPHDB_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rpqres/automata.hpp"
#include "rpqres/lang.hpp"

namespace rpqres {

using Node = std::string;

struct Fact {
  Node tail;
  Letter label;
  Node head;

  // "tail label head".
  std::string render() const;

  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

class GraphDB {
 public:
  GraphDB() = default;

  // Throws InputError on a duplicate fact or a zero multiplicity.
  void add_fact(Fact f, std::uint64_t mult = 1);
  void set_multiplicity(const Fact& f, std::uint64_t mult);
  void remove_fact(const Fact& f) { facts_.erase(f); }

  const std::map<Fact, std::uint64_t>& facts() const { return facts_; }
  std::vector<Fact> fact_list() const;
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  bool contains(const Fact& f) const { return facts_.count(f) > 0; }
  // Throws InputError if f is absent.
  std::uint64_t multiplicity(const Fact& f) const;
  // Checked sum over `subset`, or over all facts.
  std::uint64_t total_multiplicity() const;
  std::uint64_t total_multiplicity(const std::vector<Fact>& subset) const;
  std::set<Node> adom() const;

  GraphDB without(const std::set<Fact>& removed) const;
  GraphDB with_unit_multiplicities() const;
  // Every fact u -a-> v becomes v -a-> u.
  GraphDB reversed() const;

  // One fact per line: `tail label head [mult]`, `#` comments. Throws
  // ParseError with the line number.
  static GraphDB parse(std::string_view text);
  // Canonical form: sorted facts, multiplicity printed when not 1.
  std::string serialize() const;

  friend bool operator==(const GraphDB&, const GraphDB&) = default;

 private:
  std::map<Fact, std::uint64_t> facts_;
};

// Walk whose label is in L(a), with fewest steps; empty walk when ε ∈ L(a).
std::optional<std::vector<Fact>> find_witness_walk(const GraphDB& d,
                                                   const EpsNFA& a);
bool satisfies(const GraphDB& d, const EpsNFA& a);

struct Match {
  std::set<Fact> facts;
  std::vector<Fact> walk;  // one representative walk

  Word word() const;
};

// One match per distinct fact set of a walk labeled by a word of the
// language, sorted by fact set. When ε is in the language, the empty walk
// contributes an empty match.
std::vector<Match> enumerate_matches(const GraphDB& d,
                                     const FiniteLanguage& language);

}  // namespace rpqres

#endif  // RPQRES_GRAPHDB_HPP_
