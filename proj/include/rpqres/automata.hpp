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

// Automata with epsilon transitions, complete DFAs, and the language-level
// decision procedures built on them.

#ifndef RPQRES_AUTOMATA_HPP_
#define RPQRES_AUTOMATA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rpqres/common.hpp"
#include "rpqres/lang.hpp"

namespace rpqres {

using StateId = std::uint32_t;

inline constexpr std::size_t kDefaultStateCap = 100000;
inline constexpr std::size_t kDefaultMonoidCap = 100000;

struct Transition {
  StateId src;
  std::optional<Letter> label;  // nullopt is epsilon
  StateId dst;

  bool is_epsilon() const { return !label.has_value(); }
  friend bool operator==(const Transition&, const Transition&) = default;
};

class EpsNFA {
 public:
  EpsNFA() = default;
  explicit EpsNFA(std::size_t num_states) : num_states_(num_states) {}

  StateId add_state() { return static_cast<StateId>(num_states_++); }
  void add_initial(StateId s);
  void add_final(StateId s);
  // Letter labels are added to the alphabet.
  void add_transition(StateId src, std::optional<Letter> label, StateId dst);
  void add_letter(Letter a) { alphabet_.insert(a); }

  std::size_t num_states() const { return num_states_; }
  const std::set<StateId>& initial() const { return initial_; }
  const std::set<StateId>& final_states() const { return final_; }
  bool is_initial(StateId s) const { return initial_.count(s) > 0; }
  bool is_final(StateId s) const { return final_.count(s) > 0; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Alphabet& alphabet() const { return alphabet_; }

  // |S| + |Δ|.
  std::size_t size() const { return num_states_ + transitions_.size(); }
  bool has_epsilon() const;
  // At most one transition per letter.
  bool is_read_once() const;
  // Exactly one initial state, no epsilon, at most one (s, a, .) per (s, a).
  bool is_deterministic() const;

  // Indices into transitions(), grouped by source state.
  std::vector<std::vector<std::size_t>> outgoing() const;
  // Indices into transitions(), grouped by target state.
  std::vector<std::vector<std::size_t>> incoming() const;

  // Line format:
  //   states N
  //   initial s1 s2 ...
  //   final s1 s2 ...
  //   alphabet a b ...        (optional)
  //   src <TAB> label|EPS <TAB> dst
  // with `#` comments. Throws ParseError with the line number.
  static EpsNFA parse(std::string_view text);
  std::string serialize() const;

 private:
  void check_state(StateId s) const;

  std::size_t num_states_ = 0;
  std::set<StateId> initial_;
  std::set<StateId> final_;
  std::vector<Transition> transitions_;
  Alphabet alphabet_;
};

// Complete deterministic automaton over an explicit ordered alphabet.
class Dfa {
 public:
  Dfa(const Alphabet& sigma, std::size_t num_states, StateId initial);

  const std::vector<Letter>& letters() const { return letters_; }
  std::optional<std::size_t> letter_index(Letter a) const;
  std::size_t num_states() const { return final_.size(); }
  StateId initial() const { return initial_; }

  StateId next(StateId s, std::size_t letter) const {
    return table_[s * letters_.size() + letter];
  }
  void set_next(StateId s, std::size_t letter, StateId t) {
    table_[s * letters_.size() + letter] = t;
  }
  bool is_final(StateId s) const { return final_[s]; }
  void set_final(StateId s, bool f) { final_[s] = f; }

  // Words using letters outside the alphabet are rejected.
  bool accepts(const Word& w) const;
  // The trimmed partial automaton (sink and unreachable states dropped);
  // deterministic when non-empty.
  EpsNFA to_nfa() const;

 private:
  std::vector<Letter> letters_;
  std::vector<StateId> table_;
  std::vector<bool> final_;
  StateId initial_;
};

EpsNFA regex_to_epsnfa(const Regex& r);
// Trie automaton of a finite language.
EpsNFA finite_to_epsnfa(const FiniteLanguage& language);
EpsNFA word_automaton(const Word& w);

bool accepts(const EpsNFA& a, const Word& w);

// Epsilon closure of a set of states (sorted).
std::vector<StateId> epsilon_closure(const EpsNFA& a,
                                     std::vector<StateId> states);

// Keeps the states that are both accessible and co-accessible, renumbered
// in increasing order of their old ids.
EpsNFA trim(const EpsNFA& a);
// L(result) = L(a) ∩ L(b).
EpsNFA product(const EpsNFA& a, const EpsNFA& b);
EpsNFA union_of(const EpsNFA& a, const EpsNFA& b);
// Automaton for the mirror language.
EpsNFA reverse(const EpsNFA& a);
bool is_empty(const EpsNFA& a);

// Subset construction over `sigma` (which must contain a's letters).
// Throws ResourceError beyond `cap` states.
Dfa determinize(const EpsNFA& a, const Alphabet& sigma,
                std::size_t cap = kDefaultStateCap);
Dfa determinize(const EpsNFA& a, std::size_t cap = kDefaultStateCap);
Dfa complement(const Dfa& d);
// Partition refinement over the reachable part.
Dfa minimize(const Dfa& d);

bool is_subset(const EpsNFA& a, const EpsNFA& b,
               std::size_t cap = kDefaultStateCap);
bool is_equivalent(const EpsNFA& a, const EpsNFA& b,
                   std::size_t cap = kDefaultStateCap);

// True iff L(a) is finite.
bool is_finite(const EpsNFA& a);
// All accepted words of length <= max_length, sorted.
std::set<Word> enumerate_words(const EpsNFA& a, std::size_t max_length);
// Precondition: is_finite(a); throws InputError otherwise.
FiniteLanguage to_finite_language(const EpsNFA& a);

// The read-once automaton built from the first letters, last letters,
// consecutive letter pairs and epsilon membership of L(a). Always
// L(a) ⊆ L(result), with equality iff L(a) is local.
EpsNFA eps_nfa_to_ro(const EpsNFA& a);

// All transitions on a given letter share their target. Throws InputError
// when `a` is not deterministic.
bool is_local_dfa(const EpsNFA& a);
bool is_local_language(const EpsNFA& a, std::size_t cap = kDefaultStateCap);

// αxβ ∈ L and γxδ ∈ L but αxδ ∉ L.
struct CartesianCounterexample {
  Letter x;
  Word alpha, beta, gamma, delta;

  friend bool operator==(const CartesianCounterexample&,
                         const CartesianCounterexample&) = default;
};

// Exhaustive over word pairs and positions of a shared letter.
std::optional<CartesianCounterexample> find_cartesian_counterexample(
    const FiniteLanguage& language);
bool is_letter_cartesian_finite(const FiniteLanguage& language);

// Automaton for Σ⁺LΣ* ∪ Σ*LΣ⁺ over the alphabet of `a`.
EpsNFA strict_infix_extension(const EpsNFA& a);
// Minimal DFA of red(L) = L \ (Σ⁺LΣ* ∪ Σ*LΣ⁺).
Dfa reduce_regular(const EpsNFA& a, std::size_t cap = kDefaultStateCap);
bool is_reduced_regular(const EpsNFA& a);

// Languages of words obtained by inserting (resp. deleting) one e.
EpsNFA insert_one(const EpsNFA& a, Letter e);
EpsNFA delete_one(const EpsNFA& a, Letter e);
bool is_neutral_letter(const EpsNFA& a, Letter e,
                       std::size_t cap = kDefaultStateCap);

// Transition monoid of the minimized automaton has only trivial groups.
// Throws ResourceError beyond `cap` monoid elements.
bool is_aperiodic(const Dfa& d, std::size_t cap = kDefaultMonoidCap);

}  // namespace rpqres

#endif  // RPQRES_AUTOMATA_HPP_
