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

// Complexity classification of resilience for regular languages.

#ifndef RPQRES_CLASSIFIER_HPP_
#define RPQRES_CLASSIFIER_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rpqres/automata.hpp"
#include "rpqres/common.hpp"
#include "rpqres/lang.hpp"

namespace rpqres {

// A language given as a regex, an explicit word list or an automaton. The
// automaton form is always available; the explicit form is available when
// the language is finite.
class LanguageSpec {
 public:
  static LanguageSpec from_regex(const Regex& r);
  static LanguageSpec from_finite(const FiniteLanguage& language);
  static LanguageSpec from_automaton(const EpsNFA& a);
  static LanguageSpec parse(std::string_view regex_text) {
    return from_regex(parse_regex(regex_text));
  }

  const EpsNFA& automaton() const { return automaton_; }
  const std::optional<FiniteLanguage>& finite() const { return finite_; }
  bool is_finite() const { return finite_.has_value(); }
  // Regex text, word list or "<automaton>".
  std::string describe() const { return description_; }

 private:
  EpsNFA automaton_;
  std::optional<FiniteLanguage> finite_;
  std::string description_;
};

enum class Status { kPtime, kNpHard, kUnknown };

// "PTIME", "NP-hard", "UNKNOWN".
std::string status_name(Status s);

struct Verdict {
  Status status = Status::kUnknown;
  std::optional<Method> method;  // set iff status is kPtime
  std::string reason;
  // Named pieces of evidence, e.g. the legs of a four-legged witness.
  std::map<std::string, std::string> witness;
  std::vector<std::string> notes;

  // "PTIME (local)", "NP-hard (repeated letter)", "UNKNOWN".
  std::string summary() const;
};

// Legs all non-empty. Throws InputError when `language` is not reduced.
std::optional<CartesianCounterexample> is_four_legged_finite(
    const FiniteLanguage& language);

struct ChainReport {
  bool is_chain = true;
  std::optional<Letter> letter;  // offending letter
  std::string violation;
};

ChainReport check_chain_language(const FiniteLanguage& language);
bool is_chain_language(const FiniteLanguage& language);

struct EndpointGraph {
  Alphabet vertices;
  std::set<std::pair<Letter, Letter>> edges;  // first < second
};

EndpointGraph endpoint_graph(const FiniteLanguage& language);

struct BclReport {
  bool is_bcl = false;
  ChainReport chain;
  std::vector<Letter> odd_cycle;       // when the endpoint graph is not bipartite
  std::map<Letter, bool> source_side;  // bipartition of endpoint letters
};

// Greedy two-coloring in letter order; the first letter of every component
// goes to the source side.
BclReport check_bcl(const FiniteLanguage& language);
bool is_bcl(const FiniteLanguage& language);

// L = {a₁…aₙ, aₙ₋₁aₙ₊₁} with distinct letters and n ≥ 2, possibly after
// mirroring. `letters` holds a₁…aₙ₊₁ of the unmirrored form.
struct SubmodPattern {
  std::size_t n;
  std::vector<Letter> letters;
  bool mirrored;
};

std::optional<SubmodPattern> matches_submod_pattern(
    const FiniteLanguage& language);

// True iff some bijection between the alphabets maps one language onto the
// other.
bool isomorphic_up_to_renaming(const FiniteLanguage& a,
                               const FiniteLanguage& b);

// Languages with a dedicated hardness proof.
const std::vector<FiniteLanguage>& known_hard_catalog();
// Catalog entry matching `language` up to renaming and mirror.
std::optional<FiniteLanguage> match_known_hard(const FiniteLanguage& language);

struct ClassifyOptions {
  std::size_t state_cap = kDefaultStateCap;
  std::size_t monoid_cap = kDefaultMonoidCap;
  // Word length bound of the four-legged search on infinite languages.
  std::size_t four_legged_max_length = 6;
};

Verdict classify_finite(const FiniteLanguage& language);
Verdict classify(const LanguageSpec& spec, const ClassifyOptions& options = {});

// Every criterion evaluated independently on a reduced finite language.
struct CriteriaReport {
  bool local = false;
  bool repeated_letter = false;
  bool four_legged = false;
  bool bcl = false;
  bool submod = false;
  bool catalog = false;

  bool any_tractable() const { return local || bcl || submod; }
  bool any_hard() const { return repeated_letter || four_legged || catalog; }
};

CriteriaReport evaluate_criteria(const FiniteLanguage& reduced);

}  // namespace rpqres

#endif  // RPQRES_CLASSIFIER_HPP_
