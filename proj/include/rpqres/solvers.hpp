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

// Resilience solvers. All of them work under bag semantics; set semantics
// is the special case of unit multiplicities.

#ifndef RPQRES_SOLVERS_HPP_
#define RPQRES_SOLVERS_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "rpqres/automata.hpp"
#include "rpqres/classifier.hpp"
#include "rpqres/common.hpp"
#include "rpqres/graphdb.hpp"

namespace rpqres {

inline constexpr std::size_t kDefaultExactFactCap = 22;
inline constexpr std::size_t kDefaultSubmodCap = 20;

struct ResilienceAnswer {
  Cost value;
  // Sorted; a minimum contingency set when value is finite, empty otherwise.
  std::vector<Fact> contingency;
  Method method = Method::kExact;
};

// Branch and bound over the facts of shortest witness walks. Throws
// ResourceError when D has more than `max_facts` facts.
ResilienceAnswer resilience_exact(const GraphDB& d, const EpsNFA& a,
                                  std::size_t max_facts = kDefaultExactFactCap);

// Min cut of the product of D with the read-once automaton of L(a). Unless
// `promise_local` is set, locality is checked first and a RefusalError is
// raised when L(a) is not local.
ResilienceAnswer resilience_local(const GraphDB& d, const EpsNFA& a,
                                  bool promise_local = false,
                                  std::size_t cap = kDefaultStateCap);

// Explicit words of an automaton for a chain language. Throws InputError
// naming the offending letter when the language is not a chain language.
FiniteLanguage extract_word_list(const EpsNFA& a);

// Throws RefusalError when L is not a bipartite chain language.
ResilienceAnswer resilience_bcl(const GraphDB& d,
                                const FiniteLanguage& language);
ResilienceAnswer resilience_bcl(const GraphDB& d, const EpsNFA& a);

// L = {a₁…aₙ, aₙ₋₁aₙ₊₁} with `chain` = a₁…aₙ and `extra` = aₙ₊₁. Minimizes
// over the elements having both an incoming aₙ₋₁-fact and an outgoing
// aₙ₊₁-fact; throws ResourceError when there are more than `cap` of them.
ResilienceAnswer resilience_submod(const GraphDB& d, const Word& chain,
                                   Letter extra,
                                   std::size_t cap = kDefaultSubmodCap);
// Detects the pattern (or its mirror). Throws RefusalError otherwise.
ResilienceAnswer resilience_submod(const GraphDB& d,
                                   const FiniteLanguage& language,
                                   std::size_t cap = kDefaultSubmodCap);

// Resilience of the single word `chain` once the facts labeled by its last
// letter whose tail is in `removed_tails` are deleted.
Cost chain_resilience_without_tails(const GraphDB& d, const Word& chain,
                                    const std::set<Node>& removed_tails);

enum class Semantics { kSet, kBag };
enum class SolverChoice { kAuto, kLocal, kBcl, kSubmod, kExact };

struct SolveOptions {
  std::size_t exact_fact_cap = kDefaultExactFactCap;
  std::size_t submod_cap = kDefaultSubmodCap;
  std::size_t state_cap = kDefaultStateCap;
};

// `kAuto` picks the tractable method named by the classifier and falls back
// to the exact solver.
ResilienceAnswer resilience(const GraphDB& d, const LanguageSpec& language,
                            Semantics semantics,
                            SolverChoice solver = SolverChoice::kAuto,
                            const SolveOptions& options = {});

}  // namespace rpqres

#endif  // RPQRES_SOLVERS_HPP_
