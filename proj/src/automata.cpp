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

#include "rpqres/automata.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace rpqres {
namespace {

struct Adjacency {
  std::vector<std::vector<StateId>> eps;
  std::vector<std::vector<std::pair<Letter, StateId>>> letters;

  explicit Adjacency(const EpsNFA& a)
      : eps(a.num_states()), letters(a.num_states()) {
    for (const Transition& t : a.transitions()) {
      if (t.is_epsilon()) {
        eps[t.src].push_back(t.dst);
      } else {
        letters[t.src].emplace_back(*t.label, t.dst);
      }
    }
  }

  std::vector<StateId> closure(std::vector<StateId> states) const {
    std::vector<bool> seen(eps.size(), false);
    std::vector<StateId> stack;
    for (StateId s : states) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
    std::vector<StateId> out;
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      out.push_back(s);
      for (StateId t : eps[s]) {
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<StateId> step(const std::vector<StateId>& states,
                            Letter a) const {
    std::vector<StateId> next;
    for (StateId s : states) {
      for (const auto& [b, t] : letters[s]) {
        if (b == a) next.push_back(t);
      }
    }
    return closure(std::move(next));
  }
};

std::vector<bool> reach(std::size_t n,
                        const std::vector<std::vector<StateId>>& succ,
                        const std::set<StateId>& from) {
  std::vector<bool> seen(n, false);
  std::vector<StateId> stack(from.begin(), from.end());
  for (StateId s : from) seen[s] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId t : succ[s]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

StateId parse_state(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return static_cast<StateId>(v);
  } catch (const std::logic_error&) {
    throw ParseError("bad state id '" + tok + "'", line_no);
  }
}

// Copies the states and transitions of `a` into `out` with ids shifted by
// `offset`; returns offset.
StateId embed(const EpsNFA& a, EpsNFA& out) {
  StateId offset = static_cast<StateId>(out.num_states());
  for (std::size_t i = 0; i < a.num_states(); ++i) out.add_state();
  for (const Transition& t : a.transitions()) {
    out.add_transition(t.src + offset, t.label, t.dst + offset);
  }
  for (Letter c : a.alphabet()) out.add_letter(c);
  return offset;
}

// Pairwise product of two complete DFAs over the same letters; a pair is
// final when keep(final_a, final_b).
template <typename Keep>
Dfa dfa_product(const Dfa& a, const Dfa& b, const Alphabet& sigma,
                std::size_t cap, Keep keep) {
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> queue;
  ids[{a.initial(), b.initial()}] = 0;
  queue.emplace_back(a.initial(), b.initial());
  std::vector<std::vector<StateId>> next_table;
  std::size_t k = a.letters().size();
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [p, q] = queue[i];
    std::vector<StateId> row(k);
    for (std::size_t c = 0; c < k; ++c) {
      std::pair<StateId, StateId> nxt{a.next(p, c), b.next(q, c)};
      auto it = ids.find(nxt);
      if (it == ids.end()) {
        if (ids.size() >= cap) {
          throw ResourceError("product automaton exceeds the state cap of " +
                              std::to_string(cap));
        }
        it = ids.emplace(nxt, static_cast<StateId>(queue.size())).first;
        queue.push_back(nxt);
      }
      row[c] = it->second;
    }
    next_table.push_back(std::move(row));
  }
  Dfa out(sigma, queue.size(), 0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      out.set_next(static_cast<StateId>(i), c, next_table[i][c]);
    }
    out.set_final(static_cast<StateId>(i),
                  keep(a.is_final(queue[i].first), b.is_final(queue[i].second)));
  }
  return out;
}

}  // namespace

void EpsNFA::check_state(StateId s) const {
  if (s >= num_states_) {
    throw InputError("state " + std::to_string(s) + " out of range");
  }
}

void EpsNFA::add_initial(StateId s) {
  check_state(s);
  initial_.insert(s);
}

void EpsNFA::add_final(StateId s) {
  check_state(s);
  final_.insert(s);
}

void EpsNFA::add_transition(StateId src, std::optional<Letter> label,
                            StateId dst) {
  check_state(src);
  check_state(dst);
  if (label) alphabet_.insert(*label);
  transitions_.push_back({src, label, dst});
}

bool EpsNFA::has_epsilon() const {
  return std::any_of(transitions_.begin(), transitions_.end(),
                     [](const Transition& t) { return t.is_epsilon(); });
}

bool EpsNFA::is_read_once() const {
  std::set<Letter> seen;
  for (const Transition& t : transitions_) {
    if (t.label && !seen.insert(*t.label).second) return false;
  }
  return true;
}

bool EpsNFA::is_deterministic() const {
  if (initial_.size() != 1) return false;
  std::set<std::pair<StateId, Letter>> seen;
  for (const Transition& t : transitions_) {
    if (t.is_epsilon()) return false;
    if (!seen.emplace(t.src, *t.label).second) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> EpsNFA::outgoing() const {
  std::vector<std::vector<std::size_t>> out(num_states_);
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    out[transitions_[i].src].push_back(i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> EpsNFA::incoming() const {
  std::vector<std::vector<std::size_t>> in(num_states_);
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    in[transitions_[i].dst].push_back(i);
  }
  return in;
}

EpsNFA EpsNFA::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<EpsNFA> a;
  auto need_states = [&](std::size_t at) -> EpsNFA& {
    if (!a) throw ParseError("'states' header must come first", at);
    return *a;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "states") {
        if (a) throw ParseError("duplicate 'states' header", line_no);
        if (tok.size() != 2) throw ParseError("expected 'states N'", line_no);
        a.emplace(parse_state(tok[1], line_no));
      } else if (tok[0] == "initial" || tok[0] == "final") {
        EpsNFA& aut = need_states(line_no);
        for (std::size_t i = 1; i < tok.size(); ++i) {
          StateId s = parse_state(tok[i], line_no);
          tok[0] == "initial" ? aut.add_initial(s) : aut.add_final(s);
        }
      } else if (tok[0] == "alphabet") {
        EpsNFA& aut = need_states(line_no);
        for (std::size_t i = 1; i < tok.size(); ++i) {
          aut.add_letter(Letter(tok[i]));
        }
      } else {
        EpsNFA& aut = need_states(line_no);
        if (tok.size() != 3) {
          throw ParseError("expected 'src label dst'", line_no);
        }
        std::optional<Letter> label;
        if (tok[1] != "EPS") label = Letter(tok[1]);
        aut.add_transition(parse_state(tok[0], line_no), label,
                           parse_state(tok[2], line_no));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!a) throw ParseError("missing 'states' header", line_no);
  return *a;
}

std::string EpsNFA::serialize() const {
  std::ostringstream out;
  out << "states " << num_states_ << "\ninitial";
  for (StateId s : initial_) out << ' ' << s;
  out << "\nfinal";
  for (StateId s : final_) out << ' ' << s;
  out << "\nalphabet";
  for (Letter c : alphabet_) out << ' ' << c.name();
  out << '\n';
  for (const Transition& t : transitions_) {
    out << t.src << '\t' << (t.label ? t.label->name() : "EPS") << '\t'
        << t.dst << '\n';
  }
  return out.str();
}

Dfa::Dfa(const Alphabet& sigma, std::size_t num_states, StateId initial)
    : letters_(sigma.begin(), sigma.end()),
      table_(num_states * sigma.size(), 0),
      final_(num_states, false),
      initial_(initial) {}

std::optional<std::size_t> Dfa::letter_index(Letter a) const {
  auto it = std::lower_bound(letters_.begin(), letters_.end(), a);
  if (it == letters_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - letters_.begin());
}

bool Dfa::accepts(const Word& w) const {
  StateId s = initial_;
  for (Letter a : w) {
    auto idx = letter_index(a);
    if (!idx) return false;
    s = next(s, *idx);
  }
  return is_final(s);
}

EpsNFA Dfa::to_nfa() const {
  std::size_t n = num_states();
  std::vector<std::vector<StateId>> succ(n), pred(n);
  for (StateId s = 0; s < n; ++s) {
    for (std::size_t c = 0; c < letters_.size(); ++c) {
      succ[s].push_back(next(s, c));
      pred[next(s, c)].push_back(s);
    }
  }
  std::set<StateId> finals;
  for (StateId s = 0; s < n; ++s) {
    if (final_[s]) finals.insert(s);
  }
  std::vector<bool> fwd = reach(n, succ, {initial_});
  std::vector<bool> bwd = reach(n, pred, finals);
  Alphabet sigma(letters_.begin(), letters_.end());
  if (!bwd[initial_]) {
    EpsNFA empty;
    for (Letter c : sigma) empty.add_letter(c);
    return empty;
  }
  std::vector<StateId> id(n, 0);
  EpsNFA out;
  for (StateId s = 0; s < n; ++s) {
    if (fwd[s] && bwd[s]) id[s] = out.add_state();
  }
  out.add_initial(id[initial_]);
  for (StateId s = 0; s < n; ++s) {
    if (!(fwd[s] && bwd[s])) continue;
    if (final_[s]) out.add_final(id[s]);
    for (std::size_t c = 0; c < letters_.size(); ++c) {
      StateId t = next(s, c);
      if (fwd[t] && bwd[t]) out.add_transition(id[s], letters_[c], id[t]);
    }
  }
  for (Letter c : sigma) out.add_letter(c);
  return out;
}

namespace {

struct Fragment {
  StateId start;
  StateId end;
};

Fragment thompson(const Regex& r, EpsNFA& a) {
  StateId s = a.add_state();
  switch (r.kind) {
    case Regex::Kind::kEmpty: {
      StateId f = a.add_state();
      return {s, f};
    }
    case Regex::Kind::kEpsilon: {
      StateId f = a.add_state();
      a.add_transition(s, std::nullopt, f);
      return {s, f};
    }
    case Regex::Kind::kLetter: {
      StateId f = a.add_state();
      a.add_transition(s, *r.letter, f);
      return {s, f};
    }
    case Regex::Kind::kConcat: {
      StateId cur = s;
      for (const Regex& c : r.children) {
        Fragment fr = thompson(c, a);
        a.add_transition(cur, std::nullopt, fr.start);
        cur = fr.end;
      }
      return {s, cur};
    }
    case Regex::Kind::kUnion: {
      std::vector<Fragment> parts;
      for (const Regex& c : r.children) parts.push_back(thompson(c, a));
      StateId f = a.add_state();
      for (const Fragment& fr : parts) {
        a.add_transition(s, std::nullopt, fr.start);
        a.add_transition(fr.end, std::nullopt, f);
      }
      return {s, f};
    }
    case Regex::Kind::kStar: {
      Fragment fr = thompson(r.children[0], a);
      StateId f = a.add_state();
      a.add_transition(s, std::nullopt, fr.start);
      a.add_transition(s, std::nullopt, f);
      a.add_transition(fr.end, std::nullopt, fr.start);
      a.add_transition(fr.end, std::nullopt, f);
      return {s, f};
    }
  }
  return {s, s};
}

}  // namespace

EpsNFA regex_to_epsnfa(const Regex& r) {
  EpsNFA a;
  Fragment fr = thompson(r, a);
  a.add_initial(fr.start);
  a.add_final(fr.end);
  for (Letter c : r.alphabet()) a.add_letter(c);
  return a;
}

EpsNFA finite_to_epsnfa(const FiniteLanguage& language) {
  EpsNFA a;
  StateId root = a.add_state();
  a.add_initial(root);
  std::map<std::pair<StateId, Letter>, StateId> child;
  for (const Word& w : language.words()) {
    StateId cur = root;
    for (Letter c : w) {
      auto it = child.find({cur, c});
      if (it == child.end()) {
        StateId nxt = a.add_state();
        a.add_transition(cur, c, nxt);
        it = child.emplace(std::make_pair(cur, c), nxt).first;
      }
      cur = it->second;
    }
    a.add_final(cur);
  }
  return a;
}

EpsNFA word_automaton(const Word& w) {
  return finite_to_epsnfa(FiniteLanguage{w});
}

std::vector<StateId> epsilon_closure(const EpsNFA& a,
                                     std::vector<StateId> states) {
  return Adjacency(a).closure(std::move(states));
}

bool accepts(const EpsNFA& a, const Word& w) {
  Adjacency adj(a);
  std::vector<StateId> cur =
      adj.closure({a.initial().begin(), a.initial().end()});
  for (Letter c : w) {
    if (cur.empty()) return false;
    cur = adj.step(cur, c);
  }
  return std::any_of(cur.begin(), cur.end(),
                     [&](StateId s) { return a.is_final(s); });
}

EpsNFA trim(const EpsNFA& a) {
  std::size_t n = a.num_states();
  std::vector<std::vector<StateId>> succ(n), pred(n);
  for (const Transition& t : a.transitions()) {
    succ[t.src].push_back(t.dst);
    pred[t.dst].push_back(t.src);
  }
  std::vector<bool> fwd = reach(n, succ, a.initial());
  std::vector<bool> bwd = reach(n, pred, a.final_states());
  std::vector<StateId> id(n, 0);
  EpsNFA out;
  for (StateId s = 0; s < n; ++s) {
    if (fwd[s] && bwd[s]) id[s] = out.add_state();
  }
  for (StateId s = 0; s < n; ++s) {
    if (!(fwd[s] && bwd[s])) continue;
    if (a.is_initial(s)) out.add_initial(id[s]);
    if (a.is_final(s)) out.add_final(id[s]);
  }
  for (const Transition& t : a.transitions()) {
    if (fwd[t.src] && bwd[t.src] && fwd[t.dst] && bwd[t.dst]) {
      out.add_transition(id[t.src], t.label, id[t.dst]);
    }
  }
  for (Letter c : a.alphabet()) out.add_letter(c);
  return out;
}

EpsNFA product(const EpsNFA& a, const EpsNFA& b) {
  Adjacency aa(a), bb(b);
  EpsNFA out;
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> queue;
  auto get = [&](StateId p, StateId q) {
    auto it = ids.find({p, q});
    if (it != ids.end()) return it->second;
    StateId s = out.add_state();
    ids.emplace(std::make_pair(p, q), s);
    queue.emplace_back(p, q);
    if (a.is_final(p) && b.is_final(q)) out.add_final(s);
    return s;
  };
  for (StateId p : a.initial()) {
    for (StateId q : b.initial()) out.add_initial(get(p, q));
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [p, q] = queue[i];
    StateId s = ids.at({p, q});
    for (StateId p2 : aa.eps[p]) out.add_transition(s, std::nullopt, get(p2, q));
    for (StateId q2 : bb.eps[q]) out.add_transition(s, std::nullopt, get(p, q2));
    for (const auto& [c, p2] : aa.letters[p]) {
      for (const auto& [d, q2] : bb.letters[q]) {
        if (c == d) out.add_transition(s, c, get(p2, q2));
      }
    }
  }
  for (Letter c : a.alphabet()) out.add_letter(c);
  for (Letter c : b.alphabet()) out.add_letter(c);
  return out;
}

EpsNFA union_of(const EpsNFA& a, const EpsNFA& b) {
  EpsNFA out;
  StateId oa = embed(a, out);
  StateId ob = embed(b, out);
  for (StateId s : a.initial()) out.add_initial(s + oa);
  for (StateId s : a.final_states()) out.add_final(s + oa);
  for (StateId s : b.initial()) out.add_initial(s + ob);
  for (StateId s : b.final_states()) out.add_final(s + ob);
  return out;
}

EpsNFA reverse(const EpsNFA& a) {
  EpsNFA out(a.num_states());
  for (StateId s : a.final_states()) out.add_initial(s);
  for (StateId s : a.initial()) out.add_final(s);
  for (const Transition& t : a.transitions()) {
    out.add_transition(t.dst, t.label, t.src);
  }
  for (Letter c : a.alphabet()) out.add_letter(c);
  return out;
}

bool is_empty(const EpsNFA& a) {
  std::vector<std::vector<StateId>> succ(a.num_states());
  for (const Transition& t : a.transitions()) succ[t.src].push_back(t.dst);
  std::vector<bool> seen = reach(a.num_states(), succ, a.initial());
  for (StateId s : a.final_states()) {
    if (seen[s]) return false;
  }
  return true;
}

Dfa determinize(const EpsNFA& a, const Alphabet& sigma, std::size_t cap) {
  Alphabet all = sigma;
  all.insert(a.alphabet().begin(), a.alphabet().end());
  std::vector<Letter> letters(all.begin(), all.end());
  Adjacency adj(a);
  std::map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> queue;
  std::vector<std::vector<StateId>> rows;
  auto start = adj.closure({a.initial().begin(), a.initial().end()});
  ids[start] = 0;
  queue.push_back(start);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::vector<StateId> row(letters.size());
    for (std::size_t c = 0; c < letters.size(); ++c) {
      std::vector<StateId> nxt = adj.step(queue[i], letters[c]);
      auto it = ids.find(nxt);
      if (it == ids.end()) {
        if (ids.size() >= cap) {
          throw ResourceError("determinization exceeds the state cap of " +
                              std::to_string(cap));
        }
        it = ids.emplace(nxt, static_cast<StateId>(queue.size())).first;
        queue.push_back(nxt);
      }
      row[c] = it->second;
    }
    rows.push_back(std::move(row));
  }
  Dfa d(all, queue.size(), 0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t c = 0; c < letters.size(); ++c) {
      d.set_next(static_cast<StateId>(i), c, rows[i][c]);
    }
    d.set_final(static_cast<StateId>(i),
                std::any_of(queue[i].begin(), queue[i].end(),
                            [&](StateId s) { return a.is_final(s); }));
  }
  return d;
}

Dfa determinize(const EpsNFA& a, std::size_t cap) {
  return determinize(a, a.alphabet(), cap);
}

Dfa complement(const Dfa& d) {
  Dfa out = d;
  for (StateId s = 0; s < d.num_states(); ++s) {
    out.set_final(s, !d.is_final(s));
  }
  return out;
}

Dfa minimize(const Dfa& d) {
  std::size_t k = d.letters().size();
  // Reachable states in BFS order.
  std::vector<StateId> order{d.initial()};
  std::vector<bool> seen(d.num_states(), false);
  seen[d.initial()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      StateId t = d.next(order[i], c);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  std::vector<std::size_t> block(d.num_states(), 0);
  for (StateId s : order) block[s] = d.is_final(s) ? 1 : 0;
  std::size_t num_blocks = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> signature;
    std::vector<std::size_t> next_block(d.num_states(), 0);
    for (StateId s : order) {
      std::vector<std::size_t> sig{block[s]};
      for (std::size_t c = 0; c < k; ++c) sig.push_back(block[d.next(s, c)]);
      auto it = signature.emplace(std::move(sig), signature.size()).first;
      next_block[s] = it->second;
    }
    block = std::move(next_block);
    if (signature.size() == num_blocks) break;
    num_blocks = signature.size();
  }
  Alphabet sigma(d.letters().begin(), d.letters().end());
  Dfa out(sigma, num_blocks, static_cast<StateId>(block[d.initial()]));
  for (StateId s : order) {
    auto b = static_cast<StateId>(block[s]);
    out.set_final(b, d.is_final(s));
    for (std::size_t c = 0; c < k; ++c) {
      out.set_next(b, c, static_cast<StateId>(block[d.next(s, c)]));
    }
  }
  return out;
}

bool is_subset(const EpsNFA& a, const EpsNFA& b, std::size_t cap) {
  Alphabet sigma = a.alphabet();
  sigma.insert(b.alphabet().begin(), b.alphabet().end());
  Dfa db = determinize(b, sigma, cap);
  Adjacency adj(a);
  std::set<std::pair<StateId, StateId>> seen;
  std::vector<std::pair<StateId, StateId>> stack;
  for (StateId s : a.initial()) {
    if (seen.emplace(s, db.initial()).second) {
      stack.emplace_back(s, db.initial());
    }
  }
  while (!stack.empty()) {
    auto [s, q] = stack.back();
    stack.pop_back();
    if (a.is_final(s) && !db.is_final(q)) return false;
    auto push = [&](StateId s2, StateId q2) {
      if (seen.emplace(s2, q2).second) stack.emplace_back(s2, q2);
    };
    for (StateId s2 : adj.eps[s]) push(s2, q);
    for (const auto& [c, s2] : adj.letters[s]) {
      push(s2, db.next(q, *db.letter_index(c)));
    }
  }
  return true;
}

bool is_equivalent(const EpsNFA& a, const EpsNFA& b, std::size_t cap) {
  return is_subset(a, b, cap) && is_subset(b, a, cap);
}

bool is_finite(const EpsNFA& a) {
  EpsNFA t = trim(a);
  std::size_t n = t.num_states();
  std::vector<std::vector<StateId>> succ(n), pred(n);
  for (const Transition& tr : t.transitions()) {
    succ[tr.src].push_back(tr.dst);
    pred[tr.dst].push_back(tr.src);
  }
  // Kosaraju: finishing order on succ, then components on pred.
  std::vector<bool> seen(n, false);
  std::vector<StateId> finish;
  for (StateId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      if (i < succ[s].size()) {
        StateId nxt = succ[s][i++];
        if (!seen[nxt]) {
          seen[nxt] = true;
          stack.emplace_back(nxt, 0);
        }
      } else {
        finish.push_back(s);
        stack.pop_back();
      }
    }
  }
  std::vector<std::size_t> comp(n, n);
  std::size_t num = 0;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] != n) continue;
    std::vector<StateId> stack{*it};
    comp[*it] = num;
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      for (StateId p : pred[s]) {
        if (comp[p] == n) {
          comp[p] = num;
          stack.push_back(p);
        }
      }
    }
    ++num;
  }
  for (const Transition& tr : t.transitions()) {
    if (!tr.is_epsilon() && comp[tr.src] == comp[tr.dst]) return false;
  }
  return true;
}

std::set<Word> enumerate_words(const EpsNFA& a, std::size_t max_length) {
  EpsNFA t = trim(a);
  Adjacency adj(t);
  std::set<Word> out;
  std::vector<Letter> letters(t.alphabet().begin(), t.alphabet().end());
  Word w;
  auto rec = [&](auto& self, const std::vector<StateId>& cur) -> void {
    if (std::any_of(cur.begin(), cur.end(),
                    [&](StateId s) { return t.is_final(s); })) {
      out.insert(w);
    }
    if (w.size() == max_length) return;
    for (Letter c : letters) {
      std::vector<StateId> nxt = adj.step(cur, c);
      if (nxt.empty()) continue;
      w.push_back(c);
      self(self, nxt);
      w.pop_back();
    }
  };
  std::vector<StateId> start =
      adj.closure({t.initial().begin(), t.initial().end()});
  if (!start.empty()) rec(rec, start);
  return out;
}

FiniteLanguage to_finite_language(const EpsNFA& a) {
  if (!is_finite(a)) throw InputError("the automaton accepts infinitely many words");
  EpsNFA t = trim(a);
  return FiniteLanguage(enumerate_words(t, t.num_states()));
}

EpsNFA eps_nfa_to_ro(const EpsNFA& a) {
  EpsNFA t = trim(a);
  Adjacency adj(t);
  std::size_t n = t.num_states();
  std::vector<std::vector<StateId>> closure(n);
  std::vector<bool> reaches_final(n, false);
  for (StateId s = 0; s < n; ++s) {
    closure[s] = adj.closure({s});
    reaches_final[s] = std::any_of(closure[s].begin(), closure[s].end(),
                                   [&](StateId x) { return t.is_final(x); });
  }
  std::vector<StateId> start =
      adj.closure({t.initial().begin(), t.initial().end()});
  std::vector<bool> in_start(n, false);
  for (StateId s : start) in_start[s] = true;

  bool has_epsilon_word = std::any_of(
      start.begin(), start.end(), [&](StateId s) { return t.is_final(s); });
  std::set<Letter> sigma_start, sigma_end;
  std::set<std::pair<Letter, Letter>> pi;
  for (const Transition& tr : t.transitions()) {
    if (tr.is_epsilon()) continue;
    if (in_start[tr.src]) sigma_start.insert(*tr.label);
    if (reaches_final[tr.dst]) sigma_end.insert(*tr.label);
    for (StateId p : closure[tr.dst]) {
      for (const auto& [b, unused] : adj.letters[p]) {
        pi.emplace(*tr.label, b);
      }
    }
  }

  EpsNFA out;
  std::map<Letter, std::pair<StateId, StateId>> io;
  for (Letter c : a.alphabet()) {
    StateId in = out.add_state();
    StateId o = out.add_state();
    out.add_transition(in, c, o);
    io.emplace(c, std::make_pair(in, o));
  }
  for (Letter c : sigma_start) out.add_initial(io.at(c).first);
  for (Letter c : sigma_end) out.add_final(io.at(c).second);
  for (const auto& [x, y] : pi) {
    out.add_transition(io.at(x).second, std::nullopt, io.at(y).first);
  }
  if (has_epsilon_word) {
    StateId s = out.add_state();
    out.add_initial(s);
    out.add_final(s);
  }
  return out;
}

bool is_local_dfa(const EpsNFA& a) {
  if (!a.is_deterministic()) {
    throw InputError("is_local_dfa requires a deterministic automaton");
  }
  std::map<Letter, StateId> target;
  for (const Transition& t : a.transitions()) {
    auto [it, inserted] = target.emplace(*t.label, t.dst);
    if (!inserted && it->second != t.dst) return false;
  }
  return true;
}

bool is_local_language(const EpsNFA& a, std::size_t cap) {
  return is_subset(eps_nfa_to_ro(a), a, cap);
}

std::optional<CartesianCounterexample> find_cartesian_counterexample(
    const FiniteLanguage& language) {
  for (const Word& w1 : language.words()) {
    for (std::size_t i = w1.size(); i-- > 0;) {
      for (const Word& w2 : language.words()) {
        for (std::size_t j = 0; j < w2.size(); ++j) {
          if (w1[i] != w2[j]) continue;
          Word alpha = subword(w1, 0, i);
          Word delta = subword(w2, j + 1, w2.size());
          Word joined = alpha;
          joined.push_back(w1[i]);
          joined.insert(joined.end(), delta.begin(), delta.end());
          if (!language.contains(joined)) {
            return CartesianCounterexample{w1[i], std::move(alpha),
                                           subword(w1, i + 1, w1.size()),
                                           subword(w2, 0, j),
                                           std::move(delta)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool is_letter_cartesian_finite(const FiniteLanguage& language) {
  return !find_cartesian_counterexample(language).has_value();
}

EpsNFA strict_infix_extension(const EpsNFA& a) {
  const Alphabet& sigma = a.alphabet();
  EpsNFA out;
  // Σ⁺ L Σ*
  {
    StateId x0 = out.add_state();
    StateId x1 = out.add_state();
    StateId off = embed(a, out);
    StateId y = out.add_state();
    out.add_initial(x0);
    out.add_final(y);
    for (Letter c : sigma) {
      out.add_transition(x0, c, x1);
      out.add_transition(x1, c, x1);
      out.add_transition(y, c, y);
    }
    for (StateId s : a.initial()) out.add_transition(x1, std::nullopt, s + off);
    for (StateId s : a.final_states()) {
      out.add_transition(s + off, std::nullopt, y);
    }
  }
  // Σ* L Σ⁺
  {
    StateId x = out.add_state();
    StateId off = embed(a, out);
    StateId y0 = out.add_state();
    StateId y1 = out.add_state();
    out.add_initial(x);
    out.add_final(y1);
    for (Letter c : sigma) {
      out.add_transition(x, c, x);
      out.add_transition(y0, c, y1);
      out.add_transition(y1, c, y1);
    }
    for (StateId s : a.initial()) out.add_transition(x, std::nullopt, s + off);
    for (StateId s : a.final_states()) {
      out.add_transition(s + off, std::nullopt, y0);
    }
  }
  return out;
}

Dfa reduce_regular(const EpsNFA& a, std::size_t cap) {
  const Alphabet& sigma = a.alphabet();
  Dfa da = determinize(a, sigma, cap);
  Dfa de = determinize(strict_infix_extension(a), sigma, cap);
  Dfa red = dfa_product(da, de, sigma, cap,
                        [](bool fa, bool fe) { return fa && !fe; });
  return minimize(red);
}

bool is_reduced_regular(const EpsNFA& a) {
  return is_empty(product(a, strict_infix_extension(a)));
}

EpsNFA insert_one(const EpsNFA& a, Letter e) {
  EpsNFA out;
  StateId c0 = embed(a, out);
  StateId c1 = embed(a, out);
  for (StateId s = 0; s < a.num_states(); ++s) {
    out.add_transition(s + c0, e, s + c1);
  }
  for (StateId s : a.initial()) out.add_initial(s + c0);
  for (StateId s : a.final_states()) out.add_final(s + c1);
  out.add_letter(e);
  return out;
}

EpsNFA delete_one(const EpsNFA& a, Letter e) {
  EpsNFA out;
  StateId c0 = embed(a, out);
  StateId c1 = embed(a, out);
  for (const Transition& t : a.transitions()) {
    if (t.label == e) out.add_transition(t.src + c0, std::nullopt, t.dst + c1);
  }
  for (StateId s : a.initial()) out.add_initial(s + c0);
  for (StateId s : a.final_states()) out.add_final(s + c1);
  out.add_letter(e);
  return out;
}

bool is_neutral_letter(const EpsNFA& a, Letter e, std::size_t cap) {
  return is_subset(insert_one(a, e), a, cap) &&
         is_subset(delete_one(a, e), a, cap);
}

bool is_aperiodic(const Dfa& d, std::size_t cap) {
  Dfa m = minimize(d);
  std::size_t n = m.num_states();
  std::size_t k = m.letters().size();
  using Fn = std::vector<StateId>;
  auto compose = [&](const Fn& f, const Fn& g) {
    Fn h(n);
    for (std::size_t s = 0; s < n; ++s) h[s] = g[f[s]];
    return h;
  };
  std::vector<Fn> gens(k, Fn(n));
  for (std::size_t c = 0; c < k; ++c) {
    for (StateId s = 0; s < n; ++s) gens[c][s] = m.next(s, c);
  }
  Fn identity(n);
  for (StateId s = 0; s < n; ++s) identity[s] = s;
  std::set<Fn> monoid{identity};
  std::vector<Fn> queue{identity};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Fn& g : gens) {
      Fn h = compose(queue[i], g);
      if (monoid.insert(h).second) {
        if (monoid.size() > cap) {
          throw ResourceError("transition monoid exceeds the cap of " +
                              std::to_string(cap));
        }
        queue.push_back(std::move(h));
      }
    }
  }
  for (const Fn& f : queue) {
    // Powers f, f², ... eventually cycle; aperiodic iff the cycle has
    // length one.
    std::map<Fn, std::size_t> index;
    Fn p = f;
    for (std::size_t j = 0;; ++j) {
      auto [it, inserted] = index.emplace(p, j);
      if (!inserted) {
        if (j - it->second != 1) return false;
        break;
      }
      p = compose(p, f);
    }
  }
  return true;
}

}  // namespace rpqres
