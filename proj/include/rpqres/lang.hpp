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

// Letters, words, explicit finite languages and regular expressions.
//
// Letters are interned: two letters with the same name are the same letter,
// comparisons for equality are pointer comparisons, and ordering is the
// lexicographic order of names (so every ordered container iterates in a
// reproducible order regardless of interning order).

#ifndef RPQRES_LANG_HPP_
#define RPQRES_LANG_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rpqres/common.hpp"

namespace rpqres {

class Letter {
 public:
  // Interns `name`, which must be non-empty and free of whitespace.
  explicit Letter(std::string_view name);

  const std::string& name() const { return *name_; }

  // Single-character names print as themselves, others as `[name]`.
  std::string render() const;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.name_ == b.name_;
  }
  friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    return a.name_->compare(*b.name_) <=> 0;
  }

  std::size_t hash() const { return std::hash<const void*>()(name_); }

 private:
  const std::string* name_;
};

using Word = std::vector<Letter>;
using Alphabet = std::set<Letter>;

// Parses the compact word syntax: one letter per character (UTF-8 code
// point) or `[name]`; "~" and "" denote the empty word.
Word parse_word(std::string_view text);
// Inverse of parse_word; the empty word renders as "~".
std::string render_word(const Word& w);

Word concat(const Word& a, const Word& b);
Word subword(const Word& w, std::size_t from, std::size_t to);

bool is_infix(const Word& alpha, const Word& beta);
bool is_strict_infix(const Word& alpha, const Word& beta);

Word mirror_word(const Word& w);

// Positions i < j with w[i] == w[j], i.e. w = β a γ a δ with |β| = first
// and |βaγ| = second.
struct RepeatedLetter {
  Letter letter;
  std::size_t first;
  std::size_t second;

  std::size_t gap() const { return second - first - 1; }
  Word beta(const Word& w) const { return subword(w, 0, first); }
  Word gamma(const Word& w) const { return subword(w, first + 1, second); }
  Word delta(const Word& w) const { return subword(w, second + 1, w.size()); }
};

// Leftmost-first witness (smallest first position, then smallest second).
std::optional<RepeatedLetter> has_repeated_letter(const Word& w);

class FiniteLanguage {
 public:
  FiniteLanguage() = default;
  FiniteLanguage(std::initializer_list<Word> words);
  explicit FiniteLanguage(std::set<Word> words) : words_(std::move(words)) {}

  // "ab|bc|~" style shorthand: `|`-separated words in the compact syntax.
  static FiniteLanguage parse_inline(std::string_view text);
  // Newline-separated word list; blank lines and `#` comments ignored.
  static FiniteLanguage parse_list(std::string_view text);
  std::string serialize() const;
  // "ab|bc" rendering; "∅" when empty.
  std::string render() const;

  const std::set<Word>& words() const { return words_; }
  bool contains(const Word& w) const { return words_.count(w) > 0; }
  bool contains_empty_word() const { return contains(Word{}); }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  Alphabet alphabet() const;
  std::size_t max_length() const;

  void insert(Word w) { words_.insert(std::move(w)); }

  friend bool operator==(const FiniteLanguage&, const FiniteLanguage&) = default;

 private:
  std::set<Word> words_;
};

// red(L): the words of L having no strict infix in L.
FiniteLanguage reduce_finite(const FiniteLanguage& language);
bool is_reduced_finite(const FiniteLanguage& language);
FiniteLanguage mirror_finite(const FiniteLanguage& language);

struct MaximalGapWord {
  Word word;
  RepeatedLetter decomposition;
};

// Words of `language` maximizing the gap |γ| between two occurrences of a
// repeated letter, then the total length; lexicographic order, each with the
// leftmost decomposition achieving the gap. Throws InputError when no word
// has a repeated letter.
std::vector<MaximalGapWord> maximal_gap_words(const FiniteLanguage& language);

// Regular expression syntax tree.
struct Regex {
  enum class Kind { kEmpty, kEpsilon, kLetter, kConcat, kUnion, kStar };

  Kind kind = Kind::kEmpty;
  std::optional<Letter> letter;  // kLetter only
  std::vector<Regex> children;   // kConcat / kUnion (>= 2), kStar (1)

  static Regex empty() { return Regex{}; }
  static Regex epsilon() { return Regex{Kind::kEpsilon, std::nullopt, {}}; }
  static Regex of(Letter a) { return Regex{Kind::kLetter, a, {}}; }
  static Regex concat(std::vector<Regex> parts);
  static Regex alt(std::vector<Regex> parts);
  static Regex star(Regex child);

  Alphabet alphabet() const;

  friend bool operator==(const Regex&, const Regex&) = default;
};

// Dialect: juxtaposition concatenates, `|` is union, postfix `*`, `(`/`)`
// group, single characters or `[name]` are letters, `~` is the empty word,
// `∅` or `0` the empty language. Whitespace is ignored. Throws ParseError
// with the byte offset of the problem.
Regex parse_regex(std::string_view text);
// Minimal-parenthesis printer; parse_regex(print_regex(r)) == r for trees
// produced by parse_regex.
std::string print_regex(const Regex& r);

}  // namespace rpqres

template <>
struct std::hash<rpqres::Letter> {
  std::size_t operator()(const rpqres::Letter& a) const { return a.hash(); }
};

#endif  // RPQRES_LANG_HPP_
