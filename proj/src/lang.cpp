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

#include "rpqres/lang.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace rpqres {
namespace {

// Node-based storage: element addresses are stable for the process lifetime.
class Interner {
 public:
  const std::string* intern(std::string_view name) {
    std::lock_guard<std::mutex> lock(mu_);
    return &*names_.emplace(name).first;
  }

 private:
  std::mutex mu_;
  std::unordered_set<std::string> names_;
};

Interner& interner() {
  static Interner* instance = new Interner();
  return *instance;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Length in bytes of the UTF-8 sequence starting with `lead`.
std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;
}

}  // namespace

Letter::Letter(std::string_view name) {
  if (name.empty()) throw InputError("empty letter name");
  for (char c : name) {
    if (is_space(c)) throw InputError("letter name contains whitespace");
  }
  name_ = interner().intern(name);
}

std::string Letter::render() const {
  const std::string& n = *name_;
  if (utf8_length(static_cast<unsigned char>(n[0])) == n.size()) {
    static const std::string kSpecial = "|*()[]~0#";
    if (n.size() > 1 || kSpecial.find(n[0]) == std::string::npos) return n;
  }
  return "[" + n + "]";
}

Word parse_word(std::string_view text) {
  Word w;
  if (text == "~") return w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] == '[') {
      std::size_t close = text.find(']', i);
      if (close == std::string_view::npos || close == i + 1) {
        throw ParseError("unterminated or empty bracketed letter", i);
      }
      w.emplace_back(text.substr(i + 1, close - i - 1));
      i = close + 1;
      continue;
    }
    if (text[i] == '~') {
      ++i;
      continue;
    }
    std::size_t len = utf8_length(static_cast<unsigned char>(text[i]));
    w.emplace_back(text.substr(i, len));
    i += len;
  }
  return w;
}

std::string render_word(const Word& w) {
  if (w.empty()) return "~";
  std::string out;
  for (const Letter& a : w) out += a.render();
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word subword(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
              w.begin() + static_cast<std::ptrdiff_t>(to));
}

bool is_infix(const Word& alpha, const Word& beta) {
  if (alpha.size() > beta.size()) return false;
  return std::search(beta.begin(), beta.end(), alpha.begin(), alpha.end()) !=
             beta.end() ||
         alpha.empty();
}

bool is_strict_infix(const Word& alpha, const Word& beta) {
  return alpha.size() < beta.size() && is_infix(alpha, beta);
}

Word mirror_word(const Word& w) { return Word(w.rbegin(), w.rend()); }

std::optional<RepeatedLetter> has_repeated_letter(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[i] == w[j]) return RepeatedLetter{w[i], i, j};
    }
  }
  return std::nullopt;
}

FiniteLanguage::FiniteLanguage(std::initializer_list<Word> words)
    : words_(words) {}

FiniteLanguage FiniteLanguage::parse_inline(std::string_view text) {
  FiniteLanguage out;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = text.find('|', start);
    std::string_view piece = text.substr(
        start, bar == std::string_view::npos ? std::string_view::npos
                                             : bar - start);
    out.insert(parse_word(piece));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

FiniteLanguage FiniteLanguage::parse_list(std::string_view text) {
  FiniteLanguage out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = 0;
    while (b < line.size() && is_space(line[b])) ++b;
    std::size_t e = line.size();
    while (e > b && is_space(line[e - 1])) --e;
    if (b == e) continue;
    try {
      out.insert(parse_word(std::string_view(line).substr(b, e - b)));
    } catch (const ParseError& err) {
      throw ParseError(std::string("bad word: ") + err.what(), line_no);
    }
  }
  return out;
}

std::string FiniteLanguage::serialize() const {
  std::string out;
  for (const Word& w : words_) out += render_word(w) + "\n";
  return out;
}

std::string FiniteLanguage::render() const {
  if (words_.empty()) return "∅";
  std::string out;
  for (const Word& w : words_) {
    if (!out.empty()) out += "|";
    out += render_word(w);
  }
  return out;
}

Alphabet FiniteLanguage::alphabet() const {
  Alphabet sigma;
  for (const Word& w : words_) sigma.insert(w.begin(), w.end());
  return sigma;
}

std::size_t FiniteLanguage::max_length() const {
  std::size_t m = 0;
  for (const Word& w : words_) m = std::max(m, w.size());
  return m;
}

FiniteLanguage reduce_finite(const FiniteLanguage& language) {
  FiniteLanguage out;
  for (const Word& beta : language.words()) {
    bool keep = true;
    for (const Word& alpha : language.words()) {
      if (is_strict_infix(alpha, beta)) {
        keep = false;
        break;
      }
    }
    if (keep) out.insert(beta);
  }
  return out;
}

bool is_reduced_finite(const FiniteLanguage& language) {
  return reduce_finite(language).size() == language.size();
}

FiniteLanguage mirror_finite(const FiniteLanguage& language) {
  FiniteLanguage out;
  for (const Word& w : language.words()) out.insert(mirror_word(w));
  return out;
}

std::vector<MaximalGapWord> maximal_gap_words(const FiniteLanguage& language) {
  // Best decomposition per word: largest gap, leftmost among ties.
  std::vector<MaximalGapWord> candidates;
  for (const Word& w : language.words()) {
    std::optional<RepeatedLetter> best;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[i] != w[j]) continue;
        RepeatedLetter r{w[i], i, j};
        if (!best || r.gap() > best->gap()) best = r;
      }
    }
    if (best) candidates.push_back({w, *best});
  }
  if (candidates.empty()) {
    throw InputError("no word of the language has a repeated letter");
  }
  std::size_t max_gap = 0;
  for (const auto& c : candidates) {
    max_gap = std::max(max_gap, c.decomposition.gap());
  }
  std::size_t max_len = 0;
  for (const auto& c : candidates) {
    if (c.decomposition.gap() == max_gap) {
      max_len = std::max(max_len, c.word.size());
    }
  }
  std::vector<MaximalGapWord> out;
  for (auto& c : candidates) {
    if (c.decomposition.gap() == max_gap && c.word.size() == max_len) {
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace rpqres
