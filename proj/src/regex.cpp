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

#include <string>

#include "rpqres/lang.hpp"

namespace rpqres {
namespace {

constexpr std::string_view kEmptySet = "∅";

// Recursive-descent parser over the grammar
//   alt    := concat ('|' concat)*
//   concat := postfix+
//   postfix:= atom '*'*
//   atom   := letter | '~' | '∅' | '0' | '(' alt ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Regex parse() {
    Regex r = parse_alt();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'",
                       pos_);
    }
    return r;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c != '|' && c != ')' && c != '*';
  }

  Regex parse_alt() {
    std::vector<Regex> parts;
    parts.push_back(parse_concat());
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      parts.push_back(parse_concat());
      skip_space();
    }
    return Regex::alt(std::move(parts));
  }

  Regex parse_concat() {
    if (!at_atom_start()) {
      throw ParseError("expected an expression", pos_);
    }
    std::vector<Regex> parts;
    while (at_atom_start()) parts.push_back(parse_postfix());
    return Regex::concat(std::move(parts));
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      r = Regex::star(std::move(r));
      skip_space();
    }
    return r;
  }

  Regex parse_atom() {
    skip_space();
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Regex inner = parse_alt();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw ParseError("missing ')' for '(' opened", start);
      }
      ++pos_;
      return inner;
    }
    if (c == '~') {
      ++pos_;
      return Regex::epsilon();
    }
    if (c == '0') {
      ++pos_;
      return Regex::empty();
    }
    if (text_.substr(pos_, kEmptySet.size()) == kEmptySet) {
      pos_ += kEmptySet.size();
      return Regex::empty();
    }
    if (c == '[') {
      std::size_t close = text_.find(']', pos_);
      if (close == std::string_view::npos) {
        throw ParseError("unterminated '['", start);
      }
      if (close == pos_ + 1) throw ParseError("empty letter name", start);
      std::string_view name = text_.substr(pos_ + 1, close - pos_ - 1);
      for (char ch : name) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '[') {
          throw ParseError("invalid character in letter name", start);
        }
      }
      pos_ = close + 1;
      return Regex::of(Letter(name));
    }
    if (c == ']') throw ParseError("unexpected ']'", start);
    std::size_t len = 1;
    auto lead = static_cast<unsigned char>(c);
    if ((lead >> 5) == 0x6) {
      len = 2;
    } else if ((lead >> 4) == 0xe) {
      len = 3;
    } else if ((lead >> 3) == 0x1e) {
      len = 4;
    }
    if (pos_ + len > text_.size()) {
      throw ParseError("truncated UTF-8 sequence", start);
    }
    Letter a(text_.substr(pos_, len));
    pos_ += len;
    return Regex::of(a);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Precedence levels: 0 = union, 1 = concat, 2 = star/atom.
int level(const Regex& r) {
  switch (r.kind) {
    case Regex::Kind::kUnion:
      return 0;
    case Regex::Kind::kConcat:
      return 1;
    default:
      return 2;
  }
}

void print(const Regex& r, int min_level, std::string& out) {
  bool parens = level(r) < min_level;
  if (parens) out += "(";
  switch (r.kind) {
    case Regex::Kind::kEmpty:
      out += kEmptySet;
      break;
    case Regex::Kind::kEpsilon:
      out += "~";
      break;
    case Regex::Kind::kLetter:
      out += r.letter->render();
      break;
    case Regex::Kind::kConcat:
      for (const Regex& c : r.children) print(c, 2, out);
      break;
    case Regex::Kind::kUnion:
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i > 0) out += "|";
        print(r.children[i], 1, out);
      }
      break;
    case Regex::Kind::kStar:
      print(r.children[0], 2, out);
      out += "*";
      break;
  }
  if (parens) out += ")";
}

void collect_alphabet(const Regex& r, Alphabet& sigma) {
  if (r.kind == Regex::Kind::kLetter) sigma.insert(*r.letter);
  for (const Regex& c : r.children) collect_alphabet(c, sigma);
}

}  // namespace

Regex Regex::concat(std::vector<Regex> parts) {
  std::vector<Regex> flat;
  for (Regex& p : parts) {
    if (p.kind == Kind::kConcat) {
      for (Regex& c : p.children) flat.push_back(std::move(c));
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return epsilon();
  if (flat.size() == 1) return std::move(flat[0]);
  return Regex{Kind::kConcat, std::nullopt, std::move(flat)};
}

Regex Regex::alt(std::vector<Regex> parts) {
  std::vector<Regex> flat;
  for (Regex& p : parts) {
    if (p.kind == Kind::kUnion) {
      for (Regex& c : p.children) flat.push_back(std::move(c));
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return empty();
  if (flat.size() == 1) return std::move(flat[0]);
  return Regex{Kind::kUnion, std::nullopt, std::move(flat)};
}

Regex Regex::star(Regex child) {
  std::vector<Regex> children;
  children.push_back(std::move(child));
  return Regex{Kind::kStar, std::nullopt, std::move(children)};
}

Alphabet Regex::alphabet() const {
  Alphabet sigma;
  collect_alphabet(*this, sigma);
  return sigma;
}

Regex parse_regex(std::string_view text) { return Parser(text).parse(); }

std::string print_regex(const Regex& r) {
  std::string out;
  print(r, 0, out);
  return out;
}

}  // namespace rpqres
