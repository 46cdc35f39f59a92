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

// Error types and the extended non-negative cost used for capacities and
// resilience values.

#ifndef RPQRES_COMMON_HPP_
#define RPQRES_COMMON_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rpqres {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (text formats, violated preconditions on
// the shape of an argument).
class InputError : public Error {
 public:
  using Error::Error;
};

// Syntax error in a textual input, with the offending position. `position`
// is a 0-based byte offset for regexes and a 1-based line number for
// line-oriented formats.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A configurable cap (states, monoid elements, facts, search budget) was
// exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A solver was asked to handle an input outside of its precondition.
class RefusalError : public Error {
 public:
  using Error::Error;
};

// A value in N ∪ {+inf}. Used both for flow capacities and for resilience.
class Cost {
 public:
  constexpr Cost() = default;
  constexpr explicit Cost(std::uint64_t value) : value_(value) {}

  static constexpr Cost infinite() {
    Cost c;
    c.infinite_ = true;
    return c;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  // Precondition: is_finite().
  std::uint64_t value() const {
    if (infinite_) throw std::logic_error("value() of an infinite cost");
    return value_;
  }

  // Checked addition; inf absorbs. Throws ResourceError on overflow.
  Cost operator+(Cost other) const;
  Cost& operator+=(Cost other) { return *this = *this + other; }

  friend constexpr bool operator==(const Cost& a, const Cost& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Cost& a,
                                                     const Cost& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  // "inf" or the decimal value.
  std::string to_string() const;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Cost& c);

// Tag of the algorithm that produced a resilience value.
enum class Method { kLocal, kBcl, kSubmod, kExact };

// "local", "bcl", "submod", "exact".
std::string method_name(Method m);

// Checked unsigned addition used for multiplicities and capacities.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

}  // namespace rpqres

#endif  // RPQRES_COMMON_HPP_
