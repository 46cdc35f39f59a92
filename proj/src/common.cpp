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

#include "rpqres/common.hpp"

namespace rpqres {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw ResourceError("64-bit overflow while summing multiplicities");
  }
  return a + b;
}

Cost Cost::operator+(Cost other) const {
  if (infinite_ || other.infinite_) return infinite();
  return Cost(checked_add(value_, other.value_));
}

std::string Cost::to_string() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const Cost& c) {
  return os << c.to_string();
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kLocal:
      return "local";
    case Method::kBcl:
      return "bcl";
    case Method::kSubmod:
      return "submod";
    case Method::kExact:
      return "exact";
  }
  return "unknown";
}

}  // namespace rpqres
