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

// Minimum s-t cuts with capacities in N ∪ {inf}.

#ifndef RPQRES_FLOW_HPP_
#define RPQRES_FLOW_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "rpqres/common.hpp"

namespace rpqres {

struct FlowEdge {
  std::size_t from;
  std::size_t to;
  Cost capacity;
};

class FlowNetwork {
 public:
  // Throws InputError if source == target or either is out of range.
  FlowNetwork(std::size_t num_vertices, std::size_t source,
              std::size_t target);

  std::size_t add_vertex() { return num_vertices_++; }
  // Parallel edges are kept. Returns the edge index.
  std::size_t add_edge(std::size_t from, std::size_t to, Cost capacity);

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t source() const { return source_; }
  std::size_t target() const { return target_; }
  const std::vector<FlowEdge>& edges() const { return edges_; }

  // "from to capacity" per line, INF for infinite capacities.
  std::string dump() const;

 private:
  std::size_t num_vertices_;
  std::size_t source_;
  std::size_t target_;
  std::vector<FlowEdge> edges_;
};

struct CutResult {
  Cost value;
  std::vector<std::size_t> edges;  // edge indices, increasing
};

// Blocking-flow max flow; the cut is read off the residual graph. Returns
// an infinite value with no edges when some source-target path consists of
// infinite edges only.
CutResult min_cut(const FlowNetwork& n);

// True iff no source-target path survives once `edges` are removed.
bool check_cut(const FlowNetwork& n, const std::vector<std::size_t>& edges);

}  // namespace rpqres

#endif  // RPQRES_FLOW_HPP_
