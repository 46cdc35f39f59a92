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

#include "rpqres/flow.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace rpqres {
namespace {

// Residual graph for Dinic's algorithm. Arc 2i is original edge i, arc
// 2i+1 its reverse.
class Dinic {
 public:
  Dinic(std::size_t n, std::size_t s, std::size_t t)
      : adj_(n), level_(n), iter_(n), s_(s), t_(t) {}

  void add(std::size_t from, std::size_t to, std::uint64_t cap) {
    adj_[from].push_back(head_.size());
    head_.push_back(to);
    residual_.push_back(cap);
    adj_[to].push_back(head_.size());
    head_.push_back(from);
    residual_.push_back(0);
  }

  std::uint64_t run() {
    std::uint64_t flow = 0;
    while (bfs()) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (std::uint64_t f =
                 dfs(s_, std::numeric_limits<std::uint64_t>::max())) {
        flow += f;
      }
    }
    return flow;
  }

  // Vertices reachable from the source in the final residual graph.
  std::vector<bool> source_side() {
    bfs();
    std::vector<bool> side(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) side[v] = level_[v] >= 0;
    return side;
  }

 private:
  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{s_};
    level_[s_] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t v = queue[i];
      for (std::size_t arc : adj_[v]) {
        std::size_t w = head_[arc];
        if (residual_[arc] > 0 && level_[w] < 0) {
          level_[w] = level_[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return level_[t_] >= 0;
  }

  std::uint64_t dfs(std::size_t v, std::uint64_t limit) {
    if (v == t_) return limit;
    for (std::size_t& i = iter_[v]; i < adj_[v].size(); ++i) {
      std::size_t arc = adj_[v][i];
      std::size_t w = head_[arc];
      if (residual_[arc] == 0 || level_[w] != level_[v] + 1) continue;
      std::uint64_t pushed = dfs(w, std::min(limit, residual_[arc]));
      if (pushed > 0) {
        residual_[arc] -= pushed;
        residual_[arc ^ 1] += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> head_;
  std::vector<std::uint64_t> residual_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
  std::size_t s_;
  std::size_t t_;
};

bool reaches_target(const FlowNetwork& n, const std::vector<bool>& usable) {
  std::vector<std::vector<std::size_t>> out(n.num_vertices());
  for (std::size_t i = 0; i < n.edges().size(); ++i) {
    if (usable[i]) out[n.edges()[i].from].push_back(n.edges()[i].to);
  }
  std::vector<bool> seen(n.num_vertices(), false);
  std::vector<std::size_t> stack{n.source()};
  seen[n.source()] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    if (v == n.target()) return true;
    for (std::size_t w : out[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace

FlowNetwork::FlowNetwork(std::size_t num_vertices, std::size_t source,
                         std::size_t target)
    : num_vertices_(num_vertices), source_(source), target_(target) {
  if (source >= num_vertices || target >= num_vertices) {
    throw InputError("source or target out of range");
  }
  if (source == target) throw InputError("source and target coincide");
}

std::size_t FlowNetwork::add_edge(std::size_t from, std::size_t to,
                                  Cost capacity) {
  if (from >= num_vertices_ || to >= num_vertices_) {
    throw InputError("edge endpoint out of range");
  }
  edges_.push_back({from, to, capacity});
  return edges_.size() - 1;
}

std::string FlowNetwork::dump() const {
  std::ostringstream out;
  out << "vertices " << num_vertices_ << "\nsource " << source_
      << "\ntarget " << target_ << '\n';
  for (const FlowEdge& e : edges_) {
    out << e.from << ' ' << e.to << ' '
        << (e.capacity.is_infinite() ? "INF" : e.capacity.to_string()) << '\n';
  }
  return out.str();
}

CutResult min_cut(const FlowNetwork& n) {
  std::vector<bool> infinite(n.edges().size());
  std::uint64_t finite_sum = 0;
  for (std::size_t i = 0; i < n.edges().size(); ++i) {
    const Cost& c = n.edges()[i].capacity;
    infinite[i] = c.is_infinite();
    if (c.is_finite()) finite_sum = checked_add(finite_sum, c.value());
  }
  if (reaches_target(n, infinite)) return CutResult{Cost::infinite(), {}};

  // Some cut avoids every infinite edge, so its value is at most
  // finite_sum and a larger stand-in capacity never saturates.
  std::uint64_t big = checked_add(finite_sum, 1);
  Dinic dinic(n.num_vertices(), n.source(), n.target());
  for (const FlowEdge& e : n.edges()) {
    dinic.add(e.from, e.to,
              e.capacity.is_infinite() ? big : e.capacity.value());
  }
  std::uint64_t flow = dinic.run();
  std::vector<bool> side = dinic.source_side();
  CutResult result{Cost(flow), {}};
  for (std::size_t i = 0; i < n.edges().size(); ++i) {
    const FlowEdge& e = n.edges()[i];
    if (side[e.from] && !side[e.to]) result.edges.push_back(i);
  }
  return result;
}

bool check_cut(const FlowNetwork& n, const std::vector<std::size_t>& edges) {
  std::vector<bool> usable(n.edges().size(), true);
  for (std::size_t i : edges) {
    if (i >= usable.size()) throw InputError("cut edge index out of range");
    usable[i] = false;
  }
  return !reaches_target(n, usable);
}

}  // namespace rpqres
