#include "gmfg/graph.hpp"

#include <algorithm>
#include <string>

#include "gmfg/errors.hpp"

namespace gmfg {

Graph Graph::build(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw GraphError("graph needs at least one node");
  Graph g;
  g.out_.resize(n);
  g.in_.resize(n);
  for (const auto& [s, t] : edges) {
    if (s >= n || t >= n) {
      throw GraphError("edge (" + std::to_string(s) + "," + std::to_string(t) +
                       ") references a node outside [0," + std::to_string(n) + ")");
    }
    if (s == t) throw GraphError("self-loop at node " + std::to_string(s));
    g.out_[s].push_back(t);
  }
  for (Node i = 0; i < n; ++i) {
    auto& adj = g.out_[i];
    std::sort(adj.begin(), adj.end());
    if (auto dup = std::adjacent_find(adj.begin(), adj.end()); dup != adj.end()) {
      throw GraphError("duplicate edge (" + std::to_string(i) + "," + std::to_string(*dup) + ")");
    }
    for (Node j : adj) g.in_[j].push_back(i);
    g.edge_count_ += adj.size();
  }
  return g;
}

std::size_t Graph::max_out_degree() const {
  std::size_t d = 0;
  for (const auto& adj : out_) d = std::max(d, adj.size());
  return d;
}

std::size_t Graph::edge_index(Node i, Node j) const {
  const auto& adj = out_.at(i);
  auto it = std::lower_bound(adj.begin(), adj.end(), j);
  if (it == adj.end() || *it != j) {
    throw GraphError("no edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return static_cast<std::size_t>(it - adj.begin());
}

bool Graph::has_edge(Node i, Node j) const {
  const auto& adj = out_.at(i);
  return std::binary_search(adj.begin(), adj.end(), j);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> e;
  e.reserve(edge_count_);
  for (Node i = 0; i < out_.size(); ++i)
    for (Node j : out_[i]) e.emplace_back(i, j);
  return e;
}

}  // namespace gmfg
