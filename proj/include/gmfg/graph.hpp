#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gmfg {

using Node = std::size_t;
using Edge = std::pair<Node, Node>;

/// Directed state-space graph. Nodes are 0-based. The out-neighborhood of
/// every node is sorted by target index; that order fixes the coordinate
/// layout of the p-vectors passed to the Hamiltonians and of the edge blocks
/// of the uniqueness matrix.
class Graph {
 public:
  /// Rejects self-loops, duplicate edges and out-of-range indices.
  static Graph build(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return out_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Node> out(Node i) const { return out_.at(i); }
  std::span<const Node> in(Node i) const { return in_.at(i); }
  std::size_t out_degree(Node i) const { return out_.at(i).size(); }
  std::size_t max_out_degree() const;

  /// Position of j inside out(i); throws GraphError if (i, j) is not an edge.
  std::size_t edge_index(Node i, Node j) const;
  bool has_edge(Node i, Node j) const;

  /// Edges in (source, slot) order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Node>> out_;
  std::vector<std::vector<Node>> in_;
  std::size_t edge_count_ = 0;
};

}  // namespace gmfg
