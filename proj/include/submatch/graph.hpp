#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace submatch {

/// External node identifier. Unique within one graph, stable for the
/// lifetime of the loaded graph.
using NodeId = std::string;

/// Dense index assigned in insertion order. All hot-path structures are
/// keyed by NodeIndex; NodeId is for input, output and tie-breaking.
using NodeIndex = std::uint32_t;

/// String-keyed, string-valued attributes with sorted iteration order.
using AttributeMap = std::map<std::string, std::string>;

class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeIndex source;
  NodeIndex target;
  AttributeMap attributes;
};

/// Node- and edge-attributed graph. Construction is add_node/add_edge;
/// afterwards the graph is treated as immutable and every query is
/// read-only, so concurrent readers are safe.
///
/// Directed graphs keep edge orientation on the Edge record but expose
/// only the underlying undirected adjacency; traversal, degrees and
/// distances never distinguish direction. At most one edge is allowed
/// per unordered node pair. A self-loop contributes 1 to the degree and
/// never appears in the neighbor list.
class AttributedGraph {
public:
  explicit AttributedGraph(bool directed = false) : directed_(directed) {}

  NodeIndex add_node(const NodeId& id, AttributeMap attributes = {});
  void add_edge(const NodeId& a, const NodeId& b, AttributeMap attributes = {});
  void add_edge(NodeIndex a, NodeIndex b, AttributeMap attributes = {});

  bool directed() const { return directed_; }
  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_node(const NodeId& id) const { return index_.count(id) != 0; }
  NodeIndex index_of(const NodeId& id) const;
  const NodeId& id_of(NodeIndex n) const { return ids_.at(n); }

  const AttributeMap& node_attributes(NodeIndex n) const { return node_attrs_.at(n); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Nodes sharing an edge with n, self excluded, sorted by index.
  std::span<const NodeIndex> neighbors(NodeIndex n) const;

  /// Incident edge count; a self-loop counts once.
  std::size_t degree(NodeIndex n) const;

  bool has_self_loop(NodeIndex n) const;

  /// The unique edge between the unordered pair {a, b}, or nullptr.
  const Edge* edge_between(NodeIndex a, NodeIndex b) const;

private:
  void check_node(NodeIndex n) const;
  static std::uint64_t pair_key(NodeIndex a, NodeIndex b);

  bool directed_;
  std::vector<NodeId> ids_;
  std::vector<AttributeMap> node_attrs_;
  std::vector<std::vector<NodeIndex>> adjacency_;  // sorted, self excluded
  std::vector<bool> self_loop_;
  std::vector<Edge> edges_;
  std::map<NodeId, NodeIndex> index_;
  std::map<std::uint64_t, std::size_t> edge_index_;  // unordered pair -> edge
};

/// Neighbors of neighbors of n, minus n itself. Direct neighbors stay in
/// the set when reachable in two hops unless exclude_direct is set.
std::vector<NodeIndex> two_hop_neighbors(const AttributedGraph& g, NodeIndex n,
                                         bool exclude_direct = false);

/// Maximum shortest-path hop distance from n to any reachable node,
/// ignoring edge direction. Unreachable nodes are ignored.
std::size_t eccentricity_from(const AttributedGraph& g, NodeIndex n);

/// Subgraph on the given nodes with every edge of g whose endpoints both
/// lie in the set, attributes copied.
AttributedGraph induced_subgraph(const AttributedGraph& g,
                                 const std::vector<NodeIndex>& nodes);

struct NeighborhoodStats {
  std::size_t degree = 0;
  std::size_t two_hop_count = 0;
};

NeighborhoodStats neighborhood_stats(const AttributedGraph& g, NodeIndex n,
                                     bool exclude_direct = false);

/// Hop distances from start over the undirected structure; unreachable
/// nodes get SIZE_MAX. max_depth bounds the search when given.
std::vector<std::size_t> hop_distances(const AttributedGraph& g, NodeIndex start,
                                       std::size_t max_depth = SIZE_MAX);

/// Permutation rank of every node when sorted by id string. Used for the
/// id-order tie breaking rules.
std::vector<std::uint32_t> id_order_ranks(const AttributedGraph& g);

}  // namespace submatch
