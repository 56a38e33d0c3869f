#include "submatch/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace submatch {

NodeIndex AttributedGraph::add_node(const NodeId& id, AttributeMap attributes) {
  if (index_.count(id) != 0)
    throw GraphError("duplicate node id '" + id + "'");
  NodeIndex n = static_cast<NodeIndex>(ids_.size());
  ids_.push_back(id);
  node_attrs_.push_back(std::move(attributes));
  adjacency_.emplace_back();
  self_loop_.push_back(false);
  index_.emplace(id, n);
  return n;
}

void AttributedGraph::add_edge(const NodeId& a, const NodeId& b, AttributeMap attributes) {
  add_edge(index_of(a), index_of(b), std::move(attributes));
}

void AttributedGraph::add_edge(NodeIndex a, NodeIndex b, AttributeMap attributes) {
  check_node(a);
  check_node(b);
  std::uint64_t key = pair_key(a, b);
  if (edge_index_.count(key) != 0)
    throw GraphError("duplicate edge between '" + ids_[a] + "' and '" + ids_[b] + "'");
  edge_index_.emplace(key, edges_.size());
  edges_.push_back(Edge{a, b, std::move(attributes)});
  if (a == b) {
    self_loop_[a] = true;
    return;
  }
  auto insert_sorted = [](std::vector<NodeIndex>& v, NodeIndex x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  };
  insert_sorted(adjacency_[a], b);
  insert_sorted(adjacency_[b], a);
}

NodeIndex AttributedGraph::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw GraphError("unknown node id '" + id + "'");
  return it->second;
}

std::span<const NodeIndex> AttributedGraph::neighbors(NodeIndex n) const {
  check_node(n);
  return adjacency_[n];
}

std::size_t AttributedGraph::degree(NodeIndex n) const {
  check_node(n);
  return adjacency_[n].size() + (self_loop_[n] ? 1 : 0);
}

bool AttributedGraph::has_self_loop(NodeIndex n) const {
  check_node(n);
  return self_loop_[n];
}

const Edge* AttributedGraph::edge_between(NodeIndex a, NodeIndex b) const {
  check_node(a);
  check_node(b);
  auto it = edge_index_.find(pair_key(a, b));
  return it == edge_index_.end() ? nullptr : &edges_[it->second];
}

void AttributedGraph::check_node(NodeIndex n) const {
  if (n >= ids_.size())
    throw GraphError("node index " + std::to_string(n) + " out of range");
}

std::uint64_t AttributedGraph::pair_key(NodeIndex a, NodeIndex b) {
  NodeIndex lo = std::min(a, b), hi = std::max(a, b);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

std::vector<NodeIndex> two_hop_neighbors(const AttributedGraph& g, NodeIndex n,
                                         bool exclude_direct) {
  std::set<NodeIndex> out;
  for (NodeIndex m : g.neighbors(n))
    for (NodeIndex x : g.neighbors(m))
      if (x != n)
        out.insert(x);
  if (exclude_direct)
    for (NodeIndex m : g.neighbors(n))
      out.erase(m);
  return {out.begin(), out.end()};
}

std::size_t eccentricity_from(const AttributedGraph& g, NodeIndex n) {
  std::vector<std::size_t> dist = hop_distances(g, n);
  std::size_t ecc = 0;
  for (std::size_t d : dist)
    if (d != SIZE_MAX)
      ecc = std::max(ecc, d);
  return ecc;
}

AttributedGraph induced_subgraph(const AttributedGraph& g,
                                 const std::vector<NodeIndex>& nodes) {
  AttributedGraph out(g.directed());
  std::set<NodeIndex> keep(nodes.begin(), nodes.end());
  // preserve g's insertion order for determinism
  for (NodeIndex n = 0; n < g.node_count(); ++n)
    if (keep.count(n) != 0)
      out.add_node(g.id_of(n), g.node_attributes(n));
  for (NodeIndex n : nodes)
    if (n >= g.node_count())
      throw GraphError("node index " + std::to_string(n) + " out of range");
  for (const Edge& e : g.edges())
    if (keep.count(e.source) != 0 && keep.count(e.target) != 0)
      out.add_edge(g.id_of(e.source), g.id_of(e.target), e.attributes);
  return out;
}

NeighborhoodStats neighborhood_stats(const AttributedGraph& g, NodeIndex n,
                                     bool exclude_direct) {
  return NeighborhoodStats{g.degree(n),
                           two_hop_neighbors(g, n, exclude_direct).size()};
}

std::vector<std::size_t> hop_distances(const AttributedGraph& g, NodeIndex start,
                                       std::size_t max_depth) {
  std::vector<std::size_t> dist(g.node_count(), SIZE_MAX);
  if (start >= g.node_count())
    throw GraphError("node index " + std::to_string(start) + " out of range");
  dist[start] = 0;
  std::deque<NodeIndex> queue{start};
  while (!queue.empty()) {
    NodeIndex u = queue.front();
    queue.pop_front();
    if (dist[u] >= max_depth)
      continue;
    for (NodeIndex v : g.neighbors(u)) {
      if (dist[v] == SIZE_MAX) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> id_order_ranks(const AttributedGraph& g) {
  std::vector<NodeIndex> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    return g.id_of(a) < g.id_of(b);
  });
  std::vector<std::uint32_t> rank(g.node_count());
  for (std::uint32_t i = 0; i < order.size(); ++i)
    rank[order[i]] = i;
  return rank;
}

}  // namespace submatch
