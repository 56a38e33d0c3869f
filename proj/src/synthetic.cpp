#include "submatch/synthetic.hpp"

#include <array>
#include <cassert>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "submatch/rng.hpp"

namespace submatch {

namespace {

std::string padded(std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return digits;
}

std::size_t digits_of(std::size_t value) {
  std::size_t width = 1;
  for (; value >= 10; value /= 10) ++width;
  return width;
}

constexpr std::array<const char*, 3> kJumpKinds{"jmp", "br", "call"};

/// Basic-block style attributes: a near-unique opcode fingerprint and a
/// coarse block size.
AttributeMap cfg_node_attrs(std::mt19937_64& rng, std::set<std::string>& used_ops) {
  // Full lowercase alphabet: fingerprints of distinct blocks must be
  // dissimilar enough that attribute-driven candidate sets stay sparse.
  std::string ops = random_lowercase_string(rng, 8);
  while (!used_ops.insert(ops).second) {
    ops = random_lowercase_string(rng, 8);
  }
  return AttributeMap{{"ops", std::move(ops)},
                      {"size", std::to_string(1 + uniform_index(rng, 64))}};
}

/// Append a connected cluster of exactly `nodes` nodes and `edges`
/// edges. All of its edges stay inside the cluster; the returned anchor
/// is a node at maximum hop distance from the entry (the cluster's
/// first node), the only safe place to wire the cluster to the rest of
/// the graph without disturbing breadth-first plants from the entry.
NodeIndex append_cluster(AttributedGraph& g, const std::string& prefix,
                         std::size_t nodes, std::size_t edges,
                         std::mt19937_64& rng, std::set<std::string>& used_ops) {
  assert(edges >= nodes - 1 && edges <= nodes * (nodes - 1) / 2);
  const NodeIndex base = static_cast<NodeIndex>(g.node_count());
  for (std::size_t i = 0; i < nodes; ++i) {
    g.add_node(prefix + "_" + padded(i, 2), cfg_node_attrs(rng, used_ops));
  }
  std::size_t added = 0;
  for (std::size_t i = 1; i < nodes; ++i) {
    const NodeIndex parent = base + static_cast<NodeIndex>(uniform_index(rng, i));
    const NodeIndex child = base + static_cast<NodeIndex>(i);
    AttributeMap attrs{{"kind", kJumpKinds[uniform_index(rng, kJumpKinds.size())]}};
    if (uniform_unit(rng) < 0.5) {
      g.add_edge(parent, child, std::move(attrs));
    } else {
      g.add_edge(child, parent, std::move(attrs));
    }
    ++added;
  }
  while (added < edges) {
    const NodeIndex a = base + static_cast<NodeIndex>(uniform_index(rng, nodes));
    const NodeIndex b = base + static_cast<NodeIndex>(uniform_index(rng, nodes));
    if (a == b || g.edge_between(a, b) != nullptr) continue;
    g.add_edge(a, b,
               AttributeMap{{"kind", kJumpKinds[uniform_index(rng, kJumpKinds.size())]}});
    ++added;
  }
  // The cluster is still detached, so hop distances from the entry are
  // finite exactly on cluster nodes.
  const std::vector<std::size_t> dist = hop_distances(g, base);
  std::size_t deepest = 0;
  NodeIndex anchor = base;
  for (std::size_t i = 0; i < nodes; ++i) {
    const NodeIndex node = base + static_cast<NodeIndex>(i);
    if (dist[node] != SIZE_MAX && dist[node] >= deepest) {
      deepest = dist[node];
      anchor = node;
    }
  }
  return anchor;
}

}  // namespace

AttributedGraph random_connected_graph(std::size_t nodes, double mean_degree,
                                       std::uint64_t seed) {
  if (nodes < 1) {
    throw std::invalid_argument("random_connected_graph: nodes must be >= 1");
  }
  if (mean_degree < 0.0) {
    throw std::invalid_argument("random_connected_graph: mean_degree must be >= 0");
  }
  std::mt19937_64 rng(seed);
  AttributedGraph g(false);
  const std::size_t width = digits_of(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) {
    g.add_node("n" + padded(i, width),
               AttributeMap{{"name", random_lowercase_string(rng, 6) + "-" +
                                         std::to_string(i)}});
  }
  constexpr std::array<const char*, 3> kinds{"link", "ref", "dep"};
  const auto random_kind = [&rng, &kinds] {
    return AttributeMap{{"kind", kinds[uniform_index(rng, kinds.size())]}};
  };
  for (std::size_t i = 1; i < nodes; ++i) {
    g.add_edge(static_cast<NodeIndex>(uniform_index(rng, i)),
               static_cast<NodeIndex>(i), random_kind());
  }
  std::size_t wanted = static_cast<std::size_t>(nodes * mean_degree / 2.0 + 0.5);
  const std::size_t max_edges = nodes * (nodes - 1) / 2;
  if (wanted < g.edge_count()) wanted = g.edge_count();
  if (wanted > max_edges) wanted = max_edges;
  std::size_t attempts = 0;
  const std::size_t attempt_cap = 64 * wanted + 1024;
  while (g.edge_count() < wanted && attempts++ < attempt_cap) {
    const NodeIndex a = static_cast<NodeIndex>(uniform_index(rng, nodes));
    const NodeIndex b = static_cast<NodeIndex>(uniform_index(rng, nodes));
    if (a == b || g.edge_between(a, b) != nullptr) continue;
    g.add_edge(a, b, random_kind());
  }
  return g;
}

AttributedGraph cfg_like_target(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::string> used_ops;
  AttributedGraph g(true);

  constexpr std::size_t kClusterNodes = 16 + 32 + 55;
  constexpr std::size_t kClusterEdges = 16 + 48 + 77;
  constexpr std::size_t kBridgeEdges = 6;
  constexpr std::size_t kBodyNodes = kCfgTargetNodes - kClusterNodes;
  constexpr std::size_t kChainEdges = kBodyNodes - 1;
  constexpr std::size_t kJumpEdges =
      kCfgTargetEdges - kChainEdges - kClusterEdges - kBridgeEdges;

  for (std::size_t i = 0; i < kBodyNodes; ++i) {
    g.add_node("blk_" + padded(i, 4), cfg_node_attrs(rng, used_ops));
  }
  for (std::size_t i = 0; i + 1 < kBodyNodes; ++i) {
    g.add_edge(static_cast<NodeIndex>(i), static_cast<NodeIndex>(i + 1),
               AttributeMap{{"kind", "seq"}});
  }
  std::size_t jumps = 0;
  while (jumps < kJumpEdges) {
    const NodeIndex a = static_cast<NodeIndex>(uniform_index(rng, kBodyNodes));
    const NodeIndex b = static_cast<NodeIndex>(uniform_index(rng, kBodyNodes));
    if (a == b || g.edge_between(a, b) != nullptr) continue;
    g.add_edge(a, b,
               AttributeMap{{"kind", kJumpKinds[uniform_index(rng, kJumpKinds.size())]}});
    ++jumps;
  }

  const std::array<std::tuple<const char*, std::size_t, std::size_t>, 3> specs{
      std::tuple{"f16", std::size_t{16}, std::size_t{16}},
      std::tuple{"f32", std::size_t{32}, std::size_t{48}},
      std::tuple{"f55", std::size_t{55}, std::size_t{77}},
  };
  for (const auto& [prefix, n, e] : specs) {
    const NodeIndex anchor = append_cluster(g, prefix, n, e, rng, used_ops);
    const NodeIndex out_body =
        static_cast<NodeIndex>(uniform_index(rng, kBodyNodes));
    NodeIndex in_body = static_cast<NodeIndex>(uniform_index(rng, kBodyNodes));
    while (in_body == out_body) {
      in_body = static_cast<NodeIndex>(uniform_index(rng, kBodyNodes));
    }
    g.add_edge(anchor, out_body, AttributeMap{{"kind", "call"}});
    g.add_edge(in_body, anchor, AttributeMap{{"kind", "call"}});
  }

  assert(g.node_count() == kCfgTargetNodes);
  assert(g.edge_count() == kCfgTargetEdges);
  return g;
}

}  // namespace submatch
