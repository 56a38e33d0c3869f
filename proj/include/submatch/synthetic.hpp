#pragma once

#include <cstdint>

#include "submatch/graph.hpp"

namespace submatch {

/// Random undirected connected graph for benchmarks: a random spanning
/// tree plus random extra edges up to round(nodes * mean_degree / 2)
/// total. Every node gets a globally unique "name" attribute and edges
/// get a "kind" attribute from a small vocabulary.
AttributedGraph random_connected_graph(std::size_t nodes, double mean_degree,
                                       std::uint64_t seed);

/// Synthetic control-flow-shaped directed target: 1,765 nodes and 3,111
/// edges. A fall-through chain with random jump edges forms the body;
/// three function-like clusters of exactly (16 nodes, 16 edges),
/// (32, 48) and (55, 77) hang off it, wired to the body only through
/// their deepest blocks. Breadth-first plants grown from the cluster
/// entry nodes (ids below) of sizes 16/32/55 therefore reproduce the
/// clusters exactly. Nodes carry near-unique "ops" and coarse "size"
/// attributes; edges carry a "kind" attribute.
AttributedGraph cfg_like_target(std::uint64_t seed);

inline constexpr char kClusterEntry16[] = "f16_00";
inline constexpr char kClusterEntry32[] = "f32_00";
inline constexpr char kClusterEntry55[] = "f55_00";

inline constexpr std::size_t kCfgTargetNodes = 1765;
inline constexpr std::size_t kCfgTargetEdges = 3111;

}  // namespace submatch
