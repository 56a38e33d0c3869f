#pragma once

#include <optional>
#include <vector>

#include "submatch/cost.hpp"
#include "submatch/graph.hpp"
#include "submatch/start_nodes.hpp"

namespace submatch {

struct MatchResult {
  /// Deduplicated mappings, ascending global cost, ties by pair list.
  std::vector<Mapping> mappings;
  /// Start node of the best mapping, when any mapping was found.
  std::optional<NodeIndex> start_node_used;
  /// Distinct target nodes visited across all start-node searches.
  std::size_t explored_node_count = 0;
  double runtime_seconds = 0.0;
  /// Some search hit the max_backtracks cap and stopped backtracking.
  bool backtrack_cap_hit = false;
  /// Start-node discovery produced no start nodes; retry with a larger k.
  bool no_start_nodes = false;
  /// Sorted union of visited target nodes (the explored region).
  std::vector<NodeIndex> visited_targets;
};

/// Full pipeline: candidate maps, start nodes, one depth-first search
/// per start node (skipping start nodes inside the already-explored
/// region), dedup and ordering. Throws on empty graphs or bad params.
MatchResult match(const AttributedGraph& target, const AttributedGraph& query,
                  const MatchParams& params);

/// Search from one start node. For each start candidate, in ascending
/// root pairing cost: bound the explored radius by the query
/// eccentricity of the candidate, walk the target depth-first, pair
/// each visited node with its cheapest acceptable candidate (local cost
/// within the pairing threshold, query side adjacent to an
/// already-mapped query node), record the rest as alternatives, and on
/// exhaustion backtrack to the deepest frame with untried alternatives.
/// A node popped before any of its candidates has a mapped query
/// neighbor is requeued rather than consumed, so the walk can return to
/// it once the pairing frontier reaches its neighborhood.
/// Branches whose optimistic completion cost exceeds the best global
/// cost seen for this start node are cut.
std::vector<Mapping> dfs_from_start(const AttributedGraph& target,
                                    const AttributedGraph& query, NodeIndex start,
                                    const std::vector<NodeIndex>& start_candidates,
                                    const MatchParams& params);

/// The explored region recorded in a result.
inline const std::vector<NodeIndex>& visited_region(const MatchResult& result) {
  return result.visited_targets;
}

}  // namespace submatch
