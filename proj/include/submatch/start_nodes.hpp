#pragma once

#include <vector>

#include "submatch/cost.hpp"
#include "submatch/graph.hpp"
#include "submatch/similarity.hpp"

namespace submatch {

struct StartEntry {
  NodeIndex target;
  std::vector<NodeIndex> candidates;  // index-sorted subset of the seed map entry
};

/// Start nodes ordered by ascending candidate count, ties by node id.
using StartSet = std::vector<StartEntry>;

/// Select target start nodes and prune their query candidates.
///
/// Seeding takes every target node with 1 <= |seed(u)| < k candidates.
/// A candidate w is then discarded when deg(u) < deg(w), when u has
/// fewer 2-hop neighbors than w, or when some neighbor or 2-hop neighbor
/// of w lacks any pairing candidate: anywhere in the target by default,
/// or - with strict_local_check - among the neighbors and 2-hop
/// neighbors of u. Start nodes whose candidate sets empty out are
/// dropped.
///
/// `seed` and `pairing` may be the same map. The experiment profile
/// seeds from exact attribute matches while the coverage checks consult
/// the looser pairing candidates.
StartSet find_start_nodes(const AttributedGraph& target, const AttributedGraph& query,
                          const CandidateMap& seed, const CandidateMap& pairing,
                          std::size_t k, bool strict_local_check = true,
                          bool two_hop_excludes_neighbors = false);

/// Convenience single-map form matching the pseudocode.
StartSet find_start_nodes(const AttributedGraph& target, const AttributedGraph& query,
                          const CandidateMap& p, std::size_t k,
                          bool strict_local_check = true,
                          bool two_hop_excludes_neighbors = false);

}  // namespace submatch
