#include "submatch/start_nodes.hpp"

#include <algorithm>

namespace submatch {

namespace {

// Query nodes having at least one pairing candidate anywhere in the target.
std::vector<bool> covered_anywhere(const CandidateMap& pairing, std::size_t query_nodes) {
  std::vector<bool> covered(query_nodes, false);
  for (const auto& candidates : pairing)
    for (NodeIndex w : candidates)
      covered[w] = true;
  return covered;
}

// Query nodes having a pairing candidate among u's neighbors or 2-hop
// neighbors (the prose reading of the coverage check).
std::vector<bool> covered_near(const AttributedGraph& target, const CandidateMap& pairing,
                               std::size_t query_nodes, NodeIndex u,
                               const std::vector<NodeIndex>& u_two_hop) {
  std::vector<bool> covered(query_nodes, false);
  auto mark = [&](NodeIndex t) {
    for (NodeIndex w : pairing[t])
      covered[w] = true;
  };
  for (NodeIndex t : target.neighbors(u))
    mark(t);
  for (NodeIndex t : u_two_hop)
    mark(t);
  return covered;
}

}  // namespace

StartSet find_start_nodes(const AttributedGraph& target, const AttributedGraph& query,
                          const CandidateMap& seed, const CandidateMap& pairing,
                          std::size_t k, bool strict_local_check,
                          bool two_hop_excludes_neighbors) {
  if (k < 1)
    throw std::invalid_argument("k must be at least 1");
  if (seed.size() != target.node_count() || pairing.size() != target.node_count())
    throw std::invalid_argument("candidate map size does not match target graph");

  std::vector<std::size_t> query_two_deg(query.node_count());
  std::vector<std::vector<NodeIndex>> query_two_hop(query.node_count());
  for (NodeIndex w = 0; w < query.node_count(); ++w) {
    query_two_hop[w] = two_hop_neighbors(query, w, two_hop_excludes_neighbors);
    query_two_deg[w] = query_two_hop[w].size();
  }

  std::vector<bool> anywhere;
  if (!strict_local_check)
    anywhere = covered_anywhere(pairing, query.node_count());

  StartSet result;
  for (NodeIndex u = 0; u < target.node_count(); ++u) {
    const std::vector<NodeIndex>& candidates = seed[u];
    if (candidates.empty() || candidates.size() >= k)
      continue;

    std::vector<NodeIndex> u_two_hop =
        two_hop_neighbors(target, u, two_hop_excludes_neighbors);
    const std::vector<bool>& covered =
        strict_local_check
            ? covered_near(target, pairing, query.node_count(), u, u_two_hop)
            : anywhere;

    std::vector<NodeIndex> surviving;
    for (NodeIndex w : candidates) {
      if (target.degree(u) < query.degree(w))
        continue;
      if (u_two_hop.size() < query_two_deg[w])
        continue;
      bool gap = false;
      for (NodeIndex n : query.neighbors(w)) {
        if (!covered[n]) {
          gap = true;
          break;
        }
      }
      if (!gap) {
        for (NodeIndex n : query_two_hop[w]) {
          if (!covered[n]) {
            gap = true;
            break;
          }
        }
      }
      if (!gap)
        surviving.push_back(w);
    }
    if (!surviving.empty())
      result.push_back(StartEntry{u, std::move(surviving)});
  }

  std::sort(result.begin(), result.end(), [&](const StartEntry& a, const StartEntry& b) {
    if (a.candidates.size() != b.candidates.size())
      return a.candidates.size() < b.candidates.size();
    return target.id_of(a.target) < target.id_of(b.target);
  });
  return result;
}

StartSet find_start_nodes(const AttributedGraph& target, const AttributedGraph& query,
                          const CandidateMap& p, std::size_t k,
                          bool strict_local_check, bool two_hop_excludes_neighbors) {
  return find_start_nodes(target, query, p, p, k, strict_local_check,
                          two_hop_excludes_neighbors);
}

}  // namespace submatch
