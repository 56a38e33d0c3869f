#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "submatch/graph.hpp"

namespace submatch {

/// Which node attributes enter a comparison: every shared key, or an
/// explicit key list.
struct AttributeSelector {
  std::vector<std::string> keys;  // empty = all shared keys

  bool all() const { return keys.empty(); }
  static AttributeSelector all_keys() { return {}; }
  static AttributeSelector of(std::vector<std::string> ks) { return {std::move(ks)}; }
};

/// Jaro-Winkler similarity in [0,1], 1 = equal. Prefix scale 0.1 applied
/// to at most 4 leading characters.
double jaro_winkler(std::string_view a, std::string_view b);

/// Attribute distance in [0,1], 0 = identical: mean of 1 - jaro_winkler
/// over the selected keys present in both maps. No shared selected key
/// means the nodes are incomparable and scores 1.0.
double node_attr_distance(const AttributeMap& a, const AttributeMap& b,
                          const AttributeSelector& sel, bool case_fold = false);

/// Candidate sets per target node: P[u] holds every query node whose
/// attribute similarity 1 - node_attr_distance reaches the threshold.
/// Entries are index-sorted; nodes without candidates keep empty sets.
using CandidateMap = std::vector<std::vector<NodeIndex>>;

CandidateMap candidate_map(const AttributedGraph& target, const AttributedGraph& query,
                           const AttributeSelector& sel, double threshold,
                           bool case_fold = false);

}  // namespace submatch
