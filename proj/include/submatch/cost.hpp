#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "submatch/graph.hpp"
#include "submatch/similarity.hpp"

namespace submatch {

enum class MatchMode { kExact, kInexact };

/// How the substitution cost of an edge pair is scored when both edges
/// exist. Binary charges 1 on any shared-attribute mismatch; graded
/// averages per-attribute string distances.
enum class EdgeSubstitution { kBinary, kGraded };

struct EdgeCostSpec {
  EdgeSubstitution substitution = EdgeSubstitution::kBinary;
  double deletion_cost = 1.0;  // target edge has no query counterpart
  double addition_cost = 1.0;  // query edge has no target counterpart
};

/// Every tunable of the pipeline. Defaults follow the family-tree
/// experiment profile: candidate pairings at similarity >= 0.5, start
/// nodes from exact attribute matches, all attributes compared.
struct MatchParams {
  double gamma = 0.7;                    // node attributes vs look-ahead
  double lambda1 = 0.7;                  // node cost vs edge cost
  double lambda2 = 0.7;                  // mean local cost vs missing-node penalty
  double pairing_cost_threshold = 0.5;   // max acceptable local cost (0 when exact)
  std::size_t k = 3;                     // start nodes need < k candidates
  double candidate_threshold = 0.5;      // similarity floor for pairing candidates
  double start_candidate_threshold = 1.0;  // similarity floor for start seeding
  AttributeSelector selector;            // default: all shared keys
  MatchMode mode = MatchMode::kInexact;
  EdgeCostSpec edge_cost_spec;

  bool strict_local_check = true;        // start-node checks look near u only
  bool two_hop_excludes_neighbors = false;
  bool case_fold = false;
  /// When true (default), a start node lying inside the region explored
  /// by an earlier start's search is skipped. When false every start is
  /// searched independently, which costs repeated work but makes the
  /// per-start searches order-free (and safe to run concurrently), and
  /// lets a region an earlier greedy walk explored-but-missed get its
  /// own rooted search.
  bool skip_visited_starts = true;
  std::size_t max_backtracks = 10000;    // per start-node search

  double effective_pairing_threshold() const {
    return mode == MatchMode::kExact ? 0.0 : pairing_cost_threshold;
  }
  void validate() const;  // throws std::invalid_argument on out-of-range values
};

struct MappedPair {
  NodeIndex target;
  NodeIndex query;
  double local_cost;
};

/// Partial injective map built up during search. bind/unbind_last follow
/// the DFS stack discipline.
class MappingState {
public:
  MappingState(std::size_t target_nodes, std::size_t query_nodes)
      : target_to_query_(target_nodes, kUnmapped), query_to_target_(query_nodes, kUnmapped) {}

  bool target_mapped(NodeIndex t) const { return target_to_query_[t] != kUnmapped; }
  bool query_mapped(NodeIndex q) const { return query_to_target_[q] != kUnmapped; }
  NodeIndex query_of(NodeIndex t) const { return static_cast<NodeIndex>(target_to_query_[t]); }
  NodeIndex target_of(NodeIndex q) const { return static_cast<NodeIndex>(query_to_target_[q]); }

  void bind(NodeIndex t, NodeIndex q, double local_cost);
  void unbind_last();
  void clear();

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<MappedPair>& pairs() const { return pairs_; }
  double local_cost_sum() const { return local_cost_sum_; }

private:
  static constexpr std::int64_t kUnmapped = -1;
  std::vector<std::int64_t> target_to_query_;
  std::vector<std::int64_t> query_to_target_;
  std::vector<MappedPair> pairs_;
  double local_cost_sum_ = 0.0;
};

/// A finished (possibly partial) mapping as reported by the matcher.
struct Mapping {
  std::vector<MappedPair> pairs;  // pairing order
  double global_cost = 0.0;
  NodeIndex start_target = 0;    // start node whose search produced it
};

/// Precomputed per-run lookups shared by the cost functions. Graphs must
/// outlive the context. Safe to share across threads once built.
struct CostContext {
  const AttributedGraph& target;
  const AttributedGraph& query;
  const MatchParams& params;
  std::vector<std::vector<NodeIndex>> target_two_hop;
  std::vector<std::vector<NodeIndex>> query_two_hop;

  CostContext(const AttributedGraph& target, const AttributedGraph& query,
              const MatchParams& params);
};

/// h(x) = x for x >= 0, else 0.
inline double clamp_nonnegative(double x) { return x > 0.0 ? x : 0.0; }

/// Look-ahead penalty L_V: how many unmapped neighbors (and 2-hop
/// neighbors) of w could be left without counterparts around u. Terms
/// with a zero denominator contribute 0.
double look_ahead(const CostContext& ctx, NodeIndex u, NodeIndex w,
                  const MappingState& state);

double node_cost(const CostContext& ctx, NodeIndex u, NodeIndex w,
                 const MappingState& state);

/// Mean edge edit cost of pairing (u,w) against every already-mapped
/// pair: substitution when both edges exist, deletion/addition cost when
/// only one does, 0 when neither. Empty mapping scores 0.
double edge_cost(const CostContext& ctx, NodeIndex u, NodeIndex w,
                 const MappingState& state);

double local_cost(const CostContext& ctx, NodeIndex u, NodeIndex w,
                  const MappingState& state);

/// Mean local cost blended with the missing-node penalty
/// (|V_Q| - mapped) / |V_Q|. Throws on an empty mapping.
double global_cost(const std::vector<MappedPair>& pairs, std::size_t query_node_count,
                   const MatchParams& params);

}  // namespace submatch
