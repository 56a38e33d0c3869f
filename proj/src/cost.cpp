#include "submatch/cost.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <stdexcept>
#include <string_view>

namespace submatch {

void MatchParams::validate() const {
  auto in_unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  };
  in_unit(gamma, "gamma");
  in_unit(lambda1, "lambda1");
  in_unit(lambda2, "lambda2");
  in_unit(pairing_cost_threshold, "pairing_cost_threshold");
  in_unit(candidate_threshold, "candidate_threshold");
  in_unit(start_candidate_threshold, "start_candidate_threshold");
  in_unit(edge_cost_spec.deletion_cost, "edge_deletion_cost");
  in_unit(edge_cost_spec.addition_cost, "edge_addition_cost");
  if (k < 1)
    throw std::invalid_argument("k must be at least 1");
}

void MappingState::bind(NodeIndex t, NodeIndex q, double local_cost) {
  assert(!target_mapped(t) && !query_mapped(q));
  target_to_query_[t] = q;
  query_to_target_[q] = t;
  pairs_.push_back(MappedPair{t, q, local_cost});
  local_cost_sum_ += local_cost;
}

void MappingState::unbind_last() {
  assert(!pairs_.empty());
  const MappedPair& p = pairs_.back();
  target_to_query_[p.target] = kUnmapped;
  query_to_target_[p.query] = kUnmapped;
  local_cost_sum_ -= p.local_cost;
  pairs_.pop_back();
}

void MappingState::clear() {
  while (!pairs_.empty()) unbind_last();
  local_cost_sum_ = 0.0;
}

CostContext::CostContext(const AttributedGraph& target_graph,
                         const AttributedGraph& query_graph,
                         const MatchParams& match_params)
    : target(target_graph), query(query_graph), params(match_params) {
  target_two_hop.reserve(target.node_count());
  for (NodeIndex n = 0; n < target.node_count(); ++n)
    target_two_hop.push_back(
        two_hop_neighbors(target, n, params.two_hop_excludes_neighbors));
  query_two_hop.reserve(query.node_count());
  for (NodeIndex n = 0; n < query.node_count(); ++n)
    query_two_hop.push_back(
        two_hop_neighbors(query, n, params.two_hop_excludes_neighbors));
}

namespace {

std::size_t count_unmapped_targets(std::span<const NodeIndex> nodes,
                                   const MappingState& state) {
  std::size_t c = 0;
  for (NodeIndex n : nodes)
    if (!state.target_mapped(n))
      ++c;
  return c;
}

std::size_t count_unmapped_queries(std::span<const NodeIndex> nodes,
                                   const MappingState& state) {
  std::size_t c = 0;
  for (NodeIndex n : nodes)
    if (!state.query_mapped(n))
      ++c;
  return c;
}

enum class EdgeDirection { kNone, kForward, kBackward };

EdgeDirection orientation(const AttributedGraph& g, const Edge& e, NodeIndex from) {
  if (!g.directed())
    return EdgeDirection::kNone;
  return e.source == from ? EdgeDirection::kForward : EdgeDirection::kBackward;
}

std::string fold_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool values_equal(const std::string& a, const std::string& b, bool case_fold) {
  if (!case_fold)
    return a == b;
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

// Substitution cost for two existing edges. Edge orientation joins the
// comparison as one more shared attribute when both graphs are directed.
double substitution_cost(const AttributeMap& ta, EdgeDirection td,
                         const AttributeMap& qa, EdgeDirection qd,
                         const EdgeCostSpec& spec, bool case_fold) {
  const bool compare_direction =
      td != EdgeDirection::kNone && qd != EdgeDirection::kNone;
  if (spec.substitution == EdgeSubstitution::kBinary) {
    if (compare_direction && td != qd)
      return 1.0;
    for (const auto& [key, value] : ta) {
      auto it = qa.find(key);
      if (it != qa.end() && !values_equal(value, it->second, case_fold))
        return 1.0;
    }
    return 0.0;
  }
  double sum = 0.0;
  std::size_t shared = 0;
  if (compare_direction) {
    sum += td == qd ? 0.0 : 1.0;
    ++shared;
  }
  for (const auto& [key, value] : ta) {
    auto it = qa.find(key);
    if (it == qa.end())
      continue;
    sum += 1.0 - (case_fold ? jaro_winkler(fold_lower(value), fold_lower(it->second))
                            : jaro_winkler(value, it->second));
    ++shared;
  }
  if (shared == 0)
    return ta.empty() && qa.empty() ? 0.0 : 1.0;
  return sum / static_cast<double>(shared);
}

}  // namespace

double look_ahead(const CostContext& ctx, NodeIndex u, NodeIndex w,
                  const MappingState& state) {
  const double deg_w = static_cast<double>(ctx.query.degree(w));
  const double two_deg_w = static_cast<double>(ctx.query_two_hop[w].size());
  double value = 0.0;
  if (deg_w > 0.0) {
    const double u1 = static_cast<double>(
        count_unmapped_targets(ctx.target.neighbors(u), state));
    const double w1 = static_cast<double>(
        count_unmapped_queries(ctx.query.neighbors(w), state));
    value += 0.5 * clamp_nonnegative(w1 - u1) / deg_w;
  }
  if (two_deg_w > 0.0) {
    const double u2 = static_cast<double>(
        count_unmapped_targets(ctx.target_two_hop[u], state));
    const double w2 = static_cast<double>(
        count_unmapped_queries(ctx.query_two_hop[w], state));
    value += 0.5 * clamp_nonnegative(w2 - u2) / two_deg_w;
  }
  return value;
}

double node_cost(const CostContext& ctx, NodeIndex u, NodeIndex w,
                 const MappingState& state) {
  const double dv = node_attr_distance(ctx.target.node_attributes(u),
                                       ctx.query.node_attributes(w),
                                       ctx.params.selector, ctx.params.case_fold);
  return ctx.params.gamma * dv + (1.0 - ctx.params.gamma) * look_ahead(ctx, u, w, state);
}

double edge_cost(const CostContext& ctx, NodeIndex u, NodeIndex w,
                 const MappingState& state) {
  if (state.empty())
    return 0.0;
  const EdgeCostSpec& spec = ctx.params.edge_cost_spec;
  double sum = 0.0;
  for (const MappedPair& p : state.pairs()) {
    const Edge* te = ctx.target.edge_between(u, p.target);
    const Edge* qe = ctx.query.edge_between(w, p.query);
    if (te != nullptr && qe != nullptr) {
      sum += substitution_cost(te->attributes, orientation(ctx.target, *te, u),
                               qe->attributes, orientation(ctx.query, *qe, w),
                               spec, ctx.params.case_fold);
    } else if (te != nullptr) {
      sum += spec.deletion_cost;
    } else if (qe != nullptr) {
      sum += spec.addition_cost;
    }
  }
  return sum / static_cast<double>(state.size());
}

double local_cost(const CostContext& ctx, NodeIndex u, NodeIndex w,
                  const MappingState& state) {
  return ctx.params.lambda1 * node_cost(ctx, u, w, state) +
         (1.0 - ctx.params.lambda1) * edge_cost(ctx, u, w, state);
}

double global_cost(const std::vector<MappedPair>& pairs, std::size_t query_node_count,
                   const MatchParams& params) {
  if (pairs.empty())
    throw std::invalid_argument("global_cost of an empty mapping");
  if (query_node_count == 0)
    throw std::invalid_argument("global_cost with an empty query graph");
  double sum = 0.0;
  for (const MappedPair& p : pairs)
    sum += p.local_cost;
  const double mean_local = sum / static_cast<double>(pairs.size());
  const double penalty =
      static_cast<double>(query_node_count - pairs.size()) /
      static_cast<double>(query_node_count);
  return params.lambda2 * mean_local + (1.0 - params.lambda2) * penalty;
}

}  // namespace submatch
