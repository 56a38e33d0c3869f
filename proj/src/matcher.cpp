#include "submatch/matcher.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "submatch/similarity.hpp"

namespace submatch {

namespace {

int trace_level() {
  static const int level = [] {
    const char* env = std::getenv("SUBMATCH_LOG");
    if (env == nullptr || *env == '\0') return 0;
    return std::atoi(env);
  }();
  return level;
}

/// Canonical form of a mapping for ordering and deduplication: pairs
/// sorted by target id order, then query id order.
std::vector<std::pair<std::uint32_t, std::uint32_t>> canonical_pairs(
    const Mapping& mapping, const std::vector<std::uint32_t>& target_ranks,
    const std::vector<std::uint32_t>& query_ranks) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(mapping.pairs.size());
  for (const MappedPair& pair : mapping.pairs) {
    out.emplace_back(target_ranks[pair.target], query_ranks[pair.query]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// One depth-first search engine, reused across start nodes so that the
/// visited-region union and scratch buffers persist.
class SearchEngine {
 public:
  SearchEngine(const CostContext& ctx, const CandidateMap& pairing)
      : ctx_(ctx),
        pairing_(pairing),
        state_(ctx.target.node_count(), ctx.query.node_count()),
        visited_(ctx.target.node_count(), false),
        region_(ctx.target.node_count(), false),
        target_ranks_(id_order_ranks(ctx.target)),
        query_ranks_(id_order_ranks(ctx.query)),
        backtracks_left_(ctx.params.max_backtracks) {}

  /// True when a previous search already visited this node.
  bool in_region(NodeIndex node) const { return region_[node]; }

  const std::vector<bool>& region() const { return region_; }

  bool cap_hit() const { return cap_hit_; }

  /// Run the search for one start node and append its mappings.
  void search_start(NodeIndex start, const std::vector<NodeIndex>& candidates,
                    std::vector<Mapping>& out) {
    incumbent_ = std::numeric_limits<double>::infinity();
    backtracks_left_ = ctx_.params.max_backtracks;
    // Root pairings ordered by ascending cost, ties by query id.
    std::vector<Alt> roots;
    roots.reserve(candidates.size());
    for (NodeIndex query_node : candidates) {
      const double cost = local_cost(ctx_, start, query_node, state_);
      if (cost <= ctx_.params.effective_pairing_threshold()) {
        roots.push_back(Alt{query_node, cost});
      }
    }
    std::sort(roots.begin(), roots.end(), [this](const Alt& a, const Alt& b) {
      if (a.cost != b.cost) return a.cost < b.cost;
      return query_ranks_[a.query] < query_ranks_[b.query];
    });
    if (trace_level() >= 1) {
      std::fprintf(stderr, "[submatch] start %s: %zu viable root pairing(s)\n",
                   ctx_.target.id_of(start).c_str(), roots.size());
    }
    for (const Alt& root : roots) {
      if (optimistic_global(root.cost) > incumbent_) {
        if (trace_level() >= 2) {
          std::fprintf(stderr, "[submatch]   root %s->%s pruned by bound\n",
                       ctx_.target.id_of(start).c_str(),
                       ctx_.query.id_of(root.query).c_str());
        }
        continue;
      }
      run(start, root, out);
    }
  }

 private:
  struct Alt {
    NodeIndex query;
    double cost;
  };

  struct Frame {
    NodeIndex node;
    /// Entries this frame pushed onto the pending stack.
    std::uint32_t pushed = 0;
    /// Index into alts_ of this frame's alternatives; empty when the
    /// node was traversed without pairing.
    std::uint32_t alts_begin = 0;
    std::uint32_t alts_end = 0;
    /// Currently bound alternative, or -1 when unpaired.
    std::int32_t alt_index = -1;
    /// The frame only recorded a pop of an already-visited node.
    bool skip_only = false;
  };

  /// Admissible projection of the global cost: assume every remaining
  /// query node gets mapped at zero cost, which drives the missing-node
  /// penalty to zero and fixes the pair count at the query size.
  double optimistic_global(double local_sum) const {
    return ctx_.params.lambda2 * local_sum /
           static_cast<double>(ctx_.query.node_count());
  }

  /// Query node has at least one already-mapped query neighbor.
  bool adjacent_to_mapped(NodeIndex query_node) const {
    for (NodeIndex n : ctx_.query.neighbors(query_node)) {
      if (n != query_node && state_.query_mapped(n)) return true;
    }
    return false;
  }

  /// Acceptable pairings for a visited target node, cheapest first.
  /// Sets ahead_of_frontier when the node still has an unmapped pairing
  /// candidate that no mapped query node is adjacent to yet.
  void collect_alternatives(NodeIndex target_node, Frame& frame,
                            bool& ahead_of_frontier) {
    ahead_of_frontier = false;
    frame.alts_begin = static_cast<std::uint32_t>(alts_.size());
    for (NodeIndex query_node : pairing_[target_node]) {
      if (state_.query_mapped(query_node)) continue;
      if (!adjacent_to_mapped(query_node)) {
        ahead_of_frontier = true;
        continue;
      }
      const double cost = local_cost(ctx_, target_node, query_node, state_);
      if (cost <= ctx_.params.effective_pairing_threshold()) {
        alts_.push_back(Alt{query_node, cost});
      }
    }
    frame.alts_end = static_cast<std::uint32_t>(alts_.size());
    std::sort(alts_.begin() + frame.alts_begin, alts_.end(),
              [this](const Alt& a, const Alt& b) {
                if (a.cost != b.cost) return a.cost < b.cost;
                return query_ranks_[a.query] < query_ranks_[b.query];
              });
  }

  /// Push unvisited neighbors within the distance bound, nearest id
  /// last so that the lowest id is popped first.
  void push_neighbors(NodeIndex node, Frame& frame) {
    const std::size_t before = pending_.size();
    for (NodeIndex n : ctx_.target.neighbors(node)) {
      if (n == node) continue;
      if (visited_[n]) continue;
      if (dist_[n] > radius_) continue;
      pending_.push_back(n);
    }
    std::sort(pending_.begin() + before, pending_.end(),
              [this](NodeIndex a, NodeIndex b) {
                return target_ranks_[a] > target_ranks_[b];
              });
    frame.pushed = static_cast<std::uint32_t>(pending_.size() - before);
  }

  void emit(NodeIndex start, std::vector<Mapping>& out) {
    Mapping mapping;
    mapping.pairs = state_.pairs();
    mapping.global_cost =
        global_cost(mapping.pairs, ctx_.query.node_count(), ctx_.params);
    mapping.start_target = start;
    incumbent_ = std::min(incumbent_, mapping.global_cost);
    if (trace_level() >= 1) {
      std::fprintf(stderr,
                   "[submatch]   mapping with %zu pair(s), global cost %.6f\n",
                   mapping.pairs.size(), mapping.global_cost);
    }
    out.push_back(std::move(mapping));
  }

  /// Rewind to the deepest frame with an untried, unpruned alternative
  /// and bind it. Returns false when the tree is exhausted or the
  /// backtrack budget runs out.
  bool backtrack() {
    while (!trail_.empty()) {
      Frame& frame = trail_.back();
      if (frame.skip_only) {
        pending_.push_back(frame.node);
        trail_.pop_back();
        continue;
      }
      if (frame.alt_index >= 0) {
        state_.unbind_last();
        // Alternatives are cost-ordered, so the first one that survives
        // the bound is the one to take; later ones only cost more.
        std::int32_t next = frame.alt_index + 1;
        if (next < static_cast<std::int32_t>(frame.alts_end - frame.alts_begin)) {
          const Alt& alt = alts_[frame.alts_begin + next];
          if (optimistic_global(state_.local_cost_sum() + alt.cost) <=
              incumbent_) {
            if (backtracks_left_ == 0) {
              cap_hit_ = true;
              if (trace_level() >= 1) {
                std::fprintf(stderr, "[submatch]   backtrack cap reached\n");
              }
              return false;
            }
            --backtracks_left_;
            frame.alt_index = next;
            state_.bind(frame.node, alt.query, alt.cost);
            if (trace_level() >= 2) {
              std::fprintf(stderr, "[submatch]   backtrack: %s->%s (%.6f)\n",
                           ctx_.target.id_of(frame.node).c_str(),
                           ctx_.query.id_of(alt.query).c_str(), alt.cost);
            }
            return true;
          }
        }
      }
      // Frame exhausted: restore the pending stack and visited mark.
      pending_.resize(pending_.size() - frame.pushed);
      visited_[frame.node] = false;
      pending_.push_back(frame.node);
      alts_.resize(frame.alts_begin);
      trail_.pop_back();
    }
    return false;
  }

  /// One search run: a fixed root pairing, explored to exhaustion.
  void run(NodeIndex start, const Alt& root, std::vector<Mapping>& out) {
    dist_ = hop_distances(ctx_.target, start);
    radius_ = eccentricity_from(ctx_.query, root.query);
    std::fill(visited_.begin(), visited_.end(), false);
    pending_.clear();
    trail_.clear();
    alts_.clear();
    state_.clear();
    pending_.push_back(start);
    if (trace_level() >= 1) {
      std::fprintf(stderr, "[submatch]   root %s->%s (cost %.6f, radius %zu)\n",
                   ctx_.target.id_of(start).c_str(),
                   ctx_.query.id_of(root.query).c_str(), root.cost, radius_);
    }
    bool root_frame = true;
    while (true) {
      if (pending_.empty()) {
        if (state_.size() > 0) emit(start, out);
        if (!backtrack()) break;
        continue;
      }
      const NodeIndex node = pending_.back();
      pending_.pop_back();
      if (visited_[node]) {
        Frame frame;
        frame.node = node;
        frame.skip_only = true;
        trail_.push_back(frame);
        continue;
      }
      Frame frame;
      frame.node = node;
      if (root_frame) {
        // The root pairing is fixed for the whole run; other start
        // candidates get their own run.
        frame.alts_begin = static_cast<std::uint32_t>(alts_.size());
        alts_.push_back(root);
        frame.alts_end = static_cast<std::uint32_t>(alts_.size());
        root_frame = false;
      } else {
        bool ahead_of_frontier = false;
        collect_alternatives(node, frame, ahead_of_frontier);
        if (frame.alts_end == frame.alts_begin && ahead_of_frontier) {
          // Popped ahead of the pairing frontier: every candidate is
          // still waiting for one of its query neighbors to be mapped.
          // Consume the pending entry without visiting so a later
          // neighbor visit can push the node again; the frame restores
          // the entry when the trail unwinds past it.
          frame.skip_only = true;
          trail_.push_back(frame);
          if (trace_level() >= 3) {
            std::fprintf(stderr, "[submatch]   requeue %s (no mapped neighbor yet)\n",
                         ctx_.target.id_of(node).c_str());
          }
          continue;
        }
      }
      visited_[node] = true;
      region_[node] = true;
      const bool has_alts = frame.alts_end > frame.alts_begin;
      if (has_alts &&
          optimistic_global(state_.local_cost_sum() +
                            alts_[frame.alts_begin].cost) > incumbent_) {
        // Even the cheapest pairing cannot beat the incumbent: cut the
        // branch. The frame is pushed bare so backtracking unwinds it.
        frame.alts_end = frame.alts_begin;
        trail_.push_back(frame);
        if (trace_level() >= 2) {
          std::fprintf(stderr, "[submatch]   bound cut at %s\n",
                       ctx_.target.id_of(node).c_str());
        }
        if (!backtrack()) break;
        continue;
      }
      push_neighbors(node, frame);
      if (has_alts) {
        frame.alt_index = 0;
        const Alt& alt = alts_[frame.alts_begin];
        state_.bind(node, alt.query, alt.cost);
        if (trace_level() >= 3) {
          std::fprintf(stderr, "[submatch]   pair %s->%s (%.6f)\n",
                       ctx_.target.id_of(node).c_str(),
                       ctx_.query.id_of(alt.query).c_str(), alt.cost);
        }
      } else if (trace_level() >= 3) {
        std::fprintf(stderr, "[submatch]   traverse %s unpaired\n",
                     ctx_.target.id_of(node).c_str());
      }
      trail_.push_back(frame);
    }
  }

  const CostContext& ctx_;
  const CandidateMap& pairing_;
  MappingState state_;
  std::vector<bool> visited_;
  std::vector<bool> region_;
  std::vector<std::uint32_t> target_ranks_;
  std::vector<std::uint32_t> query_ranks_;
  std::vector<NodeIndex> pending_;
  std::vector<Frame> trail_;
  std::vector<Alt> alts_;
  std::vector<std::size_t> dist_;
  std::size_t radius_ = 0;
  double incumbent_ = std::numeric_limits<double>::infinity();
  std::size_t backtracks_left_ = 0;
  bool cap_hit_ = false;
};

/// Sort ascending by global cost (ties by pair list) and drop repeated
/// pair sets, keeping the cheapest occurrence.
void finalize_mappings(std::vector<Mapping>& mappings,
                       const AttributedGraph& target,
                       const AttributedGraph& query) {
  const std::vector<std::uint32_t> target_ranks = id_order_ranks(target);
  const std::vector<std::uint32_t> query_ranks = id_order_ranks(query);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> keys;
  keys.reserve(mappings.size());
  for (const Mapping& mapping : mappings) {
    keys.push_back(canonical_pairs(mapping, target_ranks, query_ranks));
  }
  std::vector<std::size_t> order(mappings.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return mappings[a].global_cost < mappings[b].global_cost;
  });
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && keys[order[i]] == keys[order[i - 1]]) continue;
    kept.push_back(order[i]);
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    if (mappings[a].global_cost != mappings[b].global_cost) {
      return mappings[a].global_cost < mappings[b].global_cost;
    }
    return keys[a] < keys[b];
  });
  std::vector<Mapping> result;
  result.reserve(kept.size());
  for (std::size_t i : kept) result.push_back(std::move(mappings[i]));
  mappings = std::move(result);
}

}  // namespace

MatchResult match(const AttributedGraph& target, const AttributedGraph& query,
                  const MatchParams& params) {
  params.validate();
  if (target.node_count() == 0) {
    throw std::invalid_argument("match: target graph has no nodes");
  }
  if (query.node_count() == 0) {
    throw std::invalid_argument("match: query graph has no nodes");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const CandidateMap pairing = candidate_map(
      target, query, params.selector, params.candidate_threshold, params.case_fold);
  CandidateMap seeding;
  const CandidateMap* seed_ptr = &pairing;
  if (params.start_candidate_threshold != params.candidate_threshold) {
    seeding = candidate_map(target, query, params.selector,
                            params.start_candidate_threshold, params.case_fold);
    seed_ptr = &seeding;
  }
  const StartSet starts =
      find_start_nodes(target, query, *seed_ptr, pairing, params.k,
                       params.strict_local_check, params.two_hop_excludes_neighbors);
  MatchResult result;
  result.no_start_nodes = starts.empty();
  if (trace_level() >= 1) {
    std::fprintf(stderr, "[submatch] %zu start node(s)\n", starts.size());
  }
  if (!starts.empty()) {
    const CostContext ctx(target, query, params);
    SearchEngine engine(ctx, pairing);
    for (const StartEntry& entry : starts) {
      if (params.skip_visited_starts && engine.in_region(entry.target)) {
        if (trace_level() >= 1) {
          std::fprintf(stderr, "[submatch] start %s already explored, skipped\n",
                       target.id_of(entry.target).c_str());
        }
        continue;
      }
      engine.search_start(entry.target, entry.candidates, result.mappings);
    }
    result.backtrack_cap_hit = engine.cap_hit();
    for (NodeIndex node = 0; node < target.node_count(); ++node) {
      if (engine.region()[node]) result.visited_targets.push_back(node);
    }
    result.explored_node_count = result.visited_targets.size();
  }
  finalize_mappings(result.mappings, target, query);
  if (!result.mappings.empty()) {
    result.start_node_used = result.mappings.front().start_target;
  }
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::vector<Mapping> dfs_from_start(const AttributedGraph& target,
                                    const AttributedGraph& query, NodeIndex start,
                                    const std::vector<NodeIndex>& start_candidates,
                                    const MatchParams& params) {
  params.validate();
  if (start >= target.node_count()) {
    throw std::invalid_argument("dfs_from_start: start node out of range");
  }
  const CandidateMap pairing = candidate_map(
      target, query, params.selector, params.candidate_threshold, params.case_fold);
  const CostContext ctx(target, query, params);
  SearchEngine engine(ctx, pairing);
  std::vector<Mapping> mappings;
  engine.search_start(start, start_candidates, mappings);
  finalize_mappings(mappings, target, query);
  return mappings;
}

}  // namespace submatch
