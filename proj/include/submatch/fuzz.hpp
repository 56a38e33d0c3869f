#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "submatch/cost.hpp"
#include "submatch/graph.hpp"
#include "submatch/matcher.hpp"

namespace submatch {

/// One grid point of a noise sweep. The seed makes every trial of the
/// point reproducible; per-trial streams are derived from it.
struct NoiseSpec {
  double structural_level = 0.0;
  double attribute_level = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws std::invalid_argument on levels outside [0,1]
};

/// Known-correct pairing of a planted query against its target region,
/// as (target id, query id) pairs. Injective both ways.
struct GroundTruth {
  std::vector<std::pair<NodeId, NodeId>> pairs;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t returned_pairs = 0;
  std::size_t correct_pairs = 0;
};

struct PlantResult {
  AttributedGraph query;
  GroundTruth truth;
};

/// Grow a connected region of `size` nodes breadth-first from
/// seed_node (the rng shuffles expansion order within each level), and
/// return its induced subgraph under fresh query node ids together with
/// the identity ground truth. Throws when fewer than `size` nodes are
/// reachable from seed_node.
PlantResult plant_query(const AttributedGraph& target, const NodeId& seed_node,
                        std::size_t size, std::mt19937_64& rng);

/// Structural perturbation: delete each node with probability `level`
/// (with incident edges), delete each surviving edge with probability
/// `level`, add an edge with empty attributes between each non-adjacent
/// surviving unordered node pair with probability `level / 4`, then
/// keep only the largest connected component.
AttributedGraph add_structural_noise(const AttributedGraph& graph, double level,
                                     std::mt19937_64& rng);

/// Attribute perturbation: each node is selected with probability
/// `level`; for a selected node, a uniform count of its attribute keys
/// is chosen uniformly and each chosen value is replaced by a random
/// same-length lowercase string.
AttributedGraph add_attribute_noise(const AttributedGraph& graph, double level,
                                    std::mt19937_64& rng);

/// Drop truth pairs whose query node no longer exists in the (noisy)
/// query graph, so that recall is measured against survivors only.
GroundTruth filter_truth(const GroundTruth& truth, const AttributedGraph& query);

/// Score the best (lowest global cost) mapping of a result against the
/// ground truth. Pass a truth already restricted to noise survivors
/// (see filter_truth); its size is the recall denominator.
EvalReport score(const MatchResult& result, const GroundTruth& truth,
                 const AttributedGraph& target, const AttributedGraph& query);

struct PlantSpec {
  NodeId seed_node;
  std::size_t size = 1;
};

struct TrialRow {
  double structural_level = 0.0;
  double attribute_level = 0.0;
  std::size_t trial = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct SweepSummary {
  double structural_level = 0.0;
  double attribute_level = 0.0;
  double mean_precision = 0.0, std_precision = 0.0;
  double mean_recall = 0.0, std_recall = 0.0;
  double mean_f1 = 0.0, std_f1 = 0.0;
};

struct SweepTable {
  std::vector<TrialRow> trials;
  std::vector<SweepSummary> summaries;
};

/// For each grid point, run `trials` seeded trials of
/// plant -> structural noise -> attribute noise -> match -> score.
/// Trial t of grid point g uses the stream seeded with
/// derive_seed(grid[g].rng_seed, t), so results are reproducible and
/// independent of execution order. Failed trials score 0.
SweepTable run_noise_sweep(const AttributedGraph& target, const PlantSpec& plant,
                           const std::vector<NoiseSpec>& grid,
                           const MatchParams& params, std::size_t trials);

/// Plot-ready CSV: header `structural_level,attribute_level,trial,
/// precision,recall,f1`, one row per trial, then per grid point a row
/// flagged `mean` and one flagged `std` in the trial column.
void write_sweep_csv(const SweepTable& table, std::ostream& out);

}  // namespace submatch
