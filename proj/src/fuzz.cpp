#include "submatch/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

#include "submatch/rng.hpp"

namespace submatch {

namespace {

std::string fresh_query_id(std::size_t index, std::size_t total) {
  std::size_t width = 1;
  for (std::size_t v = total > 0 ? total - 1 : 0; v >= 10; v /= 10) ++width;
  if (width < 2) width = 2;
  std::string digits = std::to_string(index);
  return "q" + std::string(width - digits.size(), '0') + digits;
}

/// Nodes of the largest connected component (ties: the component with
/// the smallest node index), ascending.
std::vector<NodeIndex> largest_component(const AttributedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<NodeIndex> best;
  for (NodeIndex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<NodeIndex> component{root};
    seen[root] = true;
    for (std::size_t next = 0; next < component.size(); ++next) {
      for (NodeIndex nb : g.neighbors(component[next])) {
        if (!seen[nb]) {
          seen[nb] = true;
          component.push_back(nb);
        }
      }
    }
    // Roots ascend, so the first component of the maximal size is the
    // one with the smallest node index.
    if (component.size() > best.size()) best = std::move(component);
  }
  std::sort(best.begin(), best.end());
  return best;
}

double sample_std(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

void append_csv_level(std::string& line, double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  line += buf;
}

void append_csv_metric(std::string& line, double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  line += buf;
}

}  // namespace

void NoiseSpec::validate() const {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(structural_level)) {
    throw std::invalid_argument("structural_level must be in [0,1]");
  }
  if (!in_unit(attribute_level)) {
    throw std::invalid_argument("attribute_level must be in [0,1]");
  }
}

PlantResult plant_query(const AttributedGraph& target, const NodeId& seed_node,
                        std::size_t size, std::mt19937_64& rng) {
  if (size < 1) throw std::invalid_argument("plant_query: size must be >= 1");
  if (size > target.node_count()) {
    throw GraphError("plant_query: size " + std::to_string(size) +
                     " exceeds target node count " +
                     std::to_string(target.node_count()));
  }
  const NodeIndex seed = target.index_of(seed_node);
  // Breadth-first region growth; the rng only shuffles order within a
  // level, so the chosen set is always a union of full levels plus a
  // random part of the last level.
  std::vector<NodeIndex> chosen;
  std::vector<bool> visited(target.node_count(), false);
  std::vector<NodeIndex> level{seed};
  visited[seed] = true;
  while (chosen.size() < size && !level.empty()) {
    for (std::size_t i = level.size(); i > 1; --i) {
      std::swap(level[i - 1], level[uniform_index(rng, i)]);
    }
    for (NodeIndex node : level) {
      if (chosen.size() == size) break;
      chosen.push_back(node);
    }
    std::vector<NodeIndex> next;
    for (NodeIndex node : level) {
      for (NodeIndex nb : target.neighbors(node)) {
        if (!visited[nb]) {
          visited[nb] = true;
          next.push_back(nb);
        }
      }
    }
    level = std::move(next);
  }
  if (chosen.size() < size) {
    throw GraphError("plant_query: only " + std::to_string(chosen.size()) +
                     " node(s) reachable from '" + seed_node + "', need " +
                     std::to_string(size));
  }

  PlantResult result{AttributedGraph(target.directed()), GroundTruth{}};
  std::vector<std::int64_t> to_fresh(target.node_count(), -1);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const NodeId fresh = fresh_query_id(i, size);
    result.query.add_node(fresh, target.node_attributes(chosen[i]));
    to_fresh[chosen[i]] = static_cast<std::int64_t>(i);
    result.truth.pairs.emplace_back(target.id_of(chosen[i]), fresh);
  }
  for (const Edge& edge : target.edges()) {
    const std::int64_t s = to_fresh[edge.source];
    const std::int64_t t = to_fresh[edge.target];
    if (s >= 0 && t >= 0) {
      result.query.add_edge(static_cast<NodeIndex>(s), static_cast<NodeIndex>(t),
                            edge.attributes);
    }
  }
  return result;
}

AttributedGraph add_structural_noise(const AttributedGraph& graph, double level,
                                     std::mt19937_64& rng) {
  if (level < 0.0 || level > 1.0) {
    throw std::invalid_argument("add_structural_noise: level must be in [0,1]");
  }
  if (level == 0.0) return graph;

  // Draw order is part of the contract with seeded reproducibility:
  // node deletions by ascending index, edge deletions in edge insertion
  // order, edge additions by ascending (i, j) pair, plus one direction
  // bit per added edge on directed graphs.
  const std::size_t n = graph.node_count();
  std::vector<bool> dead(n, false);
  for (NodeIndex i = 0; i < n; ++i) dead[i] = uniform_unit(rng) < level;

  AttributedGraph noisy(graph.directed());
  std::vector<std::int64_t> to_new(n, -1);
  for (NodeIndex i = 0; i < n; ++i) {
    if (!dead[i]) {
      to_new[i] = noisy.add_node(graph.id_of(i), graph.node_attributes(i));
    }
  }
  for (const Edge& edge : graph.edges()) {
    if (dead[edge.source] || dead[edge.target]) continue;
    if (uniform_unit(rng) < level) continue;
    noisy.add_edge(static_cast<NodeIndex>(to_new[edge.source]),
                   static_cast<NodeIndex>(to_new[edge.target]), edge.attributes);
  }
  const double add_level = level / 4.0;
  const std::size_t m = noisy.node_count();
  for (NodeIndex i = 0; i < m; ++i) {
    for (NodeIndex j = i + 1; j < m; ++j) {
      if (noisy.edge_between(i, j) != nullptr) continue;
      if (uniform_unit(rng) >= add_level) continue;
      if (noisy.directed() && uniform_unit(rng) < 0.5) {
        noisy.add_edge(j, i);
      } else {
        noisy.add_edge(i, j);
      }
    }
  }
  const std::vector<NodeIndex> keep = largest_component(noisy);
  if (keep.size() == noisy.node_count()) return noisy;
  return induced_subgraph(noisy, keep);
}

AttributedGraph add_attribute_noise(const AttributedGraph& graph, double level,
                                    std::mt19937_64& rng) {
  if (level < 0.0 || level > 1.0) {
    throw std::invalid_argument("add_attribute_noise: level must be in [0,1]");
  }
  if (level == 0.0) return graph;

  AttributedGraph noisy(graph.directed());
  for (NodeIndex i = 0; i < graph.node_count(); ++i) {
    AttributeMap attrs = graph.node_attributes(i);
    if (uniform_unit(rng) < level && !attrs.empty()) {
      std::vector<std::string> keys;
      keys.reserve(attrs.size());
      for (const auto& [key, value] : attrs) keys.push_back(key);
      const std::size_t count = 1 + uniform_index(rng, keys.size());
      for (std::size_t pick = 0; pick < count; ++pick) {
        std::swap(keys[pick], keys[pick + uniform_index(rng, keys.size() - pick)]);
        std::string& value = attrs[keys[pick]];
        value = random_lowercase_string(rng, value.size());
      }
    }
    noisy.add_node(graph.id_of(i), std::move(attrs));
  }
  for (const Edge& edge : graph.edges()) {
    noisy.add_edge(edge.source, edge.target, edge.attributes);
  }
  return noisy;
}

GroundTruth filter_truth(const GroundTruth& truth, const AttributedGraph& query) {
  GroundTruth out;
  for (const auto& pair : truth.pairs) {
    if (query.has_node(pair.second)) out.pairs.push_back(pair);
  }
  return out;
}

EvalReport score(const MatchResult& result, const GroundTruth& truth,
                 const AttributedGraph& target, const AttributedGraph& query) {
  EvalReport report;
  std::set<std::pair<NodeId, NodeId>> truth_set(truth.pairs.begin(),
                                                truth.pairs.end());
  if (!result.mappings.empty()) {
    const Mapping& best = result.mappings.front();
    report.returned_pairs = best.pairs.size();
    for (const MappedPair& pair : best.pairs) {
      if (truth_set.count({target.id_of(pair.target), query.id_of(pair.query)})) {
        ++report.correct_pairs;
      }
    }
  }
  const double correct = static_cast<double>(report.correct_pairs);
  if (report.returned_pairs > 0) {
    report.precision = correct / static_cast<double>(report.returned_pairs);
  }
  if (!truth_set.empty()) {
    report.recall = correct / static_cast<double>(truth_set.size());
  }
  if (report.precision + report.recall > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall /
                (report.precision + report.recall);
  }
  return report;
}

SweepTable run_noise_sweep(const AttributedGraph& target, const PlantSpec& plant,
                           const std::vector<NoiseSpec>& grid,
                           const MatchParams& params, std::size_t trials) {
  if (trials < 1) throw std::invalid_argument("run_noise_sweep: trials must be >= 1");
  params.validate();
  SweepTable table;
  for (const NoiseSpec& spec : grid) {
    spec.validate();
    std::vector<double> precisions, recalls, f1s;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      std::mt19937_64 rng(derive_seed(spec.rng_seed, trial));
      EvalReport report;
      try {
        PlantResult planted = plant_query(target, plant.seed_node, plant.size, rng);
        AttributedGraph noisy =
            add_structural_noise(planted.query, spec.structural_level, rng);
        noisy = add_attribute_noise(noisy, spec.attribute_level, rng);
        const GroundTruth survivors = filter_truth(planted.truth, noisy);
        const MatchResult result = match(target, noisy, params);
        report = score(result, survivors, target, noisy);
      } catch (const std::exception&) {
        report = EvalReport{};  // failed trial scores 0
      }
      table.trials.push_back(TrialRow{spec.structural_level, spec.attribute_level,
                                      trial, report.precision, report.recall,
                                      report.f1});
      precisions.push_back(report.precision);
      recalls.push_back(report.recall);
      f1s.push_back(report.f1);
    }
    SweepSummary summary;
    summary.structural_level = spec.structural_level;
    summary.attribute_level = spec.attribute_level;
    const double count = static_cast<double>(trials);
    for (double v : precisions) summary.mean_precision += v;
    for (double v : recalls) summary.mean_recall += v;
    for (double v : f1s) summary.mean_f1 += v;
    summary.mean_precision /= count;
    summary.mean_recall /= count;
    summary.mean_f1 /= count;
    summary.std_precision = sample_std(precisions, summary.mean_precision);
    summary.std_recall = sample_std(recalls, summary.mean_recall);
    summary.std_f1 = sample_std(f1s, summary.mean_f1);
    table.summaries.push_back(summary);
  }
  return table;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
  out << "structural_level,attribute_level,trial,precision,recall,f1\n";
  std::size_t summary_index = 0;
  for (std::size_t i = 0; i < table.trials.size(); ++i) {
    const TrialRow& row = table.trials[i];
    std::string line;
    append_csv_level(line, row.structural_level);
    line += ',';
    append_csv_level(line, row.attribute_level);
    line += ',';
    line += std::to_string(row.trial);
    line += ',';
    append_csv_metric(line, row.precision);
    line += ',';
    append_csv_metric(line, row.recall);
    line += ',';
    append_csv_metric(line, row.f1);
    out << line << '\n';
    // Grid points are contiguous trial blocks; emit the point's summary
    // rows right after its last trial.
    const bool block_end =
        i + 1 == table.trials.size() || table.trials[i + 1].trial == 0;
    if (block_end && summary_index < table.summaries.size()) {
      const SweepSummary& s = table.summaries[summary_index++];
      std::string mean_line, std_line;
      append_csv_level(mean_line, s.structural_level);
      mean_line += ',';
      append_csv_level(mean_line, s.attribute_level);
      mean_line += ",mean,";
      append_csv_metric(mean_line, s.mean_precision);
      mean_line += ',';
      append_csv_metric(mean_line, s.mean_recall);
      mean_line += ',';
      append_csv_metric(mean_line, s.mean_f1);
      out << mean_line << '\n';
      append_csv_level(std_line, s.structural_level);
      std_line += ',';
      append_csv_level(std_line, s.attribute_level);
      std_line += ",std,";
      append_csv_metric(std_line, s.std_precision);
      std_line += ',';
      append_csv_metric(std_line, s.std_recall);
      std_line += ',';
      append_csv_metric(std_line, s.std_f1);
      out << std_line << '\n';
    }
  }
}

}  // namespace submatch
