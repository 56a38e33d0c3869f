#include "submatch/fuzz.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "submatch/rng.hpp"
#include "submatch/synthetic.hpp"

namespace submatch {
namespace {

/// Structural equality on construction order: ids, attributes, edges.
bool graph_equal(const AttributedGraph& a, const AttributedGraph& b) {
  if (a.directed() != b.directed()) return false;
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  for (NodeIndex i = 0; i < a.node_count(); ++i) {
    if (a.id_of(i) != b.id_of(i)) return false;
    if (a.node_attributes(i) != b.node_attributes(i)) return false;
  }
  for (std::size_t e = 0; e < a.edges().size(); ++e) {
    if (a.edges()[e].source != b.edges()[e].source) return false;
    if (a.edges()[e].target != b.edges()[e].target) return false;
    if (a.edges()[e].attributes != b.edges()[e].attributes) return false;
  }
  return true;
}

AttributedGraph tiny_path() {
  AttributedGraph g;
  g.add_node("a", {{"name", "ANN"}});
  g.add_node("b", {{"name", "BOB"}});
  g.add_node("c", {{"name", "CAM"}});
  g.add_edge("a", "b", {{"rel", "knows"}});
  g.add_edge("b", "c", {{"rel", "likes"}});
  return g;
}

TEST(PlantQuery, SingleNodeAndWholeGraph) {
  const AttributedGraph target = tiny_path();
  std::mt19937_64 rng(5);
  const PlantResult one = plant_query(target, "b", 1, rng);
  EXPECT_EQ(one.query.node_count(), 1u);
  EXPECT_EQ(one.query.edge_count(), 0u);
  ASSERT_EQ(one.truth.pairs.size(), 1u);
  EXPECT_EQ(one.truth.pairs[0].first, "b");
  EXPECT_EQ(one.query.node_attributes(0).at("name"), "BOB");

  const PlantResult whole = plant_query(target, "a", 3, rng);
  EXPECT_EQ(whole.query.node_count(), 3u);
  EXPECT_EQ(whole.query.edge_count(), 2u);
  EXPECT_EQ(whole.truth.pairs.size(), 3u);
  // Fresh ids do not collide with target ids; edge attributes survive.
  for (NodeIndex i = 0; i < whole.query.node_count(); ++i) {
    EXPECT_FALSE(target.has_node(whole.query.id_of(i)));
  }
  bool knows = false, likes = false;
  for (const Edge& e : whole.query.edges()) {
    if (e.attributes.count("rel")) {
      knows = knows || e.attributes.at("rel") == "knows";
      likes = likes || e.attributes.at("rel") == "likes";
    }
  }
  EXPECT_TRUE(knows && likes);
}

TEST(PlantQuery, GrowsFullBreadthFirstLevelsFirst) {
  AttributedGraph star;
  star.add_node("s", {{"name", "hub"}});
  for (int i = 1; i <= 4; ++i) {
    star.add_node("l" + std::to_string(i), {{"name", "leaf"}});
    star.add_edge("s", "l" + std::to_string(i));
  }
  std::mt19937_64 rng(9);
  const PlantResult planted = plant_query(star, "s", 3, rng);
  EXPECT_EQ(planted.query.node_count(), 3u);
  bool has_hub = false;
  for (const auto& [target_id, query_id] : planted.truth.pairs) {
    if (target_id == "s") has_hub = true;
  }
  EXPECT_TRUE(has_hub) << "level 0 must be taken before any level-1 node";

  std::mt19937_64 rng_a(33), rng_b(33);
  EXPECT_TRUE(graph_equal(plant_query(star, "s", 4, rng_a).query,
                          plant_query(star, "s", 4, rng_b).query));
}

TEST(PlantQuery, RejectsOversizedOrUnreachableRegions) {
  const AttributedGraph target = tiny_path();
  std::mt19937_64 rng(7);
  EXPECT_THROW(plant_query(target, "a", 4, rng), GraphError);
  EXPECT_THROW(plant_query(target, "a", 0, rng), std::invalid_argument);

  AttributedGraph split;
  split.add_node("a");
  split.add_node("b");
  split.add_node("c");
  split.add_edge("a", "b");
  EXPECT_THROW(plant_query(split, "a", 3, rng), GraphError);
}

TEST(PlantQuery, SyntheticClustersReproduceTheirShapes) {
  const AttributedGraph target = cfg_like_target(7);
  ASSERT_EQ(target.node_count(), kCfgTargetNodes);
  ASSERT_EQ(target.edge_count(), kCfgTargetEdges);
  ASSERT_TRUE(target.directed());

  const struct {
    const char* entry;
    const char* prefix;
    std::size_t nodes;
    std::size_t edges;
  } shapes[] = {{kClusterEntry16, "f16_", 16, 16},
                {kClusterEntry32, "f32_", 32, 48},
                {kClusterEntry55, "f55_", 55, 77}};
  for (const auto& shape : shapes) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      std::mt19937_64 rng(seed);
      const PlantResult planted = plant_query(target, shape.entry, shape.nodes, rng);
      EXPECT_EQ(planted.query.node_count(), shape.nodes) << shape.entry;
      EXPECT_EQ(planted.query.edge_count(), shape.edges) << shape.entry;
      for (const auto& [target_id, query_id] : planted.truth.pairs) {
        EXPECT_EQ(target_id.substr(0, 4), shape.prefix)
            << "plant escaped its cluster at " << target_id;
      }
    }
  }
}

TEST(StructuralNoise, LevelZeroIsIdentity) {
  const AttributedGraph g = tiny_path();
  std::mt19937_64 rng(3);
  EXPECT_TRUE(graph_equal(add_structural_noise(g, 0.0, rng), g));
}

TEST(StructuralNoise, LevelOneDeletesEveryNode) {
  const AttributedGraph g = tiny_path();
  std::mt19937_64 rng(3);
  EXPECT_EQ(add_structural_noise(g, 1.0, rng).node_count(), 0u);
}

TEST(StructuralNoise, ResultIsConnectedSubsetWithOriginalOrEmptyAttributes) {
  std::mt19937_64 graph_rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const AttributedGraph g =
        random_connected_graph(10 + uniform_index(graph_rng, 20), 2.5,
                               derive_seed(55, trial));
    std::mt19937_64 rng(derive_seed(56, trial));
    const double level = 0.05 + 0.4 * uniform_unit(rng);
    const AttributedGraph noisy = add_structural_noise(g, level, rng);
    if (noisy.node_count() == 0) continue;
    // Connected: every node reachable from node 0.
    const std::vector<std::size_t> dist = hop_distances(noisy, 0);
    for (std::size_t d : dist) EXPECT_NE(d, SIZE_MAX);
    for (NodeIndex i = 0; i < noisy.node_count(); ++i) {
      ASSERT_TRUE(g.has_node(noisy.id_of(i)));
      EXPECT_EQ(noisy.node_attributes(i),
                g.node_attributes(g.index_of(noisy.id_of(i))));
    }
    for (const Edge& e : noisy.edges()) {
      const Edge* original = g.edge_between(g.index_of(noisy.id_of(e.source)),
                                            g.index_of(noisy.id_of(e.target)));
      if (original != nullptr) {
        // Either the surviving original edge, or a deleted one whose
        // node pair was re-linked in the addition phase (empty attrs).
        EXPECT_TRUE(e.attributes == original->attributes || e.attributes.empty());
      } else {
        EXPECT_TRUE(e.attributes.empty()) << "added edges carry no attributes";
      }
    }
  }
}

TEST(StructuralNoise, SeededRunsAreBitIdentical) {
  const AttributedGraph g = random_connected_graph(25, 3.0, 77);
  std::mt19937_64 rng_a(123), rng_b(123);
  EXPECT_TRUE(graph_equal(add_structural_noise(g, 0.2, rng_a),
                          add_structural_noise(g, 0.2, rng_b)));
}

TEST(StructuralNoise, EdgeAdditionRateTracksQuarterLevel) {
  // Two 15-cliques joined by one bridge: 224 non-adjacent cross pairs.
  // At level 0.04 each gains an edge with probability 0.01, so about
  // 2.1 additions per trial once node deletions are priced in.
  AttributedGraph g;
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < 15; ++i) {
      g.add_node("c" + std::to_string(c) + "_" + std::to_string(i));
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < 15; ++i) {
      for (int j = i + 1; j < 15; ++j) {
        g.add_edge("c" + std::to_string(c) + "_" + std::to_string(i),
                   "c" + std::to_string(c) + "_" + std::to_string(j));
      }
    }
  }
  g.add_edge("c0_0", "c1_0");

  double added_total = 0.0;
  const int trials = 400;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(derive_seed(91, trial));
    const AttributedGraph noisy = add_structural_noise(g, 0.04, rng);
    for (const Edge& e : noisy.edges()) {
      const NodeIndex a = g.index_of(noisy.id_of(e.source));
      const NodeIndex b = g.index_of(noisy.id_of(e.target));
      if (g.edge_between(a, b) == nullptr) added_total += 1.0;
    }
  }
  const double mean_added = added_total / trials;
  EXPECT_GT(mean_added, 1.6);
  EXPECT_LT(mean_added, 2.7);
}

TEST(AttributeNoise, LevelZeroIsIdentity) {
  const AttributedGraph g = tiny_path();
  std::mt19937_64 rng(3);
  EXPECT_TRUE(graph_equal(add_attribute_noise(g, 0.0, rng), g));
}

TEST(AttributeNoise, LevelOneAltersEveryNodeAndNothingElse) {
  AttributedGraph g;
  for (int i = 0; i < 40; ++i) {
    g.add_node("n" + std::to_string(i),
               {{"name", "ABCDEF"}, {"dob", "19000101"}});
  }
  for (int i = 1; i < 40; ++i) {
    g.add_edge("n0", "n" + std::to_string(i), {{"rel", "R"}});
  }
  std::mt19937_64 rng(17);
  const AttributedGraph noisy = add_attribute_noise(g, 1.0, rng);
  ASSERT_EQ(noisy.node_count(), g.node_count());
  ASSERT_EQ(noisy.edge_count(), g.edge_count());
  for (NodeIndex i = 0; i < noisy.node_count(); ++i) {
    EXPECT_EQ(noisy.id_of(i), g.id_of(i));
    const AttributeMap& attrs = noisy.node_attributes(i);
    ASSERT_EQ(attrs.size(), 2u);
    int altered = 0;
    for (const auto& [key, value] : attrs) {
      const std::string& original = g.node_attributes(i).at(key);
      ASSERT_EQ(value.size(), original.size());
      if (value != original) {
        ++altered;
        for (char ch : value) {
          EXPECT_TRUE(ch >= 'a' && ch <= 'z');
        }
      }
    }
    // Originals use upper case and digits, so every replacement shows.
    EXPECT_GE(altered, 1);
  }
  for (const Edge& e : noisy.edges()) {
    EXPECT_EQ(e.attributes, (AttributeMap{{"rel", "R"}}));
  }
}

TEST(AttributeNoise, AlteredKeyCountIsUniform) {
  AttributedGraph g;
  for (int i = 0; i < 600; ++i) {
    g.add_node("n" + std::to_string(i),
               {{"k1", "AAAA"}, {"k2", "BBBB"}, {"k3", "CCCC"}});
  }
  std::mt19937_64 rng(29);
  const AttributedGraph noisy = add_attribute_noise(g, 1.0, rng);
  int histogram[4] = {0, 0, 0, 0};
  for (NodeIndex i = 0; i < noisy.node_count(); ++i) {
    int altered = 0;
    for (const auto& [key, value] : noisy.node_attributes(i)) {
      if (value != g.node_attributes(i).at(key)) ++altered;
    }
    ASSERT_GE(altered, 1);
    ASSERT_LE(altered, 3);
    ++histogram[altered];
  }
  // c ~ uniform{1,2,3}: each bucket near 200 of 600 (sd about 11.5).
  for (int c = 1; c <= 3; ++c) {
    EXPECT_GT(histogram[c], 140) << "bucket " << c;
    EXPECT_LT(histogram[c], 260) << "bucket " << c;
  }
}

TEST(FilterTruth, DropsPairsWhoseQueryNodeIsGone) {
  AttributedGraph query;
  query.add_node("q00");
  query.add_node("q02");
  GroundTruth truth;
  truth.pairs = {{"a", "q00"}, {"b", "q01"}, {"c", "q02"}};
  const GroundTruth kept = filter_truth(truth, query);
  ASSERT_EQ(kept.pairs.size(), 2u);
  EXPECT_EQ(kept.pairs[0].second, "q00");
  EXPECT_EQ(kept.pairs[1].second, "q02");
}

/// Builds a MatchResult whose best mapping pairs the first `returned`
/// nodes of target/query graphs named t0.., q0...
struct ScoreFixture {
  AttributedGraph target;
  AttributedGraph query;
  GroundTruth truth;

  explicit ScoreFixture(int truth_pairs) {
    for (int i = 0; i < truth_pairs; ++i) {
      target.add_node("t" + std::to_string(i));
      query.add_node("q" + std::to_string(i));
      truth.pairs.emplace_back("t" + std::to_string(i), "q" + std::to_string(i));
    }
  }

  MatchResult result_with(const std::vector<std::pair<int, int>>& pairs) const {
    MatchResult result;
    Mapping m;
    for (const auto& [t, q] : pairs) {
      m.pairs.push_back(MappedPair{static_cast<NodeIndex>(t),
                                   static_cast<NodeIndex>(q), 0.0});
    }
    m.global_cost = 0.0;
    result.mappings.push_back(std::move(m));
    return result;
  }
};

TEST(Score, PerfectMappingScoresAllOnes) {
  const ScoreFixture fx(4);
  const MatchResult result = fx.result_with({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  const EvalReport report = score(result, fx.truth, fx.target, fx.query);
  EXPECT_DOUBLE_EQ(report.precision, 1.0);
  EXPECT_DOUBLE_EQ(report.recall, 1.0);
  EXPECT_DOUBLE_EQ(report.f1, 1.0);
  EXPECT_EQ(report.returned_pairs, 4u);
  EXPECT_EQ(report.correct_pairs, 4u);
}

TEST(Score, NoMappingsScoreZero) {
  const ScoreFixture fx(4);
  const EvalReport report = score(MatchResult{}, fx.truth, fx.target, fx.query);
  EXPECT_DOUBLE_EQ(report.precision, 0.0);
  EXPECT_DOUBLE_EQ(report.recall, 0.0);
  EXPECT_DOUBLE_EQ(report.f1, 0.0);
  EXPECT_EQ(report.returned_pairs, 0u);
}

TEST(Score, EightOfTenAllCorrect) {
  const ScoreFixture fx(10);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 8; ++i) pairs.push_back({i, i});
  const EvalReport report =
      score(fx.result_with(pairs), fx.truth, fx.target, fx.query);
  EXPECT_DOUBLE_EQ(report.precision, 1.0);
  EXPECT_DOUBLE_EQ(report.recall, 0.8);
  EXPECT_NEAR(report.f1, 0.888889, 1e-6);
}

TEST(Score, WrongPairsCostPrecisionAndRecall) {
  const ScoreFixture fx(4);
  // Two correct pairs, two cross-wired ones.
  const MatchResult result = fx.result_with({{0, 0}, {1, 1}, {2, 3}, {3, 2}});
  const EvalReport report = score(result, fx.truth, fx.target, fx.query);
  EXPECT_DOUBLE_EQ(report.precision, 0.5);
  EXPECT_DOUBLE_EQ(report.recall, 0.5);
  EXPECT_DOUBLE_EQ(report.f1, 0.5);
}

TEST(Score, OnlyTheBestMappingIsScored) {
  const ScoreFixture fx(3);
  MatchResult result = fx.result_with({{0, 0}, {1, 1}, {2, 2}});
  Mapping worse;
  worse.pairs = {MappedPair{0, 1, 0.0}};
  worse.global_cost = 0.9;
  result.mappings.push_back(std::move(worse));
  const EvalReport report = score(result, fx.truth, fx.target, fx.query);
  EXPECT_DOUBLE_EQ(report.f1, 1.0);
}

TEST(Synthetic, RandomConnectedGraphMeetsItsContract) {
  const AttributedGraph g = random_connected_graph(60, 3.0, 11);
  EXPECT_EQ(g.node_count(), 60u);
  EXPECT_EQ(g.edge_count(), 90u);  // round(60 * 3 / 2)
  const std::vector<std::size_t> dist = hop_distances(g, 0);
  std::set<std::string> names;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    EXPECT_NE(dist[i], SIZE_MAX) << "graph must be connected";
    names.insert(g.node_attributes(i).at("name"));
  }
  EXPECT_EQ(names.size(), g.node_count()) << "names must be unique";
  EXPECT_TRUE(graph_equal(g, random_connected_graph(60, 3.0, 11)));
  EXPECT_FALSE(graph_equal(g, random_connected_graph(60, 3.0, 12)));
}

TEST(Synthetic, CfgTargetIsDeterministicWithNamedEntries) {
  const AttributedGraph g = cfg_like_target(3);
  EXPECT_TRUE(graph_equal(g, cfg_like_target(3)));
  for (const char* entry : {kClusterEntry16, kClusterEntry32, kClusterEntry55}) {
    ASSERT_TRUE(g.has_node(entry));
    const AttributeMap& attrs = g.node_attributes(g.index_of(entry));
    EXPECT_EQ(attrs.count("ops"), 1u);
    EXPECT_EQ(attrs.count("size"), 1u);
    EXPECT_EQ(attrs.at("ops").size(), 8u);
  }
}

TEST(NoiseSweep, ZeroNoisePointRecoversPlantsPerfectly) {
  const AttributedGraph target = random_connected_graph(60, 3.0, 11);
  const PlantSpec plant{target.id_of(0), 8};
  const std::vector<NoiseSpec> grid{{0.0, 0.0, 42}};
  // Perfect zero-noise recovery is an exact-mode guarantee: with the
  // pairing threshold at 0 no near-duplicate name can steal a slot.
  MatchParams exact;
  exact.mode = MatchMode::kExact;
  const SweepTable table = run_noise_sweep(target, plant, grid, exact, 3);
  ASSERT_EQ(table.trials.size(), 3u);
  ASSERT_EQ(table.summaries.size(), 1u);
  for (const TrialRow& row : table.trials) {
    EXPECT_DOUBLE_EQ(row.f1, 1.0);
    EXPECT_DOUBLE_EQ(row.precision, 1.0);
    EXPECT_DOUBLE_EQ(row.recall, 1.0);
  }
  EXPECT_DOUBLE_EQ(table.summaries[0].mean_f1, 1.0);
  EXPECT_DOUBLE_EQ(table.summaries[0].std_f1, 0.0);
}

TEST(NoiseSweep, NoiseNeverBeatsTheCleanPoint) {
  const AttributedGraph target = random_connected_graph(80, 3.0, 13);
  const PlantSpec plant{target.id_of(0), 10};
  const std::vector<NoiseSpec> grid{{0.0, 0.0, 101}, {0.0, 0.6, 101}};
  const SweepTable table = run_noise_sweep(target, plant, grid, MatchParams{}, 20);
  ASSERT_EQ(table.summaries.size(), 2u);
  EXPECT_GE(table.summaries[0].mean_f1, table.summaries[1].mean_f1 - 1e-12);
  EXPECT_LT(table.summaries[1].mean_f1, 0.999)
      << "heavy attribute noise should cost something";
}

TEST(NoiseSweep, FailedTrialsScoreZeroInsteadOfThrowing) {
  const AttributedGraph target = tiny_path();
  const PlantSpec plant{"a", 999};  // always fails: region too small
  const std::vector<NoiseSpec> grid{{0.0, 0.0, 7}};
  const SweepTable table = run_noise_sweep(target, plant, grid, MatchParams{}, 2);
  ASSERT_EQ(table.trials.size(), 2u);
  for (const TrialRow& row : table.trials) {
    EXPECT_DOUBLE_EQ(row.f1, 0.0);
  }
  EXPECT_DOUBLE_EQ(table.summaries[0].mean_f1, 0.0);
}

TEST(NoiseSweep, TrialSeedsDoNotDependOnTrialCount) {
  const AttributedGraph target = random_connected_graph(40, 2.5, 19);
  const PlantSpec plant{target.id_of(0), 6};
  const std::vector<NoiseSpec> grid{{0.05, 0.2, 77}};
  const SweepTable five = run_noise_sweep(target, plant, grid, MatchParams{}, 5);
  const SweepTable three = run_noise_sweep(target, plant, grid, MatchParams{}, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(five.trials[i].f1, three.trials[i].f1);
    EXPECT_DOUBLE_EQ(five.trials[i].precision, three.trials[i].precision);
    EXPECT_DOUBLE_EQ(five.trials[i].recall, three.trials[i].recall);
  }
  EXPECT_THROW(run_noise_sweep(target, plant, grid, MatchParams{}, 0),
               std::invalid_argument);
  const std::vector<NoiseSpec> bad{{-0.1, 0.0, 1}};
  EXPECT_THROW(run_noise_sweep(target, plant, bad, MatchParams{}, 1),
               std::invalid_argument);
}

TEST(NoiseSweep, CsvHasContractShapeAndIsByteStable) {
  const AttributedGraph target = random_connected_graph(40, 2.5, 23);
  const PlantSpec plant{target.id_of(0), 5};
  const std::vector<NoiseSpec> grid{{0.0, 0.0, 3}, {0.5, 0.25, 4}};
  const SweepTable table = run_noise_sweep(target, plant, grid, MatchParams{}, 4);
  std::ostringstream out_a, out_b;
  write_sweep_csv(table, out_a);
  write_sweep_csv(table, out_b);
  EXPECT_EQ(out_a.str(), out_b.str());

  std::istringstream in(out_a.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 1u + 8u + 4u);  // header + trials + mean/std pairs
  EXPECT_EQ(lines[0], "structural_level,attribute_level,trial,precision,recall,f1");
  EXPECT_EQ(lines[1].substr(0, 6), "0,0,0,");
  EXPECT_EQ(lines[5].rfind("0,0,mean,", 0), 0u);
  EXPECT_EQ(lines[6].rfind("0,0,std,", 0), 0u);
  EXPECT_EQ(lines[7].rfind("0.5,0.25,0,", 0), 0u);
  EXPECT_EQ(lines[11].rfind("0.5,0.25,mean,", 0), 0u);
  EXPECT_EQ(lines[12].rfind("0.5,0.25,std,", 0), 0u);
}

}  // namespace
}  // namespace submatch
