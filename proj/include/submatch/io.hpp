#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "submatch/cost.hpp"
#include "submatch/fuzz.hpp"
#include "submatch/graph.hpp"
#include "submatch/matcher.hpp"
#include "submatch/start_nodes.hpp"

namespace submatch {

/// File loading, parsing or validation failure. Messages carry the
/// offending path and element (e.g. "graph.json: nodes[3]: ...").
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Graph document schema, version "1":
/// {
///   "format_version": "1",
///   "directed": false,
///   "nodes": [{"id": "a", "attributes": {"name": "Ann"}}, ...],
///   "edges": [{"source": "a", "target": "b", "attributes": {...}}, ...]
/// }
/// Validation is exhaustive: unknown keys, duplicate ids, dangling
/// endpoints and duplicate edges are all rejected with location info.
AttributedGraph graph_from_json(const nlohmann::json& doc, const std::string& origin);
AttributedGraph load_graph(const std::string& path);
nlohmann::json graph_to_json(const AttributedGraph& g);
void save_graph(const AttributedGraph& g, const std::string& path);

/// Flat key-value configuration covering every matcher tunable plus the
/// noise defaults. All keys optional; unknown keys are rejected.
struct ConfigDocument {
  MatchParams params;
  NoiseSpec noise;
};

ConfigDocument config_from_json(const nlohmann::json& doc, const std::string& origin);
ConfigDocument load_config(const std::string& path);

/// Full-parameter echo, loadable back as a config document.
nlohmann::json params_to_json(const MatchParams& params);
nlohmann::json noise_to_json(const NoiseSpec& noise);

/// Result document for the best mapping: its pairs with local costs,
/// the unmapped query nodes, the explored-but-unmapped target nodes,
/// the global cost and a full params echo. Verifies that the stored
/// global cost matches recomputation from the pair list before
/// returning. runtime_seconds is emitted only on request so that equal
/// runs stay byte-identical.
nlohmann::json mapping_document(const MatchResult& result,
                                const AttributedGraph& target,
                                const AttributedGraph& query,
                                const MatchParams& params,
                                bool include_runtime = false);

/// Start set as ordered JSON for inspection.
nlohmann::json start_set_document(const StartSet& starts,
                                  const AttributedGraph& target,
                                  const AttributedGraph& query);

}  // namespace submatch
