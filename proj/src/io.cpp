#include "submatch/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <vector>

namespace submatch {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& where,
                       const std::string& what) {
  throw IoError(origin + ": " + where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& origin, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(origin, where, "unknown key '" + item.key() + "'");
    }
  }
}

AttributeMap attributes_from_json(const json& value, const std::string& origin,
                                  const std::string& where) {
  if (!value.is_object()) fail(origin, where, "attributes must be an object");
  AttributeMap attrs;
  for (const auto& item : value.items()) {
    if (!item.value().is_string()) {
      fail(origin, where, "attribute '" + item.key() + "' must be a string");
    }
    attrs[item.key()] = item.value().get<std::string>();
  }
  return attrs;
}

json attributes_to_json(const AttributeMap& attrs) {
  json out = json::object();
  for (const auto& [key, value] : attrs) out[key] = value;
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

/// Node ids sorted by id string; `keep` filters by node index.
template <typename Keep>
json sorted_id_array(const AttributedGraph& g, Keep keep) {
  std::vector<NodeId> ids;
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    if (keep(n)) ids.push_back(g.id_of(n));
  }
  std::sort(ids.begin(), ids.end());
  return json(ids);
}

}  // namespace

AttributedGraph graph_from_json(const json& doc, const std::string& origin) {
  if (!doc.is_object()) fail(origin, "$", "graph document must be a JSON object");
  reject_unknown_keys(doc, {"format_version", "directed", "nodes", "edges"}, origin,
                      "$");
  if (!doc.contains("format_version") || !doc["format_version"].is_string()) {
    fail(origin, "format_version", "missing or not a string");
  }
  if (doc["format_version"].get<std::string>() != "1") {
    fail(origin, "format_version",
         "unsupported version '" + doc["format_version"].get<std::string>() +
             "' (expected \"1\")");
  }
  bool directed = false;
  if (doc.contains("directed")) {
    if (!doc["directed"].is_boolean()) fail(origin, "directed", "must be a boolean");
    directed = doc["directed"].get<bool>();
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    fail(origin, "nodes", "missing or not an array");
  }

  AttributedGraph g(directed);
  std::size_t i = 0;
  for (const json& node : doc["nodes"]) {
    const std::string where = "nodes[" + std::to_string(i++) + "]";
    if (!node.is_object()) fail(origin, where, "node must be an object");
    reject_unknown_keys(node, {"id", "attributes"}, origin, where);
    if (!node.contains("id") || !node["id"].is_string()) {
      fail(origin, where, "missing or non-string id");
    }
    AttributeMap attrs;
    if (node.contains("attributes")) {
      attrs = attributes_from_json(node["attributes"], origin, where);
    }
    try {
      g.add_node(node["id"].get<std::string>(), std::move(attrs));
    } catch (const GraphError& e) {
      fail(origin, where, e.what());
    }
  }

  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) fail(origin, "edges", "must be an array");
    i = 0;
    for (const json& edge : doc["edges"]) {
      const std::string where = "edges[" + std::to_string(i++) + "]";
      if (!edge.is_object()) fail(origin, where, "edge must be an object");
      reject_unknown_keys(edge, {"source", "target", "attributes"}, origin, where);
      for (const char* endpoint : {"source", "target"}) {
        if (!edge.contains(endpoint) || !edge[endpoint].is_string()) {
          fail(origin, where, std::string("missing or non-string ") + endpoint);
        }
        const std::string id = edge[endpoint].get<std::string>();
        if (!g.has_node(id)) {
          fail(origin, where, "unknown node '" + id + "'");
        }
      }
      AttributeMap attrs;
      if (edge.contains("attributes")) {
        attrs = attributes_from_json(edge["attributes"], origin, where);
      }
      try {
        g.add_edge(edge["source"].get<std::string>(),
                   edge["target"].get<std::string>(), std::move(attrs));
      } catch (const GraphError& e) {
        fail(origin, where, e.what());
      }
    }
  }
  return g;
}

AttributedGraph load_graph(const std::string& path) {
  return graph_from_json(read_json_file(path), path);
}

json graph_to_json(const AttributedGraph& g) {
  json doc;
  doc["format_version"] = "1";
  doc["directed"] = g.directed();
  json nodes = json::array();
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    nodes.push_back(json{{"id", g.id_of(n)},
                         {"attributes", attributes_to_json(g.node_attributes(n))}});
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const Edge& edge : g.edges()) {
    edges.push_back(json{{"source", g.id_of(edge.source)},
                         {"target", g.id_of(edge.target)},
                         {"attributes", attributes_to_json(edge.attributes)}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

void save_graph(const AttributedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open file for writing");
  out << graph_to_json(g).dump(2) << '\n';
  if (!out) throw IoError(path + ": write failed");
}

ConfigDocument config_from_json(const json& doc, const std::string& origin) {
  if (!doc.is_object()) fail(origin, "$", "config must be a JSON object");
  ConfigDocument config;
  MatchParams& p = config.params;

  const auto number = [&](const json& v, const char* key) {
    if (!v.is_number()) fail(origin, key, "must be a number");
    return v.get<double>();
  };
  const auto unsigned_number = [&](const json& v, const char* key) {
    // Accept any integer representation as long as the value is >= 0;
    // json builders produce signed integers for plain literals.
    if (!v.is_number_integer() ||
        (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      fail(origin, key, "must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  const auto boolean = [&](const json& v, const char* key) {
    if (!v.is_boolean()) fail(origin, key, "must be a boolean");
    return v.get<bool>();
  };

  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    const json& value = item.value();
    if (key == "gamma") {
      p.gamma = number(value, "gamma");
    } else if (key == "lambda1") {
      p.lambda1 = number(value, "lambda1");
    } else if (key == "lambda2") {
      p.lambda2 = number(value, "lambda2");
    } else if (key == "pairing_cost_threshold") {
      p.pairing_cost_threshold = number(value, "pairing_cost_threshold");
    } else if (key == "k") {
      p.k = static_cast<std::size_t>(unsigned_number(value, "k"));
    } else if (key == "candidate_threshold") {
      p.candidate_threshold = number(value, "candidate_threshold");
    } else if (key == "start_candidate_threshold") {
      p.start_candidate_threshold = number(value, "start_candidate_threshold");
    } else if (key == "selector_keys") {
      if (!value.is_array()) fail(origin, "selector_keys", "must be an array");
      std::vector<std::string> keys;
      std::set<std::string> seen;
      for (const json& entry : value) {
        if (!entry.is_string()) {
          fail(origin, "selector_keys", "entries must be strings");
        }
        const std::string entry_str = entry.get<std::string>();
        if (!seen.insert(entry_str).second) {
          fail(origin, "selector_keys", "duplicate key '" + entry_str + "'");
        }
        keys.push_back(entry_str);
      }
      p.selector.keys = std::move(keys);
    } else if (key == "mode") {
      if (!value.is_string()) fail(origin, "mode", "must be a string");
      const std::string mode = value.get<std::string>();
      if (mode == "exact") {
        p.mode = MatchMode::kExact;
      } else if (mode == "inexact") {
        p.mode = MatchMode::kInexact;
      } else {
        fail(origin, "mode", "must be \"exact\" or \"inexact\"");
      }
    } else if (key == "edge_substitution") {
      if (!value.is_string()) fail(origin, "edge_substitution", "must be a string");
      const std::string sub = value.get<std::string>();
      if (sub == "binary") {
        p.edge_cost_spec.substitution = EdgeSubstitution::kBinary;
      } else if (sub == "graded") {
        p.edge_cost_spec.substitution = EdgeSubstitution::kGraded;
      } else {
        fail(origin, "edge_substitution", "must be \"binary\" or \"graded\"");
      }
    } else if (key == "edge_deletion_cost") {
      p.edge_cost_spec.deletion_cost = number(value, "edge_deletion_cost");
    } else if (key == "edge_addition_cost") {
      p.edge_cost_spec.addition_cost = number(value, "edge_addition_cost");
    } else if (key == "strict_local_check") {
      p.strict_local_check = boolean(value, "strict_local_check");
    } else if (key == "two_hop_excludes_neighbors") {
      p.two_hop_excludes_neighbors = boolean(value, "two_hop_excludes_neighbors");
    } else if (key == "case_fold") {
      p.case_fold = boolean(value, "case_fold");
    } else if (key == "skip_visited_starts") {
      p.skip_visited_starts = boolean(value, "skip_visited_starts");
    } else if (key == "max_backtracks") {
      p.max_backtracks = static_cast<std::size_t>(unsigned_number(value, "max_backtracks"));
    } else if (key == "structural_level") {
      config.noise.structural_level = number(value, "structural_level");
    } else if (key == "attribute_level") {
      config.noise.attribute_level = number(value, "attribute_level");
    } else if (key == "rng_seed") {
      config.noise.rng_seed = unsigned_number(value, "rng_seed");
    } else {
      fail(origin, key, "unknown key");
    }
  }
  try {
    p.validate();
    config.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw IoError(origin + ": " + e.what());
  }
  return config;
}

ConfigDocument load_config(const std::string& path) {
  return config_from_json(read_json_file(path), path);
}

json params_to_json(const MatchParams& p) {
  json doc;
  doc["gamma"] = p.gamma;
  doc["lambda1"] = p.lambda1;
  doc["lambda2"] = p.lambda2;
  doc["pairing_cost_threshold"] = p.pairing_cost_threshold;
  doc["k"] = p.k;
  doc["candidate_threshold"] = p.candidate_threshold;
  doc["start_candidate_threshold"] = p.start_candidate_threshold;
  doc["selector_keys"] = json(p.selector.keys);
  doc["mode"] = p.mode == MatchMode::kExact ? "exact" : "inexact";
  doc["edge_substitution"] =
      p.edge_cost_spec.substitution == EdgeSubstitution::kBinary ? "binary" : "graded";
  doc["edge_deletion_cost"] = p.edge_cost_spec.deletion_cost;
  doc["edge_addition_cost"] = p.edge_cost_spec.addition_cost;
  doc["strict_local_check"] = p.strict_local_check;
  doc["two_hop_excludes_neighbors"] = p.two_hop_excludes_neighbors;
  doc["case_fold"] = p.case_fold;
  doc["skip_visited_starts"] = p.skip_visited_starts;
  doc["max_backtracks"] = p.max_backtracks;
  return doc;
}

json noise_to_json(const NoiseSpec& noise) {
  json doc;
  doc["structural_level"] = noise.structural_level;
  doc["attribute_level"] = noise.attribute_level;
  doc["rng_seed"] = noise.rng_seed;
  return doc;
}

json mapping_document(const MatchResult& result, const AttributedGraph& target,
                      const AttributedGraph& query, const MatchParams& params,
                      bool include_runtime) {
  json doc;
  doc["format_version"] = "1";
  doc["params"] = params_to_json(params);
  doc["mappings_found"] = result.mappings.size();
  doc["no_start_nodes"] = result.no_start_nodes;
  doc["backtrack_cap_hit"] = result.backtrack_cap_hit;
  if (include_runtime) doc["runtime_seconds"] = result.runtime_seconds;

  std::vector<bool> target_mapped(target.node_count(), false);
  std::vector<bool> query_mapped(query.node_count(), false);
  if (result.mappings.empty()) {
    doc["global_cost"] = nullptr;
    doc["pairs"] = json::array();
  } else {
    const Mapping& best = result.mappings.front();
    std::vector<MappedPair> pairs = best.pairs;
    std::sort(pairs.begin(), pairs.end(), [&](const MappedPair& a, const MappedPair& b) {
      return target.id_of(a.target) < target.id_of(b.target);
    });
    json pair_array = json::array();
    for (const MappedPair& pair : pairs) {
      target_mapped[pair.target] = true;
      query_mapped[pair.query] = true;
      pair_array.push_back(json{{"target", target.id_of(pair.target)},
                                {"query", query.id_of(pair.query)},
                                {"local_cost", pair.local_cost}});
    }
    doc["pairs"] = std::move(pair_array);
    doc["global_cost"] = best.global_cost;
    doc["start_node"] = target.id_of(best.start_target);

    const double recomputed = global_cost(best.pairs, query.node_count(), params);
    if (std::abs(recomputed - best.global_cost) > 1e-9) {
      throw IoError("mapping document failed the cost self-check: stored " +
                    std::to_string(best.global_cost) + ", recomputed " +
                    std::to_string(recomputed));
    }
  }
  doc["unmapped_query_nodes"] =
      sorted_id_array(query, [&](NodeIndex n) { return !query_mapped[n]; });
  std::vector<bool> explored(target.node_count(), false);
  for (NodeIndex n : result.visited_targets) explored[n] = true;
  doc["unmapped_explored_target_nodes"] = sorted_id_array(
      target, [&](NodeIndex n) { return explored[n] && !target_mapped[n]; });
  return doc;
}

json start_set_document(const StartSet& starts, const AttributedGraph& target,
                        const AttributedGraph& query) {
  json doc = json::array();
  for (const StartEntry& entry : starts) {
    std::vector<NodeId> candidates;
    for (NodeIndex q : entry.candidates) candidates.push_back(query.id_of(q));
    std::sort(candidates.begin(), candidates.end());
    doc.push_back(json{{"target", target.id_of(entry.target)},
                       {"candidates", json(candidates)}});
  }
  return doc;
}

}  // namespace submatch
