// Command-line front end for the subgraph matching library.
//
// Subcommands:
//   match        locate a query graph inside a target graph
//   find-starts  show the start nodes the search would launch from
//   fuzz         noise-robustness sweep: plant, perturb, match, score
//   gen          emit synthetic benchmark graphs
//
// Exit codes: 0 success (match: mapping found), 2 no start nodes,
// 3 start nodes but no mapping, 4 I/O, validation or usage errors.
// Set SUBMATCH_LOG=1..3 for search tracing on stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "submatch/fuzz.hpp"
#include "submatch/io.hpp"
#include "submatch/matcher.hpp"
#include "submatch/synthetic.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNoStartNodes = 2;
constexpr int kExitNoMapping = 3;
constexpr int kExitError = 4;

std::vector<double> parse_level_list(const std::string& text) {
  std::vector<double> levels;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double value = std::stod(item, &used);
    if (used != item.size()) {
      throw submatch::IoError("invalid level '" + item + "'");
    }
    levels.push_back(value);
  }
  if (levels.empty()) throw submatch::IoError("empty level list");
  return levels;
}

std::vector<std::string> parse_key_list(const std::string& text) {
  std::vector<std::string> keys;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) keys.push_back(item);
  }
  return keys;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw submatch::IoError(out_path + ": cannot open file for writing");
  out << text;
  if (!out) throw submatch::IoError(out_path + ": write failed");
}

/// Matcher tunables shared by the match/find-starts/fuzz subcommands:
/// config file first, then individual flag overrides.
struct ParamOptions {
  std::string config_path;
  double gamma = 0, lambda1 = 0, lambda2 = 0, threshold = 0, candidate_threshold = 0;
  std::uint64_t k = 0, max_backtracks = 0;
  std::string attrs;
  bool exact = false;
  bool independent_starts = false;

  CLI::Option* gamma_opt = nullptr;
  CLI::Option* lambda1_opt = nullptr;
  CLI::Option* lambda2_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* candidate_threshold_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* max_backtracks_opt = nullptr;
  CLI::Option* attrs_opt = nullptr;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path,
                   "JSON config file with matcher and noise settings");
    cmd.add_flag("--exact", exact, "exact matching (zero pairing cost only)");
    cmd.add_flag("--independent-starts", independent_starts,
                 "search every start node even when an earlier search "
                 "already visited it (slower, finds more)");
    gamma_opt = cmd.add_option("--gamma", gamma,
                               "node attribute vs look-ahead weight in [0,1]");
    lambda1_opt =
        cmd.add_option("--lambda1", lambda1, "node vs edge cost weight in [0,1]");
    lambda2_opt = cmd.add_option(
        "--lambda2", lambda2, "mean local cost vs missing-node penalty weight");
    threshold_opt = cmd.add_option("--threshold", threshold,
                                   "max acceptable pairing cost in [0,1]");
    candidate_threshold_opt =
        cmd.add_option("--candidate-threshold", candidate_threshold,
                       "attribute similarity floor for pairing candidates");
    k_opt = cmd.add_option("--k", k, "start nodes need fewer than k candidates");
    max_backtracks_opt = cmd.add_option("--max-backtracks", max_backtracks,
                                        "backtrack budget per start-node search");
    attrs_opt = cmd.add_option("--attrs", attrs,
                               "comma-separated attribute keys to compare "
                               "(default: all shared keys)");
  }

  submatch::ConfigDocument resolve() const {
    submatch::ConfigDocument config;
    if (!config_path.empty()) config = submatch::load_config(config_path);
    submatch::MatchParams& p = config.params;
    if (exact) p.mode = submatch::MatchMode::kExact;
    if (independent_starts) p.skip_visited_starts = false;
    if (gamma_opt->count()) p.gamma = gamma;
    if (lambda1_opt->count()) p.lambda1 = lambda1;
    if (lambda2_opt->count()) p.lambda2 = lambda2;
    if (threshold_opt->count()) p.pairing_cost_threshold = threshold;
    if (candidate_threshold_opt->count()) p.candidate_threshold = candidate_threshold;
    if (k_opt->count()) p.k = static_cast<std::size_t>(k);
    if (max_backtracks_opt->count()) {
      p.max_backtracks = static_cast<std::size_t>(max_backtracks);
    }
    if (attrs_opt->count()) p.selector.keys = parse_key_list(attrs);
    p.validate();
    return config;
  }
};

struct MatchOptions {
  std::string target_path, query_path, out_path = "-";
  bool timing = false;
  ParamOptions params;
};

int run_match(const MatchOptions& opt) {
  const submatch::ConfigDocument config = opt.params.resolve();
  const submatch::AttributedGraph target = submatch::load_graph(opt.target_path);
  const submatch::AttributedGraph query = submatch::load_graph(opt.query_path);
  const submatch::MatchResult result =
      submatch::match(target, query, config.params);
  const nlohmann::json doc = submatch::mapping_document(
      result, target, query, config.params, opt.timing);
  write_text(opt.out_path, doc.dump(2) + "\n");
  if (result.no_start_nodes) {
    std::cerr << "no start nodes survived candidate pruning; consider a larger "
                 "--k (current "
              << config.params.k << ") or a lower --candidate-threshold\n";
    return kExitNoStartNodes;
  }
  if (result.mappings.empty()) {
    std::cerr << "start nodes were found but no pairing stayed under the cost "
                 "threshold\n";
    return kExitNoMapping;
  }
  return kExitSuccess;
}

struct FindStartsOptions {
  std::string target_path, query_path;
  ParamOptions params;
};

int run_find_starts(const FindStartsOptions& opt) {
  const submatch::ConfigDocument config = opt.params.resolve();
  const submatch::MatchParams& p = config.params;
  const submatch::AttributedGraph target = submatch::load_graph(opt.target_path);
  const submatch::AttributedGraph query = submatch::load_graph(opt.query_path);
  const submatch::CandidateMap pairing = submatch::candidate_map(
      target, query, p.selector, p.candidate_threshold, p.case_fold);
  submatch::CandidateMap seeding;
  const submatch::CandidateMap* seed = &pairing;
  if (p.start_candidate_threshold != p.candidate_threshold) {
    seeding = submatch::candidate_map(target, query, p.selector,
                                      p.start_candidate_threshold, p.case_fold);
    seed = &seeding;
  }
  const submatch::StartSet starts =
      submatch::find_start_nodes(target, query, *seed, pairing, p.k,
                                 p.strict_local_check, p.two_hop_excludes_neighbors);
  std::cout << submatch::start_set_document(starts, target, query).dump(2) << "\n";
  if (starts.empty()) {
    std::cerr << "no start nodes survived candidate pruning; consider a larger "
                 "--k (current "
              << p.k << ")\n";
  }
  return kExitSuccess;
}

struct FuzzOptions {
  std::string target_path, seed_node, out_path = "-";
  std::uint64_t size = 1;
  std::string structural = "0", attribute = "0";
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  ParamOptions params;
  CLI::Option* seed_opt = nullptr;
};

int run_fuzz(const FuzzOptions& opt) {
  const submatch::ConfigDocument config = opt.params.resolve();
  const submatch::AttributedGraph target = submatch::load_graph(opt.target_path);
  const std::uint64_t base_seed =
      opt.seed_opt->count() ? opt.seed : config.noise.rng_seed;
  std::vector<submatch::NoiseSpec> grid;
  for (double s : parse_level_list(opt.structural)) {
    for (double a : parse_level_list(opt.attribute)) {
      grid.push_back(submatch::NoiseSpec{s, a, base_seed});
    }
  }
  const submatch::PlantSpec plant{opt.seed_node,
                                  static_cast<std::size_t>(opt.size)};
  const submatch::SweepTable table = submatch::run_noise_sweep(
      target, plant, grid, config.params, static_cast<std::size_t>(opt.trials));
  std::ostringstream csv;
  submatch::write_sweep_csv(table, csv);
  write_text(opt.out_path, csv.str());
  return kExitSuccess;
}

struct GenOptions {
  std::string kind = "cfg", out_path = "-";
  std::uint64_t seed = 0;
  std::uint64_t nodes = 1000;
  double mean_degree = 3.0;
};

int run_gen(const GenOptions& opt) {
  submatch::AttributedGraph g =
      opt.kind == "cfg"
          ? submatch::cfg_like_target(opt.seed)
          : submatch::random_connected_graph(static_cast<std::size_t>(opt.nodes),
                                             opt.mean_degree, opt.seed);
  write_text(opt.out_path, submatch::graph_to_json(g).dump(2) + "\n");
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Inexact subgraph matching on node- and edge-attributed graphs.\n"
      "Set SUBMATCH_LOG=1..3 for search tracing on stderr."};
  app.require_subcommand(1);
  int exit_code = kExitSuccess;

  auto match_opt = std::make_shared<MatchOptions>();
  CLI::App* match_cmd =
      app.add_subcommand("match", "locate a query graph inside a target graph");
  match_cmd->add_option("--target", match_opt->target_path, "target graph JSON")
      ->required();
  match_cmd->add_option("--query", match_opt->query_path, "query graph JSON")
      ->required();
  match_cmd->add_option("--out", match_opt->out_path,
                        "mapping document path ('-' for stdout)");
  match_cmd->add_flag("--timing", match_opt->timing,
                      "include runtime_seconds in the output (breaks "
                      "byte-for-byte reproducibility)");
  match_opt->params.attach(*match_cmd);
  match_cmd->callback([match_opt, &exit_code] { exit_code = run_match(*match_opt); });

  auto starts_opt = std::make_shared<FindStartsOptions>();
  CLI::App* starts_cmd = app.add_subcommand(
      "find-starts", "show the start nodes the search would launch from");
  starts_cmd->add_option("--target", starts_opt->target_path, "target graph JSON")
      ->required();
  starts_cmd->add_option("--query", starts_opt->query_path, "query graph JSON")
      ->required();
  starts_opt->params.attach(*starts_cmd);
  starts_cmd->callback(
      [starts_opt, &exit_code] { exit_code = run_find_starts(*starts_opt); });

  auto fuzz_opt = std::make_shared<FuzzOptions>();
  CLI::App* fuzz_cmd = app.add_subcommand(
      "fuzz", "noise-robustness sweep: plant, perturb, match, score");
  fuzz_cmd->add_option("--target", fuzz_opt->target_path, "target graph JSON")
      ->required();
  fuzz_cmd->add_option("--seed-node", fuzz_opt->seed_node,
                       "target node the planted query grows from")
      ->required();
  fuzz_cmd->add_option("--size", fuzz_opt->size, "planted query node count")
      ->required();
  fuzz_cmd->add_option("--structural", fuzz_opt->structural,
                       "comma-separated structural noise levels (default 0)");
  fuzz_cmd->add_option("--attribute", fuzz_opt->attribute,
                       "comma-separated attribute noise levels (default 0)");
  fuzz_opt->seed_opt =
      fuzz_cmd->add_option("--seed", fuzz_opt->seed, "base RNG seed");
  fuzz_cmd->add_option("--trials", fuzz_opt->trials, "trials per grid point");
  fuzz_cmd->add_option("--out", fuzz_opt->out_path,
                       "CSV output path ('-' for stdout)");
  fuzz_opt->params.attach(*fuzz_cmd);
  fuzz_cmd->callback([fuzz_opt, &exit_code] { exit_code = run_fuzz(*fuzz_opt); });

  auto gen_opt = std::make_shared<GenOptions>();
  CLI::App* gen_cmd = app.add_subcommand("gen", "emit synthetic benchmark graphs");
  gen_cmd->add_option("--kind", gen_opt->kind, "cfg | random")
      ->check(CLI::IsMember({"cfg", "random"}));
  gen_cmd->add_option("--seed", gen_opt->seed, "generator seed");
  gen_cmd->add_option("--nodes", gen_opt->nodes, "node count (random kind)");
  gen_cmd->add_option("--mean-degree", gen_opt->mean_degree,
                      "mean degree (random kind)");
  gen_cmd->add_option("--out", gen_opt->out_path, "output path ('-' for stdout)");
  gen_cmd->callback([gen_opt, &exit_code] { exit_code = run_gen(*gen_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
