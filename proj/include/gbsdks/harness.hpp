#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbsdks/graph.hpp"
#include "gbsdks/optimize.hpp"
#include "gbsdks/sampler.hpp"

namespace gbsdks {

// ---- configuration ---------------------------------------------------------

struct GraphSource {
  std::string type = "planted";  // planted | erdos_renyi | file
  std::uint64_t seed = 1;
  bool shuffle = false;
  int n = 30;
  double p = 0.5;
  std::string path;
};

struct SamplerConfig {
  std::string type = "exact";  // exact | mis
  MisParams mis;
};

inline const std::vector<std::string> kMethods = {"uniform-rs", "gbs-rs", "uniform-sa", "gbs-sa"};

struct ExperimentConfig {
  std::string id = "fig3";
  GraphSource graph;
  int k = 10;
  std::vector<std::string> methods = kMethods;
  int repetitions = 400;
  std::vector<std::uint64_t> checkpoints = {1, 2, 5, 10, 20, 50, 100, 200, 500};
  AnnealParams anneal;
  SamplerConfig sampler;
  std::string output_dir;
  std::uint64_t master_seed = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string cache_dir;

  /// Throws InputError on any violated field constraint.
  void validate() const;
};

/// Unknown keys anywhere are InputErrors; missing keys keep their defaults.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig read_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Graph named by the source plus, for planted sources, the planted subset.
struct LoadedGraph {
  Graph graph;
  std::optional<VertexSubset> planted;
};
LoadedGraph load_graph(const GraphSource& src);

/// Seed for repetition `rep` of method `method_index` (its position in
/// kMethods): derive_seed(master, method_index + 1, rep).
std::uint64_t run_seed(std::uint64_t master, std::size_t method_index, std::uint64_t rep);

// ---- figure 1: Hafnian vs edges --------------------------------------------

struct Fig1Row {
  double p = 0.0;
  int index = 0;
  int edges = 0;
  std::uint64_t hafnian = 0;
  double bound = 0.0;                      // perfect-matching bound at `edges`
  std::optional<std::int64_t> bound_edges;  // unset when hafnian == 0
};

struct Fig1Config {
  int k = 16;
  std::vector<double> probs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  int per_p = 600;
  std::uint64_t seed = 1;
};

/// Graph i of probability index j uses seed derive_seed(seed, j, i).
std::vector<Fig1Row> fig1_sweep(const Fig1Config& cfg);

// ---- figure 3: optimizer comparison ----------------------------------------

struct AggregateCurve {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::map<std::string, double> reference_lines;

  bool operator==(const AggregateCurve&) const = default;
};

struct MethodResult {
  std::string method;
  AggregateCurve curve;
  double final_mean = 0.0;
  double final_stddev = 0.0;
  SamplerEvents events;
};

struct Fig3Result {
  ExperimentConfig config;
  std::string fingerprint;
  int greedy_edges = 0;
  std::optional<int> optimum_edges;
  std::optional<int> planted_edges;
  std::vector<MethodResult> methods;
};

/// Mean and sample standard deviation (0 for a single value).
std::pair<double, double> mean_stddev(const std::vector<double>& values);

/// Runs every repetition of every configured method on derived streams. A
/// failing run aborts the experiment; when cfg.output_dir is set the methods
/// finished so far are dumped to partial_results.json first.
Fig3Result fig3_compare(const ExperimentConfig& cfg);

// ---- outputs ---------------------------------------------------------------

nlohmann::json to_json(const SamplerEvents& e);
nlohmann::json to_json(const Fig3Result& r);
Fig3Result fig3_from_json(const nlohmann::json& j);

std::string fig3_csv(const Fig3Result& r);
std::string fig3_svg(const Fig3Result& r);

std::string fig1_csv(const std::vector<Fig1Row>& rows);
nlohmann::json fig1_json(const std::vector<Fig1Row>& rows, const Fig1Config& cfg);
/// Log-scale scatter; rows with hafnian 0 are left out and counted in the
/// embedded metadata.
std::string fig1_svg(const std::vector<Fig1Row>& rows, const Fig1Config& cfg);

enum class OutputFormat { csv, json, svg };

void emit_outputs(const Fig3Result& r, OutputFormat format, const std::filesystem::path& path);
void emit_outputs(const std::vector<Fig1Row>& rows, const Fig1Config& cfg, OutputFormat format,
                  const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace gbsdks
