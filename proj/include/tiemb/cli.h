#ifndef TIEMB_CLI_H_
#define TIEMB_CLI_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tiemb/embed.h"

namespace tiemb::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

// Fully resolved configuration of one pipeline stage. Fields that a command
// does not use keep their defaults.
struct RunConfig {
  // induce | baseline | walks | train | eval | export-dot
  std::string command;

  std::filesystem::path types;
  std::filesystem::path embeddings;
  std::string embedding_format = "word2vec-text";
  std::string link_mode = "exact";
  std::filesystem::path graph;
  std::filesystem::path corpus;
  std::filesystem::path predicted;
  std::filesystem::path gold;
  std::filesystem::path class_map;
  std::filesystem::path axioms;

  std::string metric = "euclidean";
  std::string radius_mode = "rms";
  size_t min_class_size = 2;
  bool break_cycles = false;

  // apriori | relational
  std::string baseline = "apriori";
  std::string relation_mode = "in_out";
  size_t min_support = 50;
  double min_confidence = 0.5;

  int walks_per_entity = 250;
  int depth = 4;
  SgnsConfig sgns;

  size_t sample = 0;
  bool direct_only = false;

  std::vector<std::string> roots;
  std::optional<int> max_depth;

  uint64_t seed = 1;
  int threads = 1;
  std::filesystem::path out_dir;

  // Checks enumerated values and that every input the command reads exists.
  // Throws ConfigError naming the offending flag or path.
  void Validate() const;

  // Input paths read by `command`, keyed by role.
  std::vector<std::pair<std::string, std::filesystem::path>> Inputs() const;

  nlohmann::json ToJson() const;
  static RunConfig FromJson(const nlohmann::json &j);
};

// Runs one command with all paths made absolute. Outputs are staged in out_dir and only appear if the
// whole command succeeds; `run-manifest.json` records the configuration and
// input digests. Throws ConfigError / DataError.
void Execute(RunConfig config);

// Re-runs the command recorded in a manifest, optionally into another
// directory. Throws DataError if an input no longer matches its digest.
void Replay(const std::filesystem::path &manifest,
            const std::optional<std::filesystem::path> &out_dir);

// Hex SHA-256 of a file's contents.
std::string FileDigest(const std::filesystem::path &path);

// Parses argv and runs; returns one of ExitCode.
int Main(int argc, const char *const *argv);

}  // namespace tiemb::cli

#endif  // TIEMB_CLI_H_
