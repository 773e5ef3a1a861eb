#include "tiemb/cli.h"

#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "CLI11.hpp"
#include "tiemb/baselines.h"
#include "tiemb/core.h"
#include "tiemb/dot.h"
#include "tiemb/error.h"
#include "tiemb/eval.h"
#include "tiemb/ingest.h"

namespace tiemb::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char *kManifestName = "run-manifest.json";

// Output files are written under temporary names and renamed into place by
// Commit(). Anything not committed is deleted on destruction.
class StagedOutputs {
 public:
  explicit StagedOutputs(fs::path dir) : dir_(std::move(dir)) {}
  StagedOutputs(const StagedOutputs &) = delete;
  StagedOutputs &operator=(const StagedOutputs &) = delete;

  ~StagedOutputs() {
    if (committed_) return;
    for (auto &f : files_) {
      f.stream.close();
      std::error_code ec;
      fs::remove(f.staged, ec);
    }
  }

  std::ofstream &Open(const std::string &name) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
      throw DataError(fmt::format("cannot create output directory '{}': {}",
                                  dir_.string(), ec.message()));
    }
    File f{dir_ / ("." + name + ".partial"), dir_ / name, {}};
    f.stream.open(f.staged, std::ios::binary | std::ios::trunc);
    if (!f.stream) {
      throw DataError(fmt::format("cannot write '{}'", f.staged.string()));
    }
    files_.push_back(std::move(f));
    return files_.back().stream;
  }

  void Commit() {
    for (auto &f : files_) {
      f.stream.close();
      if (!f.stream) {
        throw DataError(fmt::format("error writing '{}'", f.final.string()));
      }
    }
    for (auto &f : files_) fs::rename(f.staged, f.final);
    committed_ = true;
  }

 private:
  struct File {
    fs::path staged;
    fs::path final;
    std::ofstream stream;
  };

  fs::path dir_;
  std::deque<File> files_;
  bool committed_ = false;
};

void RequireFile(const fs::path &path, std::string_view flag) {
  if (path.empty()) throw ConfigError(fmt::format("{} is required", flag));
  if (!fs::is_regular_file(path)) {
    throw ConfigError(
        fmt::format("input file '{}' ({}) does not exist", path.string(), flag));
  }
}

void RunInduce(const RunConfig &config, StagedOutputs &out) {
  auto kb = ParseInstanceTypes(config.types);
  auto space = ParseEmbeddings(config.embeddings,
                               ParseEmbeddingFormat(config.embedding_format));
  auto link = LinkInstances(kb, space, ParseLinkMode(config.link_mode));

  InduceOptions options;
  options.metric = ParseMetric(config.metric);
  options.radius_mode = ParseRadiusMode(config.radius_mode);
  options.min_class_size = config.min_class_size;
  options.break_cycles = config.break_cycles;
  options.threads = config.threads;
  auto taxonomy = InduceTaxonomy(kb, link.space, options);

  WriteAxiomTsv(taxonomy.direct, taxonomy.closed, out.Open("axioms.tsv"));
  WriteClusterTsv(taxonomy.clusters, out.Open("clusters.tsv"));
  if (!taxonomy.cycles.empty()) {
    WriteCycleTsv(taxonomy.cycles, out.Open("cycles.tsv"));
  }
  std::cout << fmt::format(
      "linked {} of {} instances; {} classes clustered; {} direct, {} total "
      "axioms; {} cycles\n",
      link.linked, kb.num_instances(), taxonomy.clusters.size(),
      taxonomy.direct.size(), taxonomy.closed.size(), taxonomy.cycles.size());
}

void RunBaseline(const RunConfig &config, StagedOutputs &out) {
  auto kb = ParseInstanceTypes(config.types);
  if (config.baseline == "apriori") {
    AxiomSet rules =
        AprioriAxioms(kb, config.min_support, config.min_confidence);
    if (config.break_cycles) rules = BreakCycles(rules);
    auto closure = TransitiveClosure(rules);
    WriteAxiomTsv(rules, closure.axioms, out.Open("axioms.tsv"));
    if (!closure.cycles.empty()) {
      WriteCycleTsv(closure.cycles, out.Open("cycles.tsv"));
    }
    std::cout << fmt::format("{} rules, {} axioms after closure; {} cycles\n",
                             rules.size(), closure.axioms.size(),
                             closure.cycles.size());
    return;
  }

  auto graph = ParseGraphEdges(config.graph);
  std::set<std::string> entities;
  for (const auto &[instance, classes] : kb.instance_types()) {
    if (graph.HasNode(instance)) entities.insert(instance);
  }
  auto features = RelationalFeatures(graph, entities,
                                     ParseRelationMode(config.relation_mode));
  InduceOptions options;
  options.metric = ParseMetric(config.metric);
  options.radius_mode = ParseRadiusMode(config.radius_mode);
  options.min_class_size = config.min_class_size;
  options.break_cycles = config.break_cycles;
  options.threads = config.threads;
  auto taxonomy = InduceTaxonomy(kb, features, options);
  WriteAxiomTsv(taxonomy.direct, taxonomy.closed, out.Open("axioms.tsv"));
  WriteClusterTsv(taxonomy.clusters, out.Open("clusters.tsv"));
  if (!taxonomy.cycles.empty()) {
    WriteCycleTsv(taxonomy.cycles, out.Open("cycles.tsv"));
  }
  std::cout << fmt::format(
      "{} features for {} entities; {} direct, {} total axioms\n",
      features.dimension(), entities.size(), taxonomy.direct.size(),
      taxonomy.closed.size());
}

void RunWalks(const RunConfig &config, StagedOutputs &out) {
  auto graph = ParseGraphEdges(config.graph);
  auto corpus = GenerateWalks(graph, config.walks_per_entity, config.depth,
                              config.seed, config.threads);
  WriteWalks(corpus, out.Open("walks.txt"));
  std::cout << fmt::format("{} walks, {} tokens\n", corpus.sequences.size(),
                           corpus.num_tokens());
}

void RunTrain(const RunConfig &config, StagedOutputs &out) {
  std::ifstream in(config.corpus, std::ios::binary);
  auto corpus = ReadWalks(in, config.corpus.string());
  SgnsConfig sgns = config.sgns;
  sgns.seed = config.seed;
  auto result = TrainSgns(corpus, sgns);
  WriteWord2VecText(result.space, out.Open("vectors.txt"));
  auto &loss = out.Open("loss.tsv");
  for (size_t e = 0; e < result.epoch_loss.size(); ++e) {
    loss << e + 1 << '\t' << fmt::format("{:.6f}", result.epoch_loss[e]) << '\n';
  }
  std::cout << fmt::format("{} vectors of dimension {}; loss {:.4f} -> {:.4f}\n",
                           result.space.size(), result.space.dimension(),
                           result.epoch_loss.front(), result.epoch_loss.back());
}

void RunEval(const RunConfig &config, StagedOutputs &out) {
  std::ifstream in(config.predicted, std::ios::binary);
  auto table = ReadAxiomTsv(in, config.predicted.string());
  const AxiomSet &predicted = config.direct_only ? table.direct : table.all;
  auto gold = ParseGoldAxioms(config.gold);

  auto &report = out.Open("report.txt");
  auto prf = Prf(predicted, gold);
  WriteEvalReport(prf, report);
  if (!config.class_map.empty()) {
    report << '\n';
    WriteCoverageReport(
        Coverage(predicted, gold, ParseClassMap(config.class_map)), report);
  }
  if (config.sample > 0) {
    auto sample = SampleForAnnotation(predicted, config.sample, config.seed);
    WriteAnnotationTsv(sample, out.Open("sample.tsv"));
  }
  std::cout << fmt::format("precision={:.4f} recall={:.4f} f_score={:.4f}\n",
                           prf.precision, prf.recall, prf.f_score);
}

void RunExportDot(const RunConfig &config, StagedOutputs &out) {
  std::ifstream in(config.axioms, std::ios::binary);
  auto table = ReadAxiomTsv(in, config.axioms.string());
  WriteDot(table.direct, config.roots, config.max_depth,
           out.Open("hierarchy.dot"));
}

}  // namespace

void RunConfig::Validate() const {
  static const std::set<std::string> kCommands = {
      "induce", "baseline", "walks", "train", "eval", "export-dot"};
  if (!kCommands.count(command)) {
    throw ConfigError(fmt::format("unknown command '{}'", command));
  }
  if (out_dir.empty()) throw ConfigError("--out-dir is required");
  if (threads < 1) throw ConfigError("--threads must be at least 1");
  ParseMetric(metric);
  ParseRadiusMode(radius_mode);
  ParseEmbeddingFormat(embedding_format);
  ParseLinkMode(link_mode);
  ParseRelationMode(relation_mode);
  if (baseline != "apriori" && baseline != "relational") {
    throw ConfigError(fmt::format("unknown baseline '{}'", baseline));
  }
  if (min_class_size < 1) throw ConfigError("--min-class-size must be positive");
  if (min_support < 1) throw ConfigError("--min-support must be positive");
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw ConfigError("--min-confidence must lie in [0, 1]");
  }
  if (walks_per_entity < 1 || depth < 1) {
    throw ConfigError("--walks-per-entity and --depth must be positive");
  }
  if (max_depth && *max_depth < 0) {
    throw ConfigError("--max-depth must be non-negative");
  }
  sgns.Validate();
  for (const auto &[flag, path] : Inputs()) RequireFile(path, flag);
}

std::vector<std::pair<std::string, fs::path>> RunConfig::Inputs() const {
  std::vector<std::pair<std::string, fs::path>> in;
  if (command == "induce") {
    in = {{"--types", types}, {"--embeddings", embeddings}};
  } else if (command == "baseline") {
    in = {{"--types", types}};
    if (baseline == "relational") in.emplace_back("--graph", graph);
  } else if (command == "walks") {
    in = {{"--graph", graph}};
  } else if (command == "train") {
    in = {{"--corpus", corpus}};
  } else if (command == "eval") {
    in = {{"--predicted", predicted}, {"--gold", gold}};
    if (!class_map.empty()) in.emplace_back("--class-map", class_map);
  } else if (command == "export-dot") {
    in = {{"--axioms", axioms}};
  }
  return in;
}

json RunConfig::ToJson() const {
  json j;
  j["command"] = command;
  j["types"] = types.string();
  j["embeddings"] = embeddings.string();
  j["embedding_format"] = embedding_format;
  j["link_mode"] = link_mode;
  j["graph"] = graph.string();
  j["corpus"] = corpus.string();
  j["predicted"] = predicted.string();
  j["gold"] = gold.string();
  j["class_map"] = class_map.string();
  j["axioms"] = axioms.string();
  j["metric"] = metric;
  j["radius_mode"] = radius_mode;
  j["min_class_size"] = min_class_size;
  j["break_cycles"] = break_cycles;
  j["baseline"] = baseline;
  j["relation_mode"] = relation_mode;
  j["min_support"] = min_support;
  j["min_confidence"] = min_confidence;
  j["walks_per_entity"] = walks_per_entity;
  j["depth"] = depth;
  j["sgns"] = {{"dimensions", sgns.dimensions},
               {"window", sgns.window},
               {"negatives", sgns.negatives},
               {"epochs", sgns.epochs},
               {"learning_rate", sgns.learning_rate}};
  j["sample"] = sample;
  j["direct_only"] = direct_only;
  j["roots"] = roots;
  j["max_depth"] = max_depth ? json(*max_depth) : json(nullptr);
  j["seed"] = seed;
  j["threads"] = threads;
  j["out_dir"] = out_dir.string();
  return j;
}

RunConfig RunConfig::FromJson(const json &j) {
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.types = j.at("types").get<std::string>();
    c.embeddings = j.at("embeddings").get<std::string>();
    c.embedding_format = j.at("embedding_format").get<std::string>();
    c.link_mode = j.at("link_mode").get<std::string>();
    c.graph = j.at("graph").get<std::string>();
    c.corpus = j.at("corpus").get<std::string>();
    c.predicted = j.at("predicted").get<std::string>();
    c.gold = j.at("gold").get<std::string>();
    c.class_map = j.at("class_map").get<std::string>();
    c.axioms = j.at("axioms").get<std::string>();
    c.metric = j.at("metric").get<std::string>();
    c.radius_mode = j.at("radius_mode").get<std::string>();
    c.min_class_size = j.at("min_class_size").get<size_t>();
    c.break_cycles = j.at("break_cycles").get<bool>();
    c.baseline = j.at("baseline").get<std::string>();
    c.relation_mode = j.at("relation_mode").get<std::string>();
    c.min_support = j.at("min_support").get<size_t>();
    c.min_confidence = j.at("min_confidence").get<double>();
    c.walks_per_entity = j.at("walks_per_entity").get<int>();
    c.depth = j.at("depth").get<int>();
    const auto &s = j.at("sgns");
    c.sgns.dimensions = s.at("dimensions").get<int>();
    c.sgns.window = s.at("window").get<int>();
    c.sgns.negatives = s.at("negatives").get<int>();
    c.sgns.epochs = s.at("epochs").get<int>();
    c.sgns.learning_rate = s.at("learning_rate").get<double>();
    c.sample = j.at("sample").get<size_t>();
    c.direct_only = j.at("direct_only").get<bool>();
    c.roots = j.at("roots").get<std::vector<std::string>>();
    if (!j.at("max_depth").is_null()) c.max_depth = j.at("max_depth").get<int>();
    c.seed = j.at("seed").get<uint64_t>();
    c.threads = j.at("threads").get<int>();
    c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const json::exception &e) {
    throw DataError(fmt::format("malformed run configuration: {}", e.what()));
  }
  c.sgns.seed = c.seed;
  return c;
}

std::string FileDigest(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialisation failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), in.gcount());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

void Execute(RunConfig config) {
  config.sgns.seed = config.seed;
  for (fs::path *p : {&config.types, &config.embeddings, &config.graph,
                      &config.corpus, &config.predicted, &config.gold,
                      &config.class_map, &config.axioms, &config.out_dir}) {
    if (!p->empty()) *p = fs::absolute(*p).lexically_normal();
  }
  config.Validate();

  json manifest;
  manifest["tool"] = "tiemb";
  manifest["config"] = config.ToJson();
  json inputs = json::object();
  for (const auto &[flag, path] : config.Inputs()) {
    inputs[flag] = {{"path", path.string()}, {"sha256", FileDigest(path)}};
  }
  manifest["inputs"] = inputs;

  StagedOutputs out(config.out_dir);
  if (config.command == "induce") {
    RunInduce(config, out);
  } else if (config.command == "baseline") {
    RunBaseline(config, out);
  } else if (config.command == "walks") {
    RunWalks(config, out);
  } else if (config.command == "train") {
    RunTrain(config, out);
  } else if (config.command == "eval") {
    RunEval(config, out);
  } else {
    RunExportDot(config, out);
  }
  out.Open(kManifestName) << manifest.dump(2) << '\n';
  out.Commit();
}

void Replay(const fs::path &manifest_path,
            const std::optional<fs::path> &out_dir) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw ConfigError(
        fmt::format("manifest '{}' does not exist", manifest_path.string()));
  }
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception &e) {
    throw DataError(fmt::format("{}: {}", manifest_path.string(), e.what()));
  }
  RunConfig config = RunConfig::FromJson(manifest.at("config"));
  if (manifest.contains("inputs")) {
    for (const auto &[flag, entry] : manifest["inputs"].items()) {
      fs::path path = entry.at("path").get<std::string>();
      if (!fs::is_regular_file(path)) {
        throw ConfigError(fmt::format("input file '{}' ({}) does not exist",
                                      path.string(), flag));
      }
      if (FileDigest(path) != entry.at("sha256").get<std::string>()) {
        throw DataError(fmt::format("input '{}' changed since the recorded run",
                                    path.string()));
      }
    }
  }
  if (out_dir) config.out_dir = *out_dir;
  Execute(std::move(config));
}

int Main(int argc, const char *const *argv) {
  CLI::App app{"Class hierarchy induction from knowledge-base embeddings"};
  app.require_subcommand(1);
  RunConfig cfg;
  fs::path manifest;
  std::optional<fs::path> replay_out;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--out-dir", cfg.out_dir, "Output directory")->required();
    sub->add_option("--seed", cfg.seed, "Seed for all randomness")
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads")
        ->capture_default_str();
  };
  auto induce_flags = [&](CLI::App *sub) {
    sub->add_option("--metric", cfg.metric, "euclidean | cosine")
        ->capture_default_str();
    sub->add_option("--radius", cfg.radius_mode, "rms | mean")
        ->capture_default_str();
    sub->add_option("--min-class-size", cfg.min_class_size,
                    "Minimum linked instances per class")
        ->capture_default_str();
    sub->add_flag("--break-cycles", cfg.break_cycles,
                  "Drop the longest edge of every cycle before closure");
  };

  auto *induce = app.add_subcommand("induce", "Induce a taxonomy");
  induce->add_option("--types", cfg.types, "instance<TAB>class TSV")->required();
  induce->add_option("--embeddings", cfg.embeddings, "Vector file")->required();
  induce->add_option("--format", cfg.embedding_format,
                     "word2vec-text | glove-text")
      ->capture_default_str();
  induce->add_option("--link", cfg.link_mode, "exact | phrase-average")
      ->capture_default_str();
  induce_flags(induce);
  common(induce);

  auto *baseline = app.add_subcommand("baseline", "Run a baseline");
  baseline->add_option("--method", cfg.baseline, "apriori | relational")
      ->capture_default_str();
  baseline->add_option("--types", cfg.types, "instance<TAB>class TSV")
      ->required();
  baseline->add_option("--graph", cfg.graph, "subject<TAB>predicate<TAB>object");
  baseline->add_option("--relation-mode", cfg.relation_mode, "in | out | in_out")
      ->capture_default_str();
  baseline->add_option("--min-support", cfg.min_support)->capture_default_str();
  baseline->add_option("--min-confidence", cfg.min_confidence)
      ->capture_default_str();
  induce_flags(baseline);
  common(baseline);

  auto *walks = app.add_subcommand("walks", "Generate a random-walk corpus");
  walks->add_option("--graph", cfg.graph, "subject<TAB>predicate<TAB>object")
      ->required();
  walks->add_option("--walks-per-entity", cfg.walks_per_entity)
      ->capture_default_str();
  walks->add_option("--depth", cfg.depth, "Maximum hops per walk")
      ->capture_default_str();
  common(walks);

  auto *train = app.add_subcommand("train", "Train skip-gram vectors");
  train->add_option("--corpus", cfg.corpus, "Walk corpus")->required();
  train->add_option("--dimensions", cfg.sgns.dimensions)->capture_default_str();
  train->add_option("--window", cfg.sgns.window)->capture_default_str();
  train->add_option("--negatives", cfg.sgns.negatives)->capture_default_str();
  train->add_option("--epochs", cfg.sgns.epochs)->capture_default_str();
  train->add_option("--learning-rate", cfg.sgns.learning_rate)
      ->capture_default_str();
  common(train);

  auto *eval = app.add_subcommand("eval", "Score axioms against a gold set");
  eval->add_option("--predicted", cfg.predicted, "Axiom TSV")->required();
  eval->add_option("--gold", cfg.gold, "subclass<TAB>superclass TSV")
      ->required();
  eval->add_option("--class-map", cfg.class_map,
                   "gold_class<TAB>predicted_class TSV");
  eval->add_option("--sample", cfg.sample, "Axioms to sample for annotation");
  eval->add_flag("--direct-only", cfg.direct_only,
                 "Score only direct rows of the axiom TSV");
  common(eval);

  auto *dot = app.add_subcommand("export-dot", "Render direct axioms as DOT");
  dot->add_option("--axioms", cfg.axioms, "Axiom TSV")->required();
  dot->add_option("--root", cfg.roots, "Restrict to subtrees (repeatable)");
  dot->add_option("--max-depth", cfg.max_depth, "Edge levels below each root");
  common(dot);

  auto *rerun = app.add_subcommand("rerun", "Replay a run manifest");
  rerun->add_option("--manifest", manifest, "run-manifest.json")->required();
  rerun->add_option("--out-dir", replay_out, "Override output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (rerun->parsed()) {
      Replay(manifest, replay_out);
    } else {
      cfg.command = app.get_subcommands().front()->get_name();
      Execute(cfg);
    }
  } catch (const ConfigError &e) {
    std::cerr << "tiemb: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError &e) {
    std::cerr << "tiemb: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "tiemb: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace tiemb::cli
