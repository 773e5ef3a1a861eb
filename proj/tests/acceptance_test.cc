// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "testing/files.h"
#include "testing/oracles.h"
#include "tiemb/baselines.h"
#include "tiemb/cli.h"
#include "tiemb/core.h"
#include "tiemb/embed.h"
#include "tiemb/eval.h"

namespace tiemb {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const fs::path kData = TIEMB_TEST_DATA_DIR;

// Tolerances and limits.
constexpr int kPlantedSeeds = 10;
constexpr double kPlantedSeconds = 10.0;
constexpr int kClosureSets = 1000;
constexpr size_t kClosureMaxClasses = 12;
constexpr double kClosureSeconds = 5.0;
constexpr int kAprioriKbs = 200;
constexpr int kInvarianceFixtures = 20;
constexpr int kMiniKbSeeds = 3;
constexpr double kMiniKbSeconds = 300.0;
constexpr int kSgnsSeeds = 5;
constexpr double kSgnsMinGap = 0.2;

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

Outcome PlantedRecovery() {
  double induce_seconds = 0.0;
  int recovered = 0;
  size_t missing = 0, spurious = 0;
  for (int seed = 1; seed <= kPlantedSeeds; ++seed) {
    auto planted = testing::MakePlantedHierarchy(seed);
    auto start = Clock::now();
    auto taxonomy = InduceTaxonomy(planted.kb, planted.space, {});
    induce_seconds += Seconds(start);
    auto got = taxonomy.direct.Keys();
    for (const auto &e : planted.edges) missing += !got.count(e);
    for (const auto &e : got) spurious += !planted.edges.count(e);
    recovered += got == planted.edges;
  }
  return {recovered == kPlantedSeeds && induce_seconds < kPlantedSeconds,
          fmt::format("{}/{} seeds exact; {} missing, {} spurious direct "
                      "edges; induction {:.2f} s (limit {} s)",
                      recovered, kPlantedSeeds, missing, spurious,
                      induce_seconds, kPlantedSeconds)};
}

Outcome ClosureOracle() {
  Rng rng(2);
  int agree = 0;
  double seconds = 0.0;
  for (int t = 0; t < kClosureSets; ++t) {
    auto edges = testing::RandomEdges(rng, kClosureMaxClasses, 40);
    auto expected = testing::ReachabilityPairs(edges);
    auto input = testing::ToAxiomSet(edges);
    auto start = Clock::now();
    auto closed = TransitiveClosure(input);
    seconds += Seconds(start);
    agree += closed.axioms.Keys() == expected;
  }
  return {agree == kClosureSets && seconds < kClosureSeconds,
          fmt::format("{}/{} sets equal brute-force reachability; {:.3f} s "
                      "(limit {} s)",
                      agree, kClosureSets, seconds, kClosureSeconds)};
}

Outcome AprioriOracle() {
  Rng rng(3);
  int agree = 0;
  size_t rules = 0;
  for (int t = 0; t < kAprioriKbs; ++t) {
    auto kb = testing::RandomKb(rng, 10, 200);
    size_t support = 1 + rng.Uniform(30);
    double confidence = rng.UniformReal();
    auto got = AprioriAxioms(kb, support, confidence).Keys();
    rules += got.size();
    agree += got == testing::BruteForceRules(kb, support, confidence);
  }
  return {agree == kAprioriKbs,
          fmt::format("{}/{} KBs equal pairwise counting ({} rules in total)",
                      agree, kAprioriKbs, rules)};
}

Outcome Invariance() {
  Rng rng(4);
  int stable = 0;
  for (int f = 0; f < kInvarianceFixtures; ++f) {
    testing::PlantedOptions opt;
    opt.dimension = 4 + rng.Uniform(13);
    opt.instances_per_class = 30 + rng.Uniform(100);
    opt.mids = 2 + rng.Uniform(3);
    auto planted = testing::MakePlantedHierarchy(rng.Next(), opt);
    auto base = InduceTaxonomy(planted.kb, planted.space, {});

    Vector shift(opt.dimension);
    for (double &x : shift) x = 100.0 * rng.Normal();
    const double scale = std::pow(10.0, 4.0 * rng.UniformReal() - 2.0);
    EmbeddingSpace translated(opt.dimension), scaled(opt.dimension);
    for (const auto &[id, v] : planted.space.vectors()) {
      Vector t(v), s(v);
      for (size_t k = 0; k < v.size(); ++k) {
        t[k] += shift[k];
        s[k] *= scale;
      }
      translated.Set(id, std::move(t));
      scaled.Set(id, std::move(s));
    }
    bool same = true;
    for (const auto *space : {&translated, &scaled}) {
      auto moved = InduceTaxonomy(planted.kb, *space, {});
      same = same && moved.direct.Keys() == base.direct.Keys() &&
             moved.closed.Keys() == base.closed.Keys();
    }
    stable += same;
  }
  return {stable == kInvarianceFixtures,
          fmt::format("{}/{} fixtures unchanged under translation and scaling",
                      stable, kInvarianceFixtures)};
}

Outcome Determinism() {
  testing::TempDir dir;
  auto planted = testing::MakePlantedHierarchy(5);
  testing::WriteKb(planted.kb, dir / "types.tsv");
  testing::WriteSpace(planted.space, dir / "vectors.txt");
  const fs::path graph = kData / "minikb" / "graph.tsv";

  auto twice = [&](cli::RunConfig config, const std::string &output) {
    config.seed = 11;
    std::string first, second;
    for (std::string *text : {&first, &second}) {
      config.out_dir = dir / fmt::format("{}-{}", config.command,
                                         text == &first ? 1 : 2);
      cli::Execute(config);
      *text = testing::ReadFile(config.out_dir / output);
    }
    return !first.empty() && first == second;
  };

  cli::RunConfig induce;
  induce.command = "induce";
  induce.types = dir / "types.tsv";
  induce.embeddings = dir / "vectors.txt";

  cli::RunConfig walks;
  walks.command = "walks";
  walks.graph = graph;
  walks.walks_per_entity = 2;

  cli::RunConfig train;
  train.command = "train";
  train.corpus = dir / "corpus.txt";
  train.sgns.dimensions = 16;
  train.sgns.negatives = 3;
  train.sgns.epochs = 1;

  std::ostringstream sink;
  auto *old = std::cout.rdbuf(sink.rdbuf());
  bool axioms_same = twice(induce, "axioms.tsv");
  bool walks_same = twice(walks, "walks.txt");
  fs::copy_file(dir / "walks-1" / "walks.txt", dir / "corpus.txt");
  bool vectors_same = twice(train, "vectors.txt");
  std::cout.rdbuf(old);

  auto word = [](bool b) { return b ? "identical" : "DIFFERENT"; };
  return {axioms_same && walks_same && vectors_same,
          fmt::format("axiom TSV {}, walk corpus {}, vectors {}",
                      word(axioms_same), word(walks_same),
                      word(vectors_same))};
}

Outcome SingleTypeApriori() {
  auto planted = testing::MakePlantedHierarchy(6);
  size_t most_permissive = AprioriAxioms(planted.kb, 1, 0.0).size();
  size_t defaults = AprioriAxioms(planted.kb, 50, 0.5).size();
  auto taxonomy = InduceTaxonomy(planted.kb, planted.space, {});
  bool full = taxonomy.direct.Keys() == planted.edges;
  return {most_permissive == 0 && defaults == 0 && full,
          fmt::format("apriori rules: {} (support 1, confidence 0), {} "
                      "(support 50, confidence 0.5); induction gives {} "
                      "direct axioms, {} the {} planted edges",
                      most_permissive, defaults, taxonomy.direct.size(),
                      full ? "exactly" : "NOT", planted.edges.size())};
}

double FScore(const fs::path &report) {
  auto text = testing::ReadFile(report);
  auto at = text.find("f_score=");
  if (at == std::string::npos) return -1.0;
  return std::stod(text.substr(at + 8));
}

Outcome MiniKb() {
  const fs::path dir = kData / "minikb";
  testing::TempDir tmp;
  auto start = Clock::now();
  std::ostringstream sink;
  auto *old = std::cout.rdbuf(sink.rdbuf());

  auto eval = [&](const fs::path &axioms, const std::string &name) {
    cli::RunConfig c;
    c.command = "eval";
    c.predicted = axioms;
    c.gold = dir / "gold.tsv";
    c.direct_only = true;
    c.out_dir = tmp / name;
    cli::Execute(c);
    return FScore(tmp / name / "report.txt");
  };

  cli::RunConfig baseline;
  baseline.command = "baseline";
  baseline.baseline = "relational";
  baseline.relation_mode = "in_out";
  baseline.types = dir / "types.tsv";
  baseline.graph = dir / "graph.tsv";
  baseline.out_dir = tmp / "baseline";
  cli::Execute(baseline);
  const double f_baseline = eval(tmp / "baseline" / "axioms.tsv", "eval-baseline");

  std::vector<double> f_embed;
  for (int seed = 1; seed <= kMiniKbSeeds; ++seed) {
    const std::string tag = std::to_string(seed);
    cli::RunConfig walks;
    walks.command = "walks";
    walks.graph = dir / "graph.tsv";
    walks.walks_per_entity = 20;
    walks.depth = 4;
    walks.seed = seed;
    walks.out_dir = tmp / ("walks" + tag);
    cli::Execute(walks);

    cli::RunConfig train;
    train.command = "train";
    train.corpus = walks.out_dir / "walks.txt";
    train.sgns.dimensions = 64;
    train.sgns.negatives = 5;
    train.sgns.epochs = 5;
    train.seed = seed;
    train.out_dir = tmp / ("train" + tag);
    cli::Execute(train);

    cli::RunConfig induce;
    induce.command = "induce";
    induce.types = dir / "types.tsv";
    induce.embeddings = train.out_dir / "vectors.txt";
    induce.out_dir = tmp / ("induce" + tag);
    cli::Execute(induce);
    f_embed.push_back(eval(induce.out_dir / "axioms.tsv", "eval" + tag));
  }
  std::cout.rdbuf(old);
  const double seconds = Seconds(start);

  int wins = 0;
  std::string scores;
  for (double f : f_embed) {
    wins += f > f_baseline;
    scores += fmt::format("{}{:.4f}", scores.empty() ? "" : ", ", f);
  }
  return {wins == kMiniKbSeeds && seconds < kMiniKbSeconds,
          fmt::format("embedding F = [{}] vs relational in&out F = {:.4f}; "
                      "{}/{} seeds ahead; {:.1f} s (limit {} s)",
                      scores, f_baseline, wins, kMiniKbSeeds, seconds,
                      kMiniKbSeconds)};
}

Outcome SgnsSanity() {
  int ok = 0;
  std::string gaps;
  for (int seed = 1; seed <= kSgnsSeeds; ++seed) {
    WalkCorpus corpus{testing::TwoCommunitySentences(seed)};
    SgnsConfig config;
    config.seed = seed;
    double gap = testing::CommunityGap(TrainSgns(corpus, config).space);
    ok += gap >= kSgnsMinGap;
    gaps += fmt::format("{}{:.3f}", gaps.empty() ? "" : ", ", gap);
  }
  return {ok == kSgnsSeeds,
          fmt::format("intra - inter cosine = [{}] (need >= {})", gaps,
                      kSgnsMinGap)};
}

}  // namespace
}  // namespace tiemb

int main() {
  using namespace tiemb;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"planted hierarchy recovery", PlantedRecovery},
      {"closure equals reachability", ClosureOracle},
      {"apriori equals pairwise counting", AprioriOracle},
      {"translation and scale invariance", Invariance},
      {"determinism", Determinism},
      {"apriori yields nothing on single-type data", SingleTypeApriori},
      {"mini-KB: embeddings beat relational features", MiniKb},
      {"skip-gram separates two communities", SgnsSanity},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    failed += !o.pass;
    std::cout << fmt::format("[{}] {}. {}: {}\n", o.pass ? "PASS" : "FAIL",
                             i + 1, criteria[i].first, o.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n",
                           criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
