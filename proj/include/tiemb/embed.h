#ifndef TIEMB_EMBED_H_
#define TIEMB_EMBED_H_

// Random-walk corpora over labelled graphs and a skip-gram trainer with
// negative sampling.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tiemb/kb_model.h"

namespace tiemb {

// Token sequences alternating node ids and edge labels, each starting at a
// node.
struct WalkCorpus {
  std::vector<std::vector<std::string>> sequences;

  size_t num_tokens() const;
};

// walks_per_entity walks from every node of the graph, in node order. Each
// hop follows an outgoing edge chosen uniformly; a walk stops after `depth`
// hops or at a node without outgoing edges. Every start node draws from its
// own stream derived from (seed, node id), so the corpus does not depend on
// `threads`.
WalkCorpus GenerateWalks(const LabeledGraph &graph, int walks_per_entity,
                         int depth, uint64_t seed, int threads = 1);

// One sequence per line, tokens separated by single spaces. Tokens
// containing whitespace are rejected.
void WriteWalks(const WalkCorpus &corpus, std::ostream &out);
WalkCorpus ReadWalks(std::istream &in, std::string_view source = "<stream>");

struct SgnsConfig {
  int dimensions = 200;
  int window = 5;
  int negatives = 25;
  int epochs = 5;
  double learning_rate = 0.025;
  uint64_t seed = 1;

  // Throws ConfigError on a non-positive count or learning rate.
  void Validate() const;
};

struct SgnsResult {
  EmbeddingSpace space;
  // Mean negative log-likelihood per (center, context) pair, per epoch.
  std::vector<double> epoch_loss;
};

// Skip-gram with negative sampling. Negatives follow the unigram
// distribution raised to 3/4; each center uses a window shrunk by a uniform
// random amount; the learning rate decays linearly to 1/100 of its initial
// value over the run. Single-threaded and deterministic for a given seed.
// Throws DataError if the corpus has fewer than two distinct tokens.
SgnsResult TrainSgns(const WalkCorpus &corpus, const SgnsConfig &config);

}  // namespace tiemb

#endif  // TIEMB_EMBED_H_
