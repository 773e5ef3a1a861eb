#include "tiemb/embed.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "tiemb/error.h"
#include "tiemb/parallel.h"
#include "tiemb/random.h"

namespace tiemb {

size_t WalkCorpus::num_tokens() const {
  size_t n = 0;
  for (const auto &s : sequences) n += s.size();
  return n;
}

WalkCorpus GenerateWalks(const LabeledGraph &graph, int walks_per_entity,
                         int depth, uint64_t seed, int threads) {
  if (graph.empty()) throw DataError("cannot walk an empty graph");
  if (walks_per_entity < 1 || depth < 1) {
    throw ConfigError("walks per entity and depth must be positive");
  }
  std::vector<const std::string *> starts;
  starts.reserve(graph.nodes().size());
  for (const auto &node : graph.nodes()) starts.push_back(&node);

  std::vector<std::vector<std::vector<std::string>>> per_node(starts.size());
  ParallelFor(starts.size(), threads, [&](size_t i) {
    const std::string &start = *starts[i];
    Rng rng(DeriveSeed(seed, start));
    auto &walks = per_node[i];
    walks.reserve(walks_per_entity);
    for (int w = 0; w < walks_per_entity; ++w) {
      std::vector<std::string> walk{start};
      const std::string *at = &start;
      for (int hop = 0; hop < depth; ++hop) {
        const auto &out = graph.Outgoing(*at);
        if (out.empty()) break;
        const Edge &e = out[rng.Uniform(out.size())];
        walk.push_back(e.predicate);
        walk.push_back(e.object);
        at = &e.object;
      }
      walks.push_back(std::move(walk));
    }
  });

  WalkCorpus corpus;
  corpus.sequences.reserve(starts.size() * walks_per_entity);
  for (auto &walks : per_node) {
    for (auto &w : walks) corpus.sequences.push_back(std::move(w));
  }
  return corpus;
}

void WriteWalks(const WalkCorpus &corpus, std::ostream &out) {
  std::string line;
  for (const auto &seq : corpus.sequences) {
    line.clear();
    for (const auto &token : seq) {
      if (token.empty() ||
          std::any_of(token.begin(), token.end(),
                      [](unsigned char c) { return std::isspace(c); })) {
        throw DataError(fmt::format(
            "token '{}' cannot be written to a walk corpus", token));
      }
      if (!line.empty()) line.push_back(' ');
      line += token;
    }
    line.push_back('\n');
    out << line;
  }
}

WalkCorpus ReadWalks(std::istream &in, std::string_view source) {
  WalkCorpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> seq;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && line[i] == ' ') ++i;
      size_t j = i;
      while (j < line.size() && line[j] != ' ') ++j;
      if (j > i) seq.emplace_back(line, i, j - i);
      i = j;
    }
    if (!seq.empty()) corpus.sequences.push_back(std::move(seq));
  }
  if (in.bad()) throw DataError(fmt::format("{}: read error", source));
  if (corpus.sequences.empty()) {
    throw DataError(fmt::format("{}: no sequences parsed", source));
  }
  return corpus;
}

void SgnsConfig::Validate() const {
  if (dimensions < 1 || window < 1 || negatives < 1 || epochs < 1) {
    throw ConfigError(
        "dimensions, window, negatives and epochs must all be at least 1");
  }
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
}

namespace {

// -log(sigmoid(x)), stable for large |x|.
double NegLogSigmoid(double x) {
  return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

float Sigmoid(float x) {
  if (x > 30.0f) return 1.0f;
  if (x < -30.0f) return 0.0f;
  return 1.0f / (1.0f + std::exp(-x));
}

}  // namespace

SgnsResult TrainSgns(const WalkCorpus &corpus, const SgnsConfig &config) {
  config.Validate();

  // Vocabulary ordered by descending count, then token.
  std::unordered_map<std::string_view, uint64_t> counts;
  for (const auto &seq : corpus.sequences) {
    for (const auto &t : seq) ++counts[t];
  }
  if (counts.size() < 2) {
    throw DataError("corpus needs at least two distinct tokens");
  }
  std::vector<std::pair<std::string_view, uint64_t>> vocab(counts.begin(),
                                                           counts.end());
  std::sort(vocab.begin(), vocab.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::unordered_map<std::string_view, uint32_t> index;
  for (uint32_t i = 0; i < vocab.size(); ++i) index[vocab[i].first] = i;

  std::vector<std::vector<uint32_t>> sentences;
  sentences.reserve(corpus.sequences.size());
  uint64_t total_tokens = 0;
  for (const auto &seq : corpus.sequences) {
    std::vector<uint32_t> ids;
    ids.reserve(seq.size());
    for (const auto &t : seq) ids.push_back(index[t]);
    total_tokens += ids.size();
    sentences.push_back(std::move(ids));
  }

  // Cumulative unigram^0.75 distribution for negative sampling.
  std::vector<double> cumulative(vocab.size());
  double acc = 0.0;
  for (size_t i = 0; i < vocab.size(); ++i) {
    acc += std::pow(static_cast<double>(vocab[i].second), 0.75);
    cumulative[i] = acc;
  }

  const size_t v_size = vocab.size();
  const size_t dim = static_cast<size_t>(config.dimensions);
  Rng rng(config.seed);
  std::vector<float> input(v_size * dim), output(v_size * dim, 0.0f);
  for (float &x : input) {
    x = static_cast<float>((rng.UniformReal() - 0.5) / static_cast<double>(dim));
  }

  auto sample_negative = [&]() -> uint32_t {
    double r = rng.UniformReal() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    if (it == cumulative.end()) --it;
    return static_cast<uint32_t>(it - cumulative.begin());
  };

  const double total_work =
      static_cast<double>(total_tokens) * static_cast<double>(config.epochs);
  uint64_t processed = 0;
  std::vector<float> grad(dim);
  SgnsResult result{EmbeddingSpace(dim), {}};

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double loss = 0.0;
    uint64_t pairs = 0;
    for (const auto &sent : sentences) {
      for (size_t pos = 0; pos < sent.size(); ++pos, ++processed) {
        const float alpha = static_cast<float>(
            config.learning_rate *
            (1.0 - 0.99 * static_cast<double>(processed) / total_work));
        const int reduced = static_cast<int>(rng.Uniform(config.window));
        const int span = config.window - reduced;
        const size_t lo = pos >= static_cast<size_t>(span) ? pos - span : 0;
        const size_t hi = std::min(sent.size() - 1, pos + span);
        float *center = &input[sent[pos] * dim];

        for (size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          const uint32_t context = sent[c];
          std::fill(grad.begin(), grad.end(), 0.0f);
          for (int k = 0; k <= config.negatives; ++k) {
            uint32_t target;
            float label;
            if (k == 0) {
              target = context;
              label = 1.0f;
            } else {
              target = sample_negative();
              if (target == context) continue;
              label = 0.0f;
            }
            float *out = &output[target * dim];
            float dot = 0.0f;
            for (size_t d = 0; d < dim; ++d) dot += center[d] * out[d];
            loss += label > 0.0f ? NegLogSigmoid(dot) : NegLogSigmoid(-dot);
            const float g = (label - Sigmoid(dot)) * alpha;
            for (size_t d = 0; d < dim; ++d) {
              grad[d] += g * out[d];
              out[d] += g * center[d];
            }
          }
          for (size_t d = 0; d < dim; ++d) center[d] += grad[d];
          ++pairs;
        }
      }
    }
    result.epoch_loss.push_back(pairs > 0 ? loss / static_cast<double>(pairs)
                                          : 0.0);
  }

  for (size_t i = 0; i < v_size; ++i) {
    Vector v(dim);
    for (size_t d = 0; d < dim; ++d) v[d] = input[i * dim + d];
    result.space.Set(std::string(vocab[i].first), std::move(v));
  }
  return result;
}

}  // namespace tiemb
