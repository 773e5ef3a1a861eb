#ifndef TIEMB_INGEST_H_
#define TIEMB_INGEST_H_

// Readers and writers for the plain-text input formats, instance linking and
// domain class expansion over IsA tuple stores.
//
// All text formats are UTF-8, one record per line. Lines that are empty or
// start with '#' are skipped in the TSV formats; a trailing '\r' is ignored.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "tiemb/kb_model.h"

namespace tiemb {

// `instance<TAB>class` per line.
KnowledgeBase ReadInstanceTypes(std::istream &in,
                                std::string_view source = "<stream>");
KnowledgeBase ParseInstanceTypes(const std::filesystem::path &path);
void WriteInstanceTypes(const KnowledgeBase &kb, std::ostream &out);

enum class EmbeddingFormat { kWord2VecText, kGloveText };

EmbeddingFormat ParseEmbeddingFormat(std::string_view name);

// word2vec-text starts with an `N d` header; glove-text has none and takes
// its dimension from the first record. A token repeated later in the input
// overwrites the earlier vector.
EmbeddingSpace ReadEmbeddings(std::istream &in, EmbeddingFormat format,
                              std::string_view source = "<stream>");
EmbeddingSpace ParseEmbeddings(const std::filesystem::path &path,
                               EmbeddingFormat format);

// Writes word2vec-text with shortest round-trip float formatting, rows in
// identifier order. Identifiers containing whitespace are rejected.
void WriteWord2VecText(const EmbeddingSpace &space, std::ostream &out);

// Mean of the vectors of the whitespace-separated tokens of `phrase` that are
// present in `space`. Tokens missing from the space are skipped; returns
// nullopt when none is present.
std::optional<Vector> PhraseVector(std::string_view phrase,
                                   const EmbeddingSpace &space);

enum class LinkMode { kExact, kPhraseAverage };

LinkMode ParseLinkMode(std::string_view name);

struct LinkResult {
  EmbeddingSpace space;
  size_t linked = 0;
  size_t unlinked = 0;
};

// Restricts `space` to the instances of `kb`. kExact looks each instance id
// up verbatim; kPhraseAverage uses PhraseVector on the id.
LinkResult LinkInstances(const KnowledgeBase &kb, const EmbeddingSpace &space,
                         LinkMode mode);

// Hyponym/hypernym pairs with an observation count. Adding a pair twice sums
// the frequencies.
class IsaTupleStore {
 public:
  struct Tuple {
    std::string hyponym;
    std::string hypernym;
    uint64_t frequency = 1;
  };

  void Add(std::string hyponym, std::string hypernym, uint64_t frequency = 1);

  size_t size() const { return frequency_.size(); }
  bool empty() const { return frequency_.empty(); }
  std::vector<Tuple> tuples() const;

  // 0 if the pair is absent.
  uint64_t Frequency(std::string_view hyponym, std::string_view hypernym) const;
  const std::set<std::string> &HypernymsOf(std::string_view hyponym) const;
  const std::set<std::string> &HyponymsOf(std::string_view hypernym) const;

 private:
  std::map<std::pair<std::string, std::string>, uint64_t> frequency_;
  std::map<std::string, std::set<std::string>, std::less<>> hypernyms_;
  std::map<std::string, std::set<std::string>, std::less<>> hyponyms_;
};

// `hyponym<TAB>hypernym[<TAB>frequency]`; both strings are lowercased.
IsaTupleStore ReadIsaTuples(std::istream &in,
                            std::string_view source = "<stream>");
IsaTupleStore ParseIsaTuples(const std::filesystem::path &path);

// Each round collects every hyponym of the current class set and adds all of
// their hypernyms. rounds = 0 returns the seeds.
std::set<std::string> ExpandDomainClasses(const std::set<std::string> &seeds,
                                          const IsaTupleStore &store,
                                          int rounds);

// Knowledge base of hyponym -> hypernym assignments, keeping hypernyms in
// `classes` with frequency >= min_frequency. Throws DataError if nothing is
// selected.
KnowledgeBase StoreToKb(const IsaTupleStore &store,
                        const std::set<std::string> &classes,
                        uint64_t min_frequency);

// `subclass<TAB>superclass` per line.
AxiomSet ReadGoldAxioms(std::istream &in, std::string_view source = "<stream>");
AxiomSet ParseGoldAxioms(const std::filesystem::path &path);

// `subject<TAB>predicate<TAB>object` per line.
LabeledGraph ReadGraphEdges(std::istream &in,
                            std::string_view source = "<stream>");
LabeledGraph ParseGraphEdges(const std::filesystem::path &path);

// `gold_class<TAB>predicted_class` per line.
std::map<std::string, std::string> ReadClassMap(
    std::istream &in, std::string_view source = "<stream>");
std::map<std::string, std::string> ParseClassMap(
    const std::filesystem::path &path);

// Splits on '\t' without collapsing empty fields.
std::vector<std::string_view> SplitTabs(std::string_view line);

}  // namespace tiemb

#endif  // TIEMB_INGEST_H_
