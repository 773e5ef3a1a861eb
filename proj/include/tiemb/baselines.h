#ifndef TIEMB_BASELINES_H_
#define TIEMB_BASELINES_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tiemb/kb_model.h"

namespace tiemb {

enum class RelationMode { kIn, kOut, kInOut };

RelationMode ParseRelationMode(std::string_view name);

// Binary relation-presence vectors. One dimension per predicate seen in the
// selected direction, in predicate order; kInOut places the outgoing block
// before the incoming block. Throws DataError for an entity that is not a
// graph node, or if no predicate occurs in the selected direction(s).
EmbeddingSpace RelationalFeatures(const LabeledGraph &graph,
                                  const std::set<std::string> &entities,
                                  RelationMode mode);

// One transaction per instance: the set of its classes.
struct TransactionSet {
  std::vector<std::vector<std::string>> transactions;

  static TransactionSet FromKnowledgeBase(const KnowledgeBase &kb);
};

// Single-antecedent association rules A -> B read as A <= B. A rule is kept
// when the number of transactions holding both classes is at least
// min_support and that count divided by the count of A is at least
// min_confidence. Frequent items and pairs are found level-wise.
AxiomSet AprioriAxioms(const KnowledgeBase &kb, size_t min_support,
                       double min_confidence);

}  // namespace tiemb

#endif  // TIEMB_BASELINES_H_
