#include "tiemb/baselines.h"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "tiemb/error.h"

namespace tiemb {

RelationMode ParseRelationMode(std::string_view name) {
  if (name == "in") return RelationMode::kIn;
  if (name == "out") return RelationMode::kOut;
  if (name == "in_out" || name == "in-out") return RelationMode::kInOut;
  throw ConfigError(fmt::format("unknown relation mode '{}'", name));
}

EmbeddingSpace RelationalFeatures(const LabeledGraph &graph,
                                  const std::set<std::string> &entities,
                                  RelationMode mode) {
  const bool use_out = mode != RelationMode::kIn;
  const bool use_in = mode != RelationMode::kOut;

  std::set<std::string> out_preds, in_preds;
  for (const Edge &e : graph.edges()) {
    if (use_out) out_preds.insert(e.predicate);
    if (use_in) in_preds.insert(e.predicate);
  }
  const size_t dim = out_preds.size() + in_preds.size();
  if (dim == 0) throw DataError("graph has no predicates");

  std::map<std::string_view, size_t> out_index, in_index;
  size_t next = 0;
  for (const auto &p : out_preds) out_index[p] = next++;
  for (const auto &p : in_preds) in_index[p] = next++;

  EmbeddingSpace space(dim);
  for (const auto &entity : entities) {
    if (!graph.HasNode(entity)) {
      throw DataError(fmt::format("entity '{}' is not in the graph", entity));
    }
    Vector v(dim, 0.0);
    if (use_out) {
      for (const Edge &e : graph.Outgoing(entity)) v[out_index[e.predicate]] = 1.0;
    }
    if (use_in) {
      for (const Edge &e : graph.Incoming(entity)) v[in_index[e.predicate]] = 1.0;
    }
    space.Set(entity, std::move(v));
  }
  return space;
}

TransactionSet TransactionSet::FromKnowledgeBase(const KnowledgeBase &kb) {
  TransactionSet set;
  set.transactions.reserve(kb.num_instances());
  for (const auto &[instance, classes] : kb.instance_types()) {
    set.transactions.emplace_back(classes.begin(), classes.end());
  }
  return set;
}

AxiomSet AprioriAxioms(const KnowledgeBase &kb, size_t min_support,
                       double min_confidence) {
  if (kb.empty()) throw DataError("empty knowledge base");
  if (min_support < 1) throw ConfigError("min_support must be positive");
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw ConfigError("min_confidence must lie in [0, 1]");
  }
  const auto transactions = TransactionSet::FromKnowledgeBase(kb);

  // Level 1: item counts. A pair can only reach min_support if both items do.
  std::map<std::string, size_t> item_count;
  for (const auto &t : transactions.transactions) {
    for (const auto &c : t) ++item_count[c];
  }
  std::set<std::string> frequent;
  for (const auto &[c, n] : item_count) {
    if (n >= min_support) frequent.insert(c);
  }

  // Level 2: counts of unordered frequent pairs (first < second).
  std::map<std::pair<std::string, std::string>, size_t> pair_count;
  std::vector<const std::string *> items;
  for (const auto &t : transactions.transactions) {
    items.clear();
    for (const auto &c : t) {
      if (frequent.count(c)) items.push_back(&c);
    }
    for (size_t i = 0; i < items.size(); ++i) {
      for (size_t j = i + 1; j < items.size(); ++j) {
        ++pair_count[{*items[i], *items[j]}];
      }
    }
  }

  AxiomSet axioms;
  for (const auto &[pair, both] : pair_count) {
    if (both < min_support) continue;
    const auto &[a, b] = pair;
    double conf_ab = static_cast<double>(both) / static_cast<double>(item_count[a]);
    double conf_ba = static_cast<double>(both) / static_cast<double>(item_count[b]);
    if (conf_ab >= min_confidence) axioms.Insert({a, b, std::nullopt});
    if (conf_ba >= min_confidence) axioms.Insert({b, a, std::nullopt});
  }
  return axioms;
}

}  // namespace tiemb
