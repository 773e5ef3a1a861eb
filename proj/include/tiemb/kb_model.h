#ifndef TIEMB_KB_MODEL_H_
#define TIEMB_KB_MODEL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <ranges>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tiemb {

using Vector = std::vector<double>;

// Instance -> class assignments together with the inverse class -> instance
// index. Identifiers are compared as exact, case-sensitive byte strings.
class KnowledgeBase {
 public:
  using Index = std::map<std::string, std::set<std::string>, std::less<>>;

  KnowledgeBase() = default;

  // Builds from (instance, class) pairs. Duplicate pairs collapse.
  explicit KnowledgeBase(
      const std::vector<std::pair<std::string, std::string>> &assignments);

  // Builds from an instance -> classes map. Throws DataError if any
  // instance has an empty class set.
  static KnowledgeBase FromTypes(Index instance_types);

  const Index &instance_types() const { return instance_types_; }
  const Index &class_index() const { return class_index_; }

  // Returns nullptr for unknown ids.
  const std::set<std::string> *TypesOf(std::string_view instance) const;
  const std::set<std::string> *InstancesOf(std::string_view class_id) const;

  size_t num_instances() const { return instance_types_.size(); }
  size_t num_classes() const { return class_index_.size(); }
  bool empty() const { return instance_types_.empty(); }

  bool operator==(const KnowledgeBase &other) const {
    return instance_types_ == other.instance_types_;
  }

 private:
  void BuildClassIndex();

  Index instance_types_;
  Index class_index_;
};

// Identifier -> dense vector of a fixed dimension. Every stored vector has
// exactly dimension() finite components.
class EmbeddingSpace {
 public:
  using Map = std::map<std::string, Vector, std::less<>>;

  // Throws std::invalid_argument if dimension is zero.
  explicit EmbeddingSpace(size_t dimension);

  size_t dimension() const { return dimension_; }
  size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }

  // Inserts or overwrites. Throws DataError on a length mismatch or a
  // non-finite component.
  void Set(std::string id, Vector v);

  const Vector *Find(std::string_view id) const;
  bool Contains(std::string_view id) const { return Find(id) != nullptr; }

  const Map &vectors() const { return vectors_; }

 private:
  size_t dimension_;
  Map vectors_;
};

struct ClassCluster {
  std::string class_id;
  Vector centroid;
  double radius = 0.0;
  size_t size = 0;
};

using AxiomKey = std::pair<std::string, std::string>;

// sub is subsumed by super. distance is the centroid distance recorded when
// the axiom was extracted directly; closure-derived axioms carry none.
struct Axiom {
  std::string sub;
  std::string super;
  std::optional<double> distance;

  AxiomKey key() const { return {sub, super}; }
};

// Set of axioms keyed by the (sub, super) pair. Iteration is ordered by key.
class AxiomSet {
 public:
  AxiomSet() = default;
  AxiomSet(std::initializer_list<Axiom> axioms);

  // Throws DataError for reflexive axioms. Returns false (and keeps the
  // existing entry) if the pair is already present.
  bool Insert(Axiom axiom);
  bool Erase(const AxiomKey &key) { return axioms_.erase(key) > 0; }

  bool Contains(std::string_view sub, std::string_view super) const;
  bool Contains(const AxiomKey &key) const { return axioms_.count(key) > 0; }
  const Axiom *Find(const AxiomKey &key) const;

  size_t size() const { return axioms_.size(); }
  bool empty() const { return axioms_.empty(); }

  auto all() const { return std::views::values(axioms_); }
  std::set<AxiomKey> Keys() const;
  std::set<std::string> Classes() const;

  // Compares keys only.
  bool SameKeys(const AxiomSet &other) const { return Keys() == other.Keys(); }

 private:
  std::map<AxiomKey, Axiom> axioms_;
};

// Output of taxonomy induction: the direct best-parent axioms, their closure,
// per-class cluster statistics, and any mutual pairs left in the closure.
struct Taxonomy {
  AxiomSet direct;
  AxiomSet closed;
  std::vector<ClassCluster> clusters;
  std::vector<AxiomKey> cycles;

  std::set<std::string> classes() const { return closed.Classes(); }
};

struct Edge {
  std::string subject;
  std::string predicate;
  std::string object;

  auto operator<=>(const Edge &) const = default;
};

// Directed multigraph of labelled edges with per-node adjacency. Outgoing
// and incoming edge lists are kept sorted, so iteration order depends only
// on the edge set.
class LabeledGraph {
 public:
  void AddNode(const std::string &node);
  // Returns false if the edge already exists.
  bool AddEdge(Edge edge);

  const std::set<Edge> &edges() const { return edges_; }
  const std::set<std::string, std::less<>> &nodes() const { return nodes_; }
  bool HasNode(std::string_view node) const { return nodes_.count(node) > 0; }

  const std::vector<Edge> &Outgoing(std::string_view node) const;
  const std::vector<Edge> &Incoming(std::string_view node) const;

  size_t num_edges() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

 private:
  std::set<Edge> edges_;
  std::set<std::string, std::less<>> nodes_;
  std::map<std::string, std::vector<Edge>, std::less<>> out_;
  std::map<std::string, std::vector<Edge>, std::less<>> in_;
};

}  // namespace tiemb

#endif  // TIEMB_KB_MODEL_H_
