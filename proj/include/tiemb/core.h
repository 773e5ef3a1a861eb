#ifndef TIEMB_CORE_H_
#define TIEMB_CORE_H_

// Taxonomy induction from class clusters in an embedding space.
//
// Every class is summarised by the centroid of its instance vectors and a
// radius. Class c1 becomes a candidate subclass of c2 when the centroid of c1
// lies within c2's radius and c1's radius is strictly smaller; of all
// candidates, the nearest one is kept as the direct parent. The direct
// axioms are then closed transitively.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tiemb/kb_model.h"

namespace tiemb {

enum class Metric { kEuclidean, kCosine };
enum class RadiusMode { kRms, kMean };

Metric ParseMetric(std::string_view name);
RadiusMode ParseRadiusMode(std::string_view name);
std::string_view MetricName(Metric metric);
std::string_view RadiusModeName(RadiusMode mode);

// Euclidean distance, or 1 - cosine similarity (1 if either vector is zero).
double Distance(std::span<const double> a, std::span<const double> b,
                Metric metric);

// Centroid is the componentwise mean of the members. With kRms the radius is
// sqrt(mean of squared member-to-centroid distances); with kMean it is the
// mean distance. Distances use `metric`. Throws DataError for an empty
// member set or mixed dimensions.
ClassCluster ComputeCluster(std::string class_id,
                            std::span<const Vector *const> members,
                            Metric metric = Metric::kEuclidean,
                            RadiusMode mode = RadiusMode::kRms);
ClassCluster ComputeCluster(std::string class_id, std::span<const Vector> members,
                            Metric metric = Metric::kEuclidean,
                            RadiusMode mode = RadiusMode::kRms);

struct Candidate {
  std::string super;
  double distance = 0.0;
};

// Candidate parents of one class, ascending by distance with ties broken by
// super class id.
struct CandidateList {
  std::string sub;
  std::vector<Candidate> candidates;
};

// One list per input cluster, in input order. Throws DataError with fewer
// than two clusters or mismatched dimensions.
std::vector<CandidateList> ExtractCandidates(
    std::span<const ClassCluster> clusters, Metric metric, int threads = 1);

// The first candidate of every non-empty list.
AxiomSet SelectAxioms(std::span<const CandidateList> candidates);

struct ClosureResult {
  AxiomSet axioms;
  // Pairs (a, b), a < b, with both a <= b and b <= a in the closure.
  std::vector<AxiomKey> cycles;
};

// Smallest superset closed under composition, never adding reflexive axioms.
// Input axioms keep their distance; derived axioms have none.
ClosureResult TransitiveClosure(const AxiomSet &axioms);

// Removes edges until the axiom graph is acyclic. From each cycle found, the
// edge with the largest distance goes first; an edge without a distance
// counts as larger than any distance, and remaining ties drop the larger
// (sub, super) key.
AxiomSet BreakCycles(const AxiomSet &axioms);

struct InduceOptions {
  Metric metric = Metric::kEuclidean;
  RadiusMode radius_mode = RadiusMode::kRms;
  // Classes with fewer linked instances are ignored.
  size_t min_class_size = 2;
  bool break_cycles = false;
  int threads = 1;
};

// Clusters every eligible class of `kb` using the vectors in `space`
// (instances without a vector are skipped), then extracts, selects and
// closes axioms. Throws DataError("insufficient classes") when fewer than two
// classes remain.
Taxonomy InduceTaxonomy(const KnowledgeBase &kb, const EmbeddingSpace &space,
                        const InduceOptions &options = {});

// Axiom TSV: `sub<TAB>super<TAB>distance<TAB>origin`, one row per axiom of
// `closed` in key order. origin is "direct" for members of `direct`, else
// "closure". The distance has 6 decimals, and is empty when absent.
void WriteAxiomTsv(const AxiomSet &direct, const AxiomSet &closed,
                   std::ostream &out);

struct AxiomTable {
  AxiomSet direct;
  AxiomSet all;
};

AxiomTable ReadAxiomTsv(std::istream &in, std::string_view source = "<stream>");

// `class<TAB>size<TAB>radius`, class order.
void WriteClusterTsv(std::span<const ClassCluster> clusters, std::ostream &out);

// `a<TAB>b` per mutual pair.
void WriteCycleTsv(std::span<const AxiomKey> cycles, std::ostream &out);

}  // namespace tiemb

#endif  // TIEMB_CORE_H_
