#ifndef TIEMB_EVAL_H_
#define TIEMB_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tiemb/kb_model.h"

namespace tiemb {

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  size_t gold_size = 0;
  size_t predicted_size = 0;
  size_t intersection_size = 0;
};

// Exact (sub, super) pair overlap. Precision is 0 for an empty prediction.
// Throws DataError for an empty gold set.
EvalReport Prf(const AxiomSet &predicted, const AxiomSet &gold);

struct CoverageReport {
  double gold_coverage = 0.0;
  // 100 * |predicted \ mapped gold| / |mapped gold|.
  double extra_coverage_percent = 0.0;
  // Gold classes (appearing in gold axioms) with a mapping.
  size_t mapped_classes = 0;
  size_t mapped_gold_axioms = 0;
  size_t dropped_gold_axioms = 0;
  size_t covered_axioms = 0;
  size_t extra_axioms = 0;
};

// Translates gold axioms through class_map, dropping axioms with an unmapped
// endpoint, and measures the prediction against the result. Throws
// DataError if class_map is not injective or nothing survives translation.
CoverageReport Coverage(const AxiomSet &predicted, const AxiomSet &gold,
                        const std::map<std::string, std::string> &class_map);

// Uniform sample of n axioms without replacement. The result depends only on
// the axiom keys, n and seed. Throws DataError if n is 0 or exceeds the set
// size.
std::vector<Axiom> SampleForAnnotation(const AxiomSet &predicted, size_t n,
                                       uint64_t seed);

// `sub<TAB>super<TAB>judgment` with the judgment column left empty, after a
// commented header line.
void WriteAnnotationTsv(std::span<const Axiom> sample, std::ostream &out);

// Aligned table followed by key=value lines.
void WriteEvalReport(const EvalReport &report, std::ostream &out);
void WriteCoverageReport(const CoverageReport &report, std::ostream &out);

}  // namespace tiemb

#endif  // TIEMB_EVAL_H_
