#include "tiemb/eval.h"

#include <ostream>
#include <set>

#include <fmt/format.h>

#include "tiemb/error.h"
#include "tiemb/random.h"

namespace tiemb {

EvalReport Prf(const AxiomSet &predicted, const AxiomSet &gold) {
  if (gold.empty()) throw DataError("empty gold axiom set");
  EvalReport r;
  r.gold_size = gold.size();
  r.predicted_size = predicted.size();
  for (const Axiom &a : predicted.all()) {
    if (gold.Contains(a.key())) ++r.intersection_size;
  }
  const double hit = static_cast<double>(r.intersection_size);
  r.precision = r.predicted_size == 0 ? 0.0 : hit / r.predicted_size;
  r.recall = hit / r.gold_size;
  const double sum = r.precision + r.recall;
  r.f_score = sum > 0.0 ? 2.0 * r.precision * r.recall / sum : 0.0;
  return r;
}

CoverageReport Coverage(const AxiomSet &predicted, const AxiomSet &gold,
                        const std::map<std::string, std::string> &class_map) {
  std::set<std::string> targets;
  for (const auto &[from, to] : class_map) {
    if (!targets.insert(to).second) {
      throw DataError(fmt::format("class map is not injective: '{}' is the "
                                  "target of more than one class",
                                  to));
    }
  }

  CoverageReport r;
  for (const auto &c : gold.Classes()) r.mapped_classes += class_map.count(c);

  AxiomSet mapped;
  for (const Axiom &a : gold.all()) {
    auto sub = class_map.find(a.sub);
    auto super = class_map.find(a.super);
    if (sub == class_map.end() || super == class_map.end()) {
      ++r.dropped_gold_axioms;
      continue;
    }
    mapped.Insert({sub->second, super->second, std::nullopt});
  }
  if (mapped.empty()) throw DataError("empty mapped gold set");

  r.mapped_gold_axioms = mapped.size();
  for (const Axiom &a : predicted.all()) {
    if (mapped.Contains(a.key())) {
      ++r.covered_axioms;
    } else {
      ++r.extra_axioms;
    }
  }
  const double n = static_cast<double>(r.mapped_gold_axioms);
  r.gold_coverage = static_cast<double>(r.covered_axioms) / n;
  r.extra_coverage_percent = 100.0 * static_cast<double>(r.extra_axioms) / n;
  return r;
}

std::vector<Axiom> SampleForAnnotation(const AxiomSet &predicted, size_t n,
                                       uint64_t seed) {
  if (n == 0) throw DataError("sample size must be positive");
  if (n > predicted.size()) {
    throw DataError(fmt::format("cannot sample {} of {} axioms", n,
                                predicted.size()));
  }
  std::vector<Axiom> pool;
  pool.reserve(predicted.size());
  for (const Axiom &a : predicted.all()) pool.push_back(a);
  Rng rng(seed);
  // Partial Fisher-Yates over the key-ordered pool.
  for (size_t i = 0; i < n; ++i) {
    size_t j = i + rng.Uniform(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return pool;
}

void WriteAnnotationTsv(std::span<const Axiom> sample, std::ostream &out) {
  out << "# sub\tsuper\tjudgment\n";
  for (const Axiom &a : sample) out << a.sub << '\t' << a.super << "\t\n";
}

void WriteEvalReport(const EvalReport &r, std::ostream &out) {
  out << fmt::format("{:<12}{:>12}{:>12}{:>12}\n", "", "precision", "recall",
                     "f-score");
  out << fmt::format("{:<12}{:>12.4f}{:>12.4f}{:>12.4f}\n", "result",
                     r.precision, r.recall, r.f_score);
  out << fmt::format("{:<12}{:>12}{:>12}{:>12}\n\n", "counts",
                     r.predicted_size, r.gold_size, r.intersection_size);
  out << fmt::format("precision={:.6f}\n", r.precision);
  out << fmt::format("recall={:.6f}\n", r.recall);
  out << fmt::format("f_score={:.6f}\n", r.f_score);
  out << fmt::format("predicted_size={}\n", r.predicted_size);
  out << fmt::format("gold_size={}\n", r.gold_size);
  out << fmt::format("intersection_size={}\n", r.intersection_size);
}

void WriteCoverageReport(const CoverageReport &r, std::ostream &out) {
  out << fmt::format("{:<16}{:>16}{:>16}\n", "", "gold coverage",
                     "extra cov. (%)");
  out << fmt::format("{:<16}{:>16.4f}{:>16.2f}\n\n", "result", r.gold_coverage,
                     r.extra_coverage_percent);
  out << fmt::format("gold_coverage={:.6f}\n", r.gold_coverage);
  out << fmt::format("extra_coverage_percent={:.6f}\n",
                     r.extra_coverage_percent);
  out << fmt::format("mapped_classes={}\n", r.mapped_classes);
  out << fmt::format("mapped_gold_axioms={}\n", r.mapped_gold_axioms);
  out << fmt::format("dropped_gold_axioms={}\n", r.dropped_gold_axioms);
  out << fmt::format("covered_axioms={}\n", r.covered_axioms);
  out << fmt::format("extra_axioms={}\n", r.extra_axioms);
}

}  // namespace tiemb
