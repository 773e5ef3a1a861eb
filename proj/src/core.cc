#include "tiemb/core.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "tiemb/error.h"
#include "tiemb/ingest.h"
#include "tiemb/parallel.h"

namespace tiemb {

Metric ParseMetric(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "cosine") return Metric::kCosine;
  throw ConfigError(fmt::format("unknown metric '{}'", name));
}

RadiusMode ParseRadiusMode(std::string_view name) {
  if (name == "rms") return RadiusMode::kRms;
  if (name == "mean") return RadiusMode::kMean;
  throw ConfigError(fmt::format("unknown radius mode '{}'", name));
}

std::string_view MetricName(Metric metric) {
  return metric == Metric::kEuclidean ? "euclidean" : "cosine";
}

std::string_view RadiusModeName(RadiusMode mode) {
  return mode == RadiusMode::kRms ? "rms" : "mean";
}

double Distance(std::span<const double> a, std::span<const double> b,
                Metric metric) {
  if (metric == Metric::kEuclidean) {
    double sum = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
      double d = a[k] - b[k];
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 1.0;
  double sim = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(1.0 - sim, 0.0, 2.0);
}

ClassCluster ComputeCluster(std::string class_id,
                            std::span<const Vector *const> members,
                            Metric metric, RadiusMode mode) {
  if (members.empty()) {
    throw DataError(fmt::format("class '{}' has no members", class_id));
  }
  const size_t d = members.front()->size();
  ClassCluster cluster;
  cluster.class_id = std::move(class_id);
  cluster.size = members.size();
  cluster.centroid.assign(d, 0.0);
  for (const Vector *v : members) {
    if (v->size() != d) {
      throw DataError(fmt::format("class '{}' mixes vector dimensions",
                                  cluster.class_id));
    }
    for (size_t k = 0; k < d; ++k) cluster.centroid[k] += (*v)[k];
  }
  const double n = static_cast<double>(members.size());
  for (double &x : cluster.centroid) x /= n;

  double acc = 0.0;
  for (const Vector *v : members) {
    double dist = Distance(*v, cluster.centroid, metric);
    acc += mode == RadiusMode::kRms ? dist * dist : dist;
  }
  cluster.radius = mode == RadiusMode::kRms ? std::sqrt(acc / n) : acc / n;
  return cluster;
}

ClassCluster ComputeCluster(std::string class_id,
                            std::span<const Vector> members, Metric metric,
                            RadiusMode mode) {
  std::vector<const Vector *> ptrs;
  ptrs.reserve(members.size());
  for (const auto &v : members) ptrs.push_back(&v);
  return ComputeCluster(std::move(class_id), ptrs, metric, mode);
}

std::vector<CandidateList> ExtractCandidates(
    std::span<const ClassCluster> clusters, Metric metric, int threads) {
  if (clusters.size() < 2) {
    throw DataError("candidate extraction needs at least two classes");
  }
  const size_t d = clusters.front().centroid.size();
  for (const auto &c : clusters) {
    if (c.centroid.size() != d) {
      throw DataError(fmt::format("class '{}' has dimension {}, expected {}",
                                  c.class_id, c.centroid.size(), d));
    }
  }

  std::vector<CandidateList> lists(clusters.size());
  ParallelFor(clusters.size(), threads, [&](size_t i) {
    const ClassCluster &sub = clusters[i];
    CandidateList &list = lists[i];
    list.sub = sub.class_id;
    for (size_t j = 0; j < clusters.size(); ++j) {
      if (i == j) continue;
      const ClassCluster &super = clusters[j];
      if (!(sub.radius < super.radius)) continue;
      double dist = Distance(sub.centroid, super.centroid, metric);
      if (dist <= super.radius) list.candidates.push_back({super.class_id, dist});
    }
    std::sort(list.candidates.begin(), list.candidates.end(),
              [](const Candidate &a, const Candidate &b) {
                if (a.distance != b.distance) return a.distance < b.distance;
                return a.super < b.super;
              });
  });
  return lists;
}

AxiomSet SelectAxioms(std::span<const CandidateList> candidates) {
  AxiomSet axioms;
  for (const auto &list : candidates) {
    if (list.candidates.empty()) continue;
    const Candidate &best = list.candidates.front();
    axioms.Insert({list.sub, best.super, best.distance});
  }
  return axioms;
}

ClosureResult TransitiveClosure(const AxiomSet &axioms) {
  ClosureResult result{axioms, {}};
  std::map<std::string, std::set<std::string>> supers, subs;
  std::deque<AxiomKey> pending;
  for (const Axiom &a : axioms.all()) {
    supers[a.sub].insert(a.super);
    subs[a.super].insert(a.sub);
    pending.push_back(a.key());
  }

  auto add = [&](const std::string &sub, const std::string &super) {
    if (sub == super) return;
    if (!result.axioms.Insert({sub, super, std::nullopt})) return;
    supers[sub].insert(super);
    subs[super].insert(sub);
    pending.emplace_back(sub, super);
  };

  // Semi-naive fixpoint: each newly added edge is composed with the edges
  // already present on both of its ends.
  while (!pending.empty()) {
    auto [a, b] = std::move(pending.front());
    pending.pop_front();
    std::vector<std::string> above(supers[b].begin(), supers[b].end());
    for (const auto &c : above) add(a, c);
    std::vector<std::string> below(subs[a].begin(), subs[a].end());
    for (const auto &z : below) add(z, b);
  }

  for (const Axiom &a : result.axioms.all()) {
    if (a.sub < a.super && result.axioms.Contains(a.super, a.sub)) {
      result.cycles.push_back(a.key());
    }
  }
  return result;
}

namespace {

// Returns the edges of some cycle in the graph, or an empty vector.
std::vector<AxiomKey> FindCycle(const AxiomSet &axioms) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const Axiom &a : axioms.all()) succ[a.sub].push_back(a.super);

  enum class Mark { kNew, kActive, kDone };
  std::map<std::string, Mark> mark;
  std::vector<std::string> path;

  // Iterative DFS keeping the active path so a back edge yields the cycle.
  for (const auto &[root, unused] : succ) {
    if (mark[root] != Mark::kNew) continue;
    std::vector<std::pair<std::string, size_t>> stack{{root, 0}};
    mark[root] = Mark::kActive;
    path.assign(1, root);
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      auto it = succ.find(node);
      if (it == succ.end() || next >= it->second.size()) {
        mark[node] = Mark::kDone;
        stack.pop_back();
        path.pop_back();
        continue;
      }
      std::string child = it->second[next++];
      Mark m = mark[child];
      if (m == Mark::kActive) {
        std::vector<AxiomKey> cycle;
        auto start = std::find(path.begin(), path.end(), child);
        for (auto p = start; p + 1 != path.end(); ++p) {
          cycle.emplace_back(*p, *(p + 1));
        }
        cycle.emplace_back(path.back(), child);
        return cycle;
      }
      if (m == Mark::kNew) {
        mark[child] = Mark::kActive;
        path.push_back(child);
        stack.emplace_back(child, 0);
      }
    }
  }
  return {};
}

}  // namespace

AxiomSet BreakCycles(const AxiomSet &axioms) {
  AxiomSet out = axioms;
  while (true) {
    auto cycle = FindCycle(out);
    if (cycle.empty()) return out;
    const AxiomKey *worst = nullptr;
    double worst_dist = -1.0;
    for (const auto &key : cycle) {
      const Axiom *a = out.Find(key);
      double dist = a->distance.value_or(std::numeric_limits<double>::infinity());
      if (worst == nullptr || dist > worst_dist ||
          (dist == worst_dist && key > *worst)) {
        worst = &key;
        worst_dist = dist;
      }
    }
    out.Erase(*worst);
  }
}

Taxonomy InduceTaxonomy(const KnowledgeBase &kb, const EmbeddingSpace &space,
                        const InduceOptions &options) {
  struct Eligible {
    const std::string *class_id;
    std::vector<const Vector *> members;
  };
  std::vector<Eligible> eligible;
  const size_t min_size = std::max<size_t>(options.min_class_size, 1);
  for (const auto &[class_id, instances] : kb.class_index()) {
    std::vector<const Vector *> members;
    for (const auto &i : instances) {
      if (const Vector *v = space.Find(i)) members.push_back(v);
    }
    if (members.size() >= min_size) {
      eligible.push_back({&class_id, std::move(members)});
    }
  }
  if (eligible.size() < 2) throw DataError("insufficient classes");

  Taxonomy taxonomy;
  taxonomy.clusters.resize(eligible.size());
  ParallelFor(eligible.size(), options.threads, [&](size_t i) {
    taxonomy.clusters[i] =
        ComputeCluster(*eligible[i].class_id, eligible[i].members,
                       options.metric, options.radius_mode);
  });

  auto candidates =
      ExtractCandidates(taxonomy.clusters, options.metric, options.threads);
  taxonomy.direct = SelectAxioms(candidates);
  if (options.break_cycles) taxonomy.direct = BreakCycles(taxonomy.direct);
  auto closure = TransitiveClosure(taxonomy.direct);
  taxonomy.closed = std::move(closure.axioms);
  taxonomy.cycles = std::move(closure.cycles);
  return taxonomy;
}

void WriteAxiomTsv(const AxiomSet &direct, const AxiomSet &closed,
                   std::ostream &out) {
  for (const Axiom &a : closed.all()) {
    const Axiom *d = direct.Find(a.key());
    std::string dist;
    if (a.distance) dist = fmt::format("{:.6f}", *a.distance);
    out << a.sub << '\t' << a.super << '\t' << dist << '\t'
        << (d != nullptr ? "direct" : "closure") << '\n';
  }
}

AxiomTable ReadAxiomTsv(std::istream &in, std::string_view source) {
  AxiomTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 4 || fields[0].empty() || fields[1].empty() ||
        fields[0] == fields[1]) {
      throw DataError(fmt::format("{}:{}: malformed axiom row", source,
                                  line_no));
    }
    Axiom axiom{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (!fields[2].empty()) {
      try {
        axiom.distance = std::stod(std::string(fields[2]));
      } catch (const std::exception &) {
        throw DataError(fmt::format("{}:{}: invalid distance '{}'", source,
                                    line_no, fields[2]));
      }
    }
    if (fields[3] == "direct") {
      table.direct.Insert(axiom);
    } else if (fields[3] != "closure") {
      throw DataError(fmt::format("{}:{}: unknown origin '{}'", source, line_no,
                                  fields[3]));
    }
    table.all.Insert(std::move(axiom));
  }
  return table;
}

void WriteClusterTsv(std::span<const ClassCluster> clusters, std::ostream &out) {
  for (const auto &c : clusters) {
    out << c.class_id << '\t' << c.size << '\t' << fmt::format("{:.6f}", c.radius)
        << '\n';
  }
}

void WriteCycleTsv(std::span<const AxiomKey> cycles, std::ostream &out) {
  for (const auto &[a, b] : cycles) out << a << '\t' << b << '\n';
}

}  // namespace tiemb
