#include "tiemb/dot.h"

#include <deque>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "tiemb/error.h"

namespace tiemb {
namespace {

std::string Quote(const std::string &id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void WriteDot(const AxiomSet &axioms, std::span<const std::string> roots,
              std::optional<int> max_depth, std::ostream &out) {
  std::map<std::string, std::vector<std::string>> children;
  std::set<std::string> has_parent;
  for (const Axiom &a : axioms.all()) {
    children[a.super].push_back(a.sub);
    has_parent.insert(a.sub);
  }
  const auto classes = axioms.Classes();

  std::vector<std::string> starts;
  for (const auto &r : roots) {
    if (!classes.count(r)) {
      throw DataError(fmt::format("unknown root class '{}'", r));
    }
    starts.push_back(r);
  }
  const bool restricted = !roots.empty() || max_depth.has_value();
  if (starts.empty() && restricted) {
    for (const auto &c : classes) {
      if (!has_parent.count(c)) starts.push_back(c);
    }
  }

  std::set<AxiomKey> edges;
  if (!restricted) {
    edges = axioms.Keys();
  } else {
    // Breadth-first from every start; a class reached at several depths is
    // expanded from its shallowest occurrence.
    std::map<std::string, int> depth;
    std::deque<std::string> queue;
    for (const auto &s : starts) {
      if (depth.emplace(s, 0).second) queue.push_back(s);
    }
    while (!queue.empty()) {
      std::string node = queue.front();
      queue.pop_front();
      int d = depth[node];
      if (max_depth && d >= *max_depth) continue;
      auto it = children.find(node);
      if (it == children.end()) continue;
      for (const auto &child : it->second) {
        edges.emplace(child, node);
        if (depth.emplace(child, d + 1).second) queue.push_back(child);
      }
    }
  }

  out << "digraph taxonomy {\n";
  out << "  rankdir=TB;\n";
  for (const auto &[sub, super] : edges) {
    out << "  " << Quote(super) << " -> " << Quote(sub) << ";\n";
  }
  out << "}\n";
}

}  // namespace tiemb
