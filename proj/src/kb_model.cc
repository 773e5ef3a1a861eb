#include "tiemb/kb_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "tiemb/error.h"

namespace tiemb {

KnowledgeBase::KnowledgeBase(
    const std::vector<std::pair<std::string, std::string>> &assignments) {
  for (const auto &[instance, class_id] : assignments) {
    instance_types_[instance].insert(class_id);
  }
  BuildClassIndex();
}

KnowledgeBase KnowledgeBase::FromTypes(Index instance_types) {
  for (const auto &[instance, classes] : instance_types) {
    if (classes.empty()) {
      throw DataError(fmt::format("instance '{}' has no classes", instance));
    }
  }
  KnowledgeBase kb;
  kb.instance_types_ = std::move(instance_types);
  kb.BuildClassIndex();
  return kb;
}

void KnowledgeBase::BuildClassIndex() {
  class_index_.clear();
  for (const auto &[instance, classes] : instance_types_) {
    for (const auto &c : classes) class_index_[c].insert(instance);
  }
}

const std::set<std::string> *KnowledgeBase::TypesOf(
    std::string_view instance) const {
  auto it = instance_types_.find(instance);
  return it == instance_types_.end() ? nullptr : &it->second;
}

const std::set<std::string> *KnowledgeBase::InstancesOf(
    std::string_view class_id) const {
  auto it = class_index_.find(class_id);
  return it == class_index_.end() ? nullptr : &it->second;
}

EmbeddingSpace::EmbeddingSpace(size_t dimension) : dimension_(dimension) {
  if (dimension == 0) {
    throw std::invalid_argument("embedding dimension must be positive");
  }
}

void EmbeddingSpace::Set(std::string id, Vector v) {
  if (v.size() != dimension_) {
    throw DataError(fmt::format("vector for '{}' has length {}, expected {}",
                                id, v.size(), dimension_));
  }
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw DataError(fmt::format("vector for '{}' has a non-finite component",
                                  id));
    }
  }
  vectors_.insert_or_assign(std::move(id), std::move(v));
}

const Vector *EmbeddingSpace::Find(std::string_view id) const {
  auto it = vectors_.find(id);
  return it == vectors_.end() ? nullptr : &it->second;
}

AxiomSet::AxiomSet(std::initializer_list<Axiom> axioms) {
  for (const auto &a : axioms) Insert(a);
}

bool AxiomSet::Insert(Axiom axiom) {
  if (axiom.sub == axiom.super) {
    throw DataError(fmt::format("reflexive axiom '{}' <= '{}'", axiom.sub,
                                axiom.super));
  }
  auto key = axiom.key();
  return axioms_.emplace(std::move(key), std::move(axiom)).second;
}

bool AxiomSet::Contains(std::string_view sub, std::string_view super) const {
  return axioms_.count(AxiomKey(sub, super)) > 0;
}

const Axiom *AxiomSet::Find(const AxiomKey &key) const {
  auto it = axioms_.find(key);
  return it == axioms_.end() ? nullptr : &it->second;
}

std::set<AxiomKey> AxiomSet::Keys() const {
  std::set<AxiomKey> keys;
  for (const auto &[key, axiom] : axioms_) keys.insert(key);
  return keys;
}

std::set<std::string> AxiomSet::Classes() const {
  std::set<std::string> classes;
  for (const auto &[key, axiom] : axioms_) {
    classes.insert(key.first);
    classes.insert(key.second);
  }
  return classes;
}

void LabeledGraph::AddNode(const std::string &node) { nodes_.insert(node); }

bool LabeledGraph::AddEdge(Edge edge) {
  if (!edges_.insert(edge).second) return false;
  nodes_.insert(edge.subject);
  nodes_.insert(edge.object);
  auto &out = out_[edge.subject];
  out.insert(std::upper_bound(out.begin(), out.end(), edge), edge);
  auto &in = in_[edge.object];
  in.insert(std::upper_bound(in.begin(), in.end(), edge), edge);
  return true;
}

namespace {
const std::vector<Edge> kNoEdges;
}  // namespace

const std::vector<Edge> &LabeledGraph::Outgoing(std::string_view node) const {
  auto it = out_.find(node);
  return it == out_.end() ? kNoEdges : it->second;
}

const std::vector<Edge> &LabeledGraph::Incoming(std::string_view node) const {
  auto it = in_.find(node);
  return it == in_.end() ? kNoEdges : it->second;
}

}  // namespace tiemb
