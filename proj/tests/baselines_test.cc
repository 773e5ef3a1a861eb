#include "doctest.h"

#include "testing/oracles.h"
#include "tiemb/baselines.h"
#include "tiemb/error.h"

namespace tiemb {
namespace {

TEST_CASE("relational features") {
  LabeledGraph g;
  g.AddEdge({"a", "p", "b"});
  std::set<std::string> entities{"a", "b"};

  auto out = RelationalFeatures(g, entities, RelationMode::kOut);
  CHECK(out.dimension() == 1);
  CHECK(*out.Find("a") == Vector{1});
  CHECK(*out.Find("b") == Vector{0});

  auto in = RelationalFeatures(g, entities, RelationMode::kIn);
  CHECK(*in.Find("a") == Vector{0});
  CHECK(*in.Find("b") == Vector{1});

  auto both = RelationalFeatures(g, entities, RelationMode::kInOut);
  CHECK(*both.Find("a") == Vector{1, 0});
  CHECK(*both.Find("b") == Vector{0, 1});

  CHECK_THROWS_AS(RelationalFeatures(g, {"zzz"}, RelationMode::kOut), DataError);
  LabeledGraph empty;
  empty.AddNode("a");
  CHECK_THROWS_AS(RelationalFeatures(empty, {"a"}, RelationMode::kOut),
                  DataError);
}

TEST_CASE("relational features are binary and ordered by predicate") {
  LabeledGraph g;
  g.AddEdge({"a", "zeta", "b"});
  g.AddEdge({"a", "alpha", "c"});
  g.AddEdge({"a", "alpha", "b"});
  g.AddEdge({"c", "zeta", "a"});
  auto f = RelationalFeatures(g, {"a", "b", "c"}, RelationMode::kInOut);
  // out: alpha, zeta | in: alpha, zeta
  CHECK(*f.Find("a") == Vector{1, 1, 0, 1});
  CHECK(*f.Find("b") == Vector{0, 0, 1, 1});
  CHECK(*f.Find("c") == Vector{0, 1, 1, 0});
  for (const auto &[id, v] : f.vectors()) {
    for (double x : v) CHECK((x == 0.0 || x == 1.0));
  }
}

KnowledgeBase Repeat(std::vector<std::pair<std::vector<std::string>, int>> groups) {
  std::vector<std::pair<std::string, std::string>> pairs;
  int next = 0;
  for (const auto &[classes, count] : groups) {
    for (int i = 0; i < count; ++i, ++next) {
      for (const auto &c : classes) pairs.emplace_back("i" + std::to_string(next), c);
    }
  }
  return KnowledgeBase(pairs);
}

TEST_CASE("apriori rules") {
  auto symmetric = Repeat({{{"A", "B"}, 100}});
  CHECK(AprioriAxioms(symmetric, 50, 0.5).Keys() ==
        std::set<AxiomKey>{{"A", "B"}, {"B", "A"}});

  // conf(A -> B) = 60/60, conf(B -> A) = 60/100.
  auto skewed = Repeat({{{"A", "B"}, 60}, {{"B"}, 40}});
  CHECK(AprioriAxioms(skewed, 50, 0.5).Keys() ==
        std::set<AxiomKey>{{"A", "B"}, {"B", "A"}});
  CHECK(AprioriAxioms(skewed, 50, 0.8).Keys() ==
        std::set<AxiomKey>{{"A", "B"}});
  CHECK(AprioriAxioms(skewed, 61, 0.5).empty());
  CHECK(AprioriAxioms(skewed, 50, 0.6).size() == 2);

  auto single = Repeat({{{"A"}, 80}, {{"B"}, 80}, {{"C"}, 80}});
  CHECK(AprioriAxioms(single, 1, 0.0).empty());

  CHECK_THROWS_AS(AprioriAxioms(KnowledgeBase(), 1, 0.5), DataError);
  CHECK_THROWS_AS(AprioriAxioms(symmetric, 0, 0.5), ConfigError);
  CHECK_THROWS_AS(AprioriAxioms(symmetric, 1, 1.5), ConfigError);
}

TEST_CASE("apriori matches brute-force counting") {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    auto kb = testing::RandomKb(rng, 10, 200);
    size_t support = 1 + rng.Uniform(20);
    double confidence = static_cast<double>(rng.Uniform(11)) / 10.0;
    CHECK(AprioriAxioms(kb, support, confidence).Keys() ==
          testing::BruteForceRules(kb, support, confidence));
  }
}

TEST_CASE("raising a threshold never adds a rule") {
  Rng rng(78);
  for (int t = 0; t < 50; ++t) {
    auto kb = testing::RandomKb(rng, 6, 150);
    size_t support = 1 + rng.Uniform(10);
    double confidence = static_cast<double>(rng.Uniform(10)) / 10.0;
    auto base = AprioriAxioms(kb, support, confidence).Keys();
    auto tighter_support = AprioriAxioms(kb, support + 3, confidence).Keys();
    auto tighter_conf = AprioriAxioms(kb, support, confidence + 0.1).Keys();
    CHECK(std::includes(base.begin(), base.end(), tighter_support.begin(),
                        tighter_support.end()));
    CHECK(std::includes(base.begin(), base.end(), tighter_conf.begin(),
                        tighter_conf.end()));
  }
}

TEST_CASE("transactions mirror instance types") {
  auto kb = Repeat({{{"A", "B"}, 2}, {{"C"}, 1}});
  auto t = TransactionSet::FromKnowledgeBase(kb);
  REQUIRE(t.transactions.size() == 3);
  for (const auto &tx : t.transactions) CHECK_FALSE(tx.empty());
}

}  // namespace
}  // namespace tiemb
