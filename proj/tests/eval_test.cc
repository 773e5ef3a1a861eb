#include "doctest.h"

#include <cmath>
#include <sstream>

#include "testing/oracles.h"
#include "tiemb/error.h"
#include "tiemb/eval.h"

namespace tiemb {
namespace {

AxiomSet Set(std::set<AxiomKey> keys) { return testing::ToAxiomSet(keys); }

TEST_CASE("precision, recall, f-score") {
  auto gold = Set({{"A", "B"}, {"B", "C"}});
  auto same = Prf(gold, gold);
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f_score == 1.0);

  auto none = Prf(AxiomSet(), gold);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f_score == 0.0);

  auto half = Prf(Set({{"A", "B"}, {"X", "Y"}}), gold);
  CHECK(half.precision == 0.5);
  CHECK(half.recall == 0.5);
  CHECK(half.f_score == 0.5);
  CHECK(half.intersection_size == 1);

  CHECK_THROWS_AS(Prf(gold, AxiomSet()), DataError);
}

TEST_CASE("swapping prediction and gold swaps precision and recall") {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    auto p = testing::RandomEdges(rng, 8, 20);
    auto g = testing::RandomEdges(rng, 8, 20);
    if (p.empty() || g.empty()) continue;
    auto pg = Prf(Set(p), Set(g));
    auto gp = Prf(Set(g), Set(p));
    CHECK(pg.precision == gp.recall);
    CHECK(pg.recall == gp.precision);
    CHECK(pg.f_score == doctest::Approx(gp.f_score).epsilon(1e-12));
    for (double x : {pg.precision, pg.recall, pg.f_score}) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
    CHECK(pg.f_score <= std::max(pg.precision, pg.recall) + 1e-12);
    CHECK(pg.f_score >= std::min(pg.precision, pg.recall) - 1e-12);
  }
}

TEST_CASE("coverage against a mapped gold set") {
  auto gold = Set({{"Athlete", "Person"}, {"City", "Place"}});
  std::map<std::string, std::string> map{{"Athlete", "athlete"},
                                         {"Person", "person"},
                                         {"City", "city"},
                                         {"Place", "place"}};
  auto exact = Coverage(Set({{"athlete", "person"}, {"city", "place"}}), gold, map);
  CHECK(exact.gold_coverage == 1.0);
  CHECK(exact.extra_coverage_percent == 0.0);
  CHECK(exact.mapped_classes == 4);

  auto extra = Coverage(Set({{"athlete", "person"},
                             {"city", "place"},
                             {"x", "y"},
                             {"y", "z"},
                             {"x", "z"},
                             {"p", "q"}}),
                        gold, map);
  CHECK(extra.gold_coverage == 1.0);
  CHECK(extra.extra_coverage_percent == 200.0);
  CHECK(extra.extra_axioms == 4);

  std::map<std::string, std::string> partial{{"Athlete", "athlete"},
                                             {"Person", "person"}};
  auto dropped = Coverage(Set({{"athlete", "person"}}), gold, partial);
  CHECK(dropped.dropped_gold_axioms == 1);
  CHECK(dropped.mapped_gold_axioms == 1);
  CHECK(dropped.gold_coverage == 1.0);

  try {
    Coverage(Set({{"a", "b"}}), gold, {{"Other", "other"}});
    FAIL("expected DataError");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()) == "empty mapped gold set");
  }
  CHECK_THROWS_AS(Coverage(Set({{"a", "b"}}), gold,
                           {{"Athlete", "same"}, {"Person", "same"}}),
                  DataError);
}

AxiomSet Numbered(size_t n) {
  AxiomSet s;
  for (size_t i = 0; i < n; ++i) {
    s.Insert({"s" + std::to_string(i), "t" + std::to_string(i), std::nullopt});
  }
  return s;
}

TEST_CASE("annotation sampling") {
  auto pool = Numbered(30);
  auto all = SampleForAnnotation(pool, 30, 4);
  std::set<AxiomKey> drawn;
  for (const auto &a : all) drawn.insert(a.key());
  CHECK(drawn == pool.Keys());

  auto a = SampleForAnnotation(pool, 7, 99);
  auto b = SampleForAnnotation(pool, 7, 99);
  REQUIRE(a.size() == 7);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].key() == b[i].key());

  CHECK_THROWS_AS(SampleForAnnotation(pool, 31, 1), DataError);
  CHECK_THROWS_AS(SampleForAnnotation(pool, 0, 1), DataError);

  std::ostringstream out;
  WriteAnnotationTsv(a, out);
  CHECK(out.str().rfind("# sub\tsuper\tjudgment\n", 0) == 0);
}

TEST_CASE("annotation sampling includes every axiom at rate n / |P|") {
  auto pool = Numbered(10000);
  std::map<AxiomKey, int> hits;
  const int seeds = 1000;
  for (int seed = 0; seed < seeds; ++seed) {
    for (const auto &a : SampleForAnnotation(pool, 100, seed)) ++hits[a.key()];
  }
  // Each count is Binomial(1000, 0.01): mean 10, sd ~3.15. Over 10000 axioms
  // the extremes stay within mean +- 6 sd with overwhelming probability, and
  // the grand mean is exact.
  size_t total = 0;
  int max_hits = 0;
  for (const auto &[key, count] : hits) {
    total += count;
    max_hits = std::max(max_hits, count);
  }
  CHECK(total == 100u * seeds);
  CHECK(max_hits <= 10 + 6 * 3.15);
  // Fraction of axioms never drawn: (0.99)^1000 ~ 4.3e-5, so ~0.43 of 10000.
  CHECK(pool.size() - hits.size() <= 5);
}

TEST_CASE("report text carries key=value lines") {
  auto gold = Set({{"A", "B"}, {"B", "C"}});
  std::ostringstream out;
  WriteEvalReport(Prf(Set({{"A", "B"}}), gold), out);
  CHECK(out.str().find("precision=1.000000\n") != std::string::npos);
  CHECK(out.str().find("recall=0.500000\n") != std::string::npos);
}

}  // namespace
}  // namespace tiemb
