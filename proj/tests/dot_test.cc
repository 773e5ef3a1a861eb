#include "doctest.h"

#include <sstream>

#include "testing/oracles.h"
#include "tiemb/dot.h"
#include "tiemb/error.h"

namespace tiemb {
namespace {

std::string Dot(const AxiomSet &axioms, std::vector<std::string> roots = {},
                std::optional<int> max_depth = std::nullopt) {
  std::ostringstream out;
  WriteDot(axioms, roots, max_depth, out);
  return out.str();
}

TEST_CASE("one axiom draws one parent-to-child arrow") {
  CHECK(Dot(testing::ToAxiomSet({{"A", "B"}})) ==
        "digraph taxonomy {\n  rankdir=TB;\n  \"B\" -> \"A\";\n}\n");
}

TEST_CASE("roots and depth limit the drawing") {
  // D < C < B < A
  auto chain = testing::ToAxiomSet({{"B", "A"}, {"C", "B"}, {"D", "C"}});
  auto text = Dot(chain, {"B"}, 1);
  CHECK(text.find("\"B\" -> \"C\"") != std::string::npos);
  CHECK(text.find("\"C\" -> \"D\"") == std::string::npos);
  CHECK(text.find("\"A\"") == std::string::npos);

  auto top = Dot(chain, {}, 2);
  CHECK(top.find("\"A\" -> \"B\"") != std::string::npos);
  CHECK(top.find("\"B\" -> \"C\"") != std::string::npos);
  CHECK(top.find("\"C\" -> \"D\"") == std::string::npos);

  CHECK(Dot(chain, {"B"}).find("\"C\" -> \"D\"") != std::string::npos);
  CHECK_THROWS_AS(Dot(chain, {"Z"}), DataError);
}

TEST_CASE("identifiers are quoted") {
  CHECK(Dot(testing::ToAxiomSet({{"a \"b\"", "c"}})).find(R"("a \"b\"")") !=
        std::string::npos);
}

}  // namespace
}  // namespace tiemb
