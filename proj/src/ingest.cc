#include "tiemb/ingest.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "tiemb/error.h"

namespace tiemb {
namespace {

std::ifstream OpenInput(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(fmt::format("cannot open '{}'", path.string()));
  }
  return in;
}

// Iterates data lines of a TSV stream, skipping blanks and comments.
template <typename Fn>
void ForEachRecord(std::istream &in, Fn &&fn) {
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    fn(std::string_view(line), line_no);
  }
  if (in.bad()) throw DataError("read error");
}

std::vector<std::string_view> SplitSpaces(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> ParseDouble(std::string_view s) {
  // from_chars does not accept a leading '+'.
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string Lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

void ExpectFields(const std::vector<std::string_view> &fields, size_t n,
                  std::string_view source, size_t line_no) {
  if (fields.size() != n) {
    throw DataError(fmt::format("{}:{}: expected {} tab-separated fields, got {}",
                                source, line_no, n, fields.size()));
  }
  for (auto f : fields) {
    if (f.empty()) {
      throw DataError(fmt::format("{}:{}: empty field", source, line_no));
    }
  }
}

}  // namespace

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

KnowledgeBase ReadInstanceTypes(std::istream &in, std::string_view source) {
  std::vector<std::pair<std::string, std::string>> pairs;
  ForEachRecord(in, [&](std::string_view line, size_t line_no) {
    auto fields = SplitTabs(line);
    ExpectFields(fields, 2, source, line_no);
    pairs.emplace_back(fields[0], fields[1]);
  });
  if (pairs.empty()) {
    throw DataError(fmt::format("{}: no instances parsed", source));
  }
  return KnowledgeBase(pairs);
}

KnowledgeBase ParseInstanceTypes(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ReadInstanceTypes(in, path.string());
}

void WriteInstanceTypes(const KnowledgeBase &kb, std::ostream &out) {
  for (const auto &[instance, classes] : kb.instance_types()) {
    for (const auto &c : classes) out << instance << '\t' << c << '\n';
  }
}

EmbeddingFormat ParseEmbeddingFormat(std::string_view name) {
  if (name == "word2vec-text" || name == "word2vec") {
    return EmbeddingFormat::kWord2VecText;
  }
  if (name == "glove-text" || name == "glove") return EmbeddingFormat::kGloveText;
  throw ConfigError(fmt::format("unknown embedding format '{}'", name));
}

EmbeddingSpace ReadEmbeddings(std::istream &in, EmbeddingFormat format,
                              std::string_view source) {
  std::string line;
  size_t line_no = 0;
  size_t dimension = 0;
  std::optional<size_t> declared_rows;
  std::optional<EmbeddingSpace> space;
  size_t rows = 0;

  if (format == EmbeddingFormat::kWord2VecText) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto fields = SplitSpaces(line);
      if (fields.empty()) continue;
      size_t n = 0, d = 0;
      auto parse = [](std::string_view s, size_t &v) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc() && p == s.data() + s.size();
      };
      if (fields.size() != 2 || !parse(fields[0], n) || !parse(fields[1], d) ||
          d == 0) {
        throw DataError(fmt::format("{}:{}: expected 'N d' header", source,
                                    line_no));
      }
      declared_rows = n;
      dimension = d;
      space.emplace(dimension);
      break;
    }
    if (!space) throw DataError(fmt::format("{}: missing header", source));
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = SplitSpaces(line);
    if (fields.empty()) continue;
    if (!space) {
      if (fields.size() < 2) {
        throw DataError(fmt::format("{}:{}: record has no components", source,
                                    line_no));
      }
      dimension = fields.size() - 1;
      space.emplace(dimension);
    }
    if (fields.size() - 1 != dimension) {
      throw DataError(fmt::format("{}:{}: expected {} components, got {}",
                                  source, line_no, dimension,
                                  fields.size() - 1));
    }
    Vector v(dimension);
    for (size_t k = 0; k < dimension; ++k) {
      auto x = ParseDouble(fields[k + 1]);
      if (!x || !std::isfinite(*x)) {
        throw DataError(fmt::format("{}:{}: invalid component '{}'", source,
                                    line_no, fields[k + 1]));
      }
      v[k] = *x;
    }
    space->Set(std::string(fields[0]), std::move(v));
    ++rows;
  }
  if (in.bad()) throw DataError(fmt::format("{}: read error", source));
  if (!space || rows == 0) {
    throw DataError(fmt::format("{}: no vectors parsed", source));
  }
  if (declared_rows && *declared_rows != rows) {
    throw DataError(fmt::format("{}: header declares {} vectors, found {}",
                                source, *declared_rows, rows));
  }
  return std::move(*space);
}

EmbeddingSpace ParseEmbeddings(const std::filesystem::path &path,
                               EmbeddingFormat format) {
  auto in = OpenInput(path);
  return ReadEmbeddings(in, format, path.string());
}

void WriteWord2VecText(const EmbeddingSpace &space, std::ostream &out) {
  out << space.size() << ' ' << space.dimension() << '\n';
  std::string row;
  for (const auto &[id, v] : space.vectors()) {
    if (id.empty() || std::any_of(id.begin(), id.end(), [](unsigned char c) {
          return std::isspace(c);
        })) {
      throw DataError(fmt::format("identifier '{}' cannot be written in "
                                  "word2vec-text format",
                                  id));
    }
    row.assign(id);
    for (double x : v) fmt::format_to(std::back_inserter(row), " {}", x);
    row.push_back('\n');
    out << row;
  }
}

std::optional<Vector> PhraseVector(std::string_view phrase,
                                   const EmbeddingSpace &space) {
  Vector sum(space.dimension(), 0.0);
  size_t found = 0;
  for (auto token : SplitSpaces(phrase)) {
    const Vector *v = space.Find(token);
    if (v == nullptr) continue;
    for (size_t k = 0; k < sum.size(); ++k) sum[k] += (*v)[k];
    ++found;
  }
  if (found == 0) return std::nullopt;
  if (found > 1) {
    for (double &x : sum) x /= static_cast<double>(found);
  }
  return sum;
}

LinkMode ParseLinkMode(std::string_view name) {
  if (name == "exact") return LinkMode::kExact;
  if (name == "phrase-average" || name == "phrase") {
    return LinkMode::kPhraseAverage;
  }
  throw ConfigError(fmt::format("unknown link mode '{}'", name));
}

LinkResult LinkInstances(const KnowledgeBase &kb, const EmbeddingSpace &space,
                         LinkMode mode) {
  LinkResult result{EmbeddingSpace(space.dimension())};
  for (const auto &[instance, classes] : kb.instance_types()) {
    std::optional<Vector> v;
    if (mode == LinkMode::kExact) {
      if (const Vector *found = space.Find(instance)) v = *found;
    } else {
      v = PhraseVector(instance, space);
    }
    if (v) {
      result.space.Set(instance, std::move(*v));
      ++result.linked;
    } else {
      ++result.unlinked;
    }
  }
  return result;
}

void IsaTupleStore::Add(std::string hyponym, std::string hypernym,
                        uint64_t frequency) {
  if (frequency == 0) throw DataError("tuple frequency must be positive");
  hypernyms_[hyponym].insert(hypernym);
  hyponyms_[hypernym].insert(hyponym);
  frequency_[{std::move(hyponym), std::move(hypernym)}] += frequency;
}

std::vector<IsaTupleStore::Tuple> IsaTupleStore::tuples() const {
  std::vector<Tuple> out;
  out.reserve(frequency_.size());
  for (const auto &[key, freq] : frequency_) {
    out.push_back({key.first, key.second, freq});
  }
  return out;
}

uint64_t IsaTupleStore::Frequency(std::string_view hyponym,
                                  std::string_view hypernym) const {
  auto it = frequency_.find({std::string(hyponym), std::string(hypernym)});
  return it == frequency_.end() ? 0 : it->second;
}

namespace {
const std::set<std::string> kEmptySet;
}  // namespace

const std::set<std::string> &IsaTupleStore::HypernymsOf(
    std::string_view hyponym) const {
  auto it = hypernyms_.find(hyponym);
  return it == hypernyms_.end() ? kEmptySet : it->second;
}

const std::set<std::string> &IsaTupleStore::HyponymsOf(
    std::string_view hypernym) const {
  auto it = hyponyms_.find(hypernym);
  return it == hyponyms_.end() ? kEmptySet : it->second;
}

IsaTupleStore ReadIsaTuples(std::istream &in, std::string_view source) {
  IsaTupleStore store;
  ForEachRecord(in, [&](std::string_view line, size_t line_no) {
    auto fields = SplitTabs(line);
    if (fields.size() != 2 && fields.size() != 3) {
      throw DataError(fmt::format("{}:{}: expected 2 or 3 tab-separated fields",
                                  source, line_no));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw DataError(fmt::format("{}:{}: empty field", source, line_no));
    }
    uint64_t freq = 1;
    if (fields.size() == 3) {
      auto s = fields[2];
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), freq);
      if (ec != std::errc() || p != s.data() + s.size() || freq == 0) {
        throw DataError(fmt::format("{}:{}: invalid frequency '{}'", source,
                                    line_no, s));
      }
    }
    store.Add(Lowercase(fields[0]), Lowercase(fields[1]), freq);
  });
  return store;
}

IsaTupleStore ParseIsaTuples(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ReadIsaTuples(in, path.string());
}

std::set<std::string> ExpandDomainClasses(const std::set<std::string> &seeds,
                                          const IsaTupleStore &store,
                                          int rounds) {
  if (rounds < 0) throw ConfigError("expansion rounds must be non-negative");
  std::set<std::string> classes = seeds;
  for (int r = 0; r < rounds; ++r) {
    std::set<std::string> instances;
    for (const auto &c : classes) {
      const auto &hypo = store.HyponymsOf(c);
      instances.insert(hypo.begin(), hypo.end());
    }
    size_t before = classes.size();
    for (const auto &i : instances) {
      const auto &hyper = store.HypernymsOf(i);
      classes.insert(hyper.begin(), hyper.end());
    }
    if (classes.size() == before) break;
  }
  return classes;
}

KnowledgeBase StoreToKb(const IsaTupleStore &store,
                        const std::set<std::string> &classes,
                        uint64_t min_frequency) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto &c : classes) {
    for (const auto &hyponym : store.HyponymsOf(c)) {
      if (store.Frequency(hyponym, c) >= min_frequency) {
        pairs.emplace_back(hyponym, c);
      }
    }
  }
  if (pairs.empty()) throw DataError("no instances selected for domain");
  return KnowledgeBase(pairs);
}

AxiomSet ReadGoldAxioms(std::istream &in, std::string_view source) {
  AxiomSet gold;
  ForEachRecord(in, [&](std::string_view line, size_t line_no) {
    auto fields = SplitTabs(line);
    ExpectFields(fields, 2, source, line_no);
    if (fields[0] == fields[1]) {
      throw DataError(fmt::format("{}:{}: reflexive axiom", source, line_no));
    }
    gold.Insert({std::string(fields[0]), std::string(fields[1]), std::nullopt});
  });
  return gold;
}

AxiomSet ParseGoldAxioms(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ReadGoldAxioms(in, path.string());
}

LabeledGraph ReadGraphEdges(std::istream &in, std::string_view source) {
  LabeledGraph graph;
  ForEachRecord(in, [&](std::string_view line, size_t line_no) {
    auto fields = SplitTabs(line);
    ExpectFields(fields, 3, source, line_no);
    graph.AddEdge({std::string(fields[0]), std::string(fields[1]),
                   std::string(fields[2])});
  });
  if (graph.empty()) throw DataError(fmt::format("{}: no edges parsed", source));
  return graph;
}

LabeledGraph ParseGraphEdges(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ReadGraphEdges(in, path.string());
}

std::map<std::string, std::string> ReadClassMap(std::istream &in,
                                                std::string_view source) {
  std::map<std::string, std::string> map;
  ForEachRecord(in, [&](std::string_view line, size_t line_no) {
    auto fields = SplitTabs(line);
    ExpectFields(fields, 2, source, line_no);
    auto [it, inserted] =
        map.emplace(std::string(fields[0]), std::string(fields[1]));
    if (!inserted && it->second != fields[1]) {
      throw DataError(fmt::format("{}:{}: class '{}' mapped twice", source,
                                  line_no, fields[0]));
    }
  });
  return map;
}

std::map<std::string, std::string> ParseClassMap(
    const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ReadClassMap(in, path.string());
}

}  // namespace tiemb
