#ifndef TIEMB_TESTS_TESTING_FILES_H_
#define TIEMB_TESTS_TESTING_FILES_H_

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "tiemb/ingest.h"
#include "tiemb/kb_model.h"

namespace tiemb::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("tiemb-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void WriteFile(const std::filesystem::path &path,
                      const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void WriteKb(const KnowledgeBase &kb, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  WriteInstanceTypes(kb, out);
}

inline void WriteSpace(const EmbeddingSpace &space,
                       const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  WriteWord2VecText(space, out);
}

// (sub, super) of every `direct` row of an axiom TSV.
inline std::set<AxiomKey> DirectRows(const std::filesystem::path &path) {
  std::set<AxiomKey> out;
  std::istringstream in(ReadFile(path));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string sub, super, dist, kind;
    std::getline(row, sub, '\t');
    std::getline(row, super, '\t');
    std::getline(row, dist, '\t');
    std::getline(row, kind, '\t');
    if (kind == "direct") out.emplace(sub, super);
  }
  return out;
}

}  // namespace tiemb::testing

#endif  // TIEMB_TESTS_TESTING_FILES_H_
