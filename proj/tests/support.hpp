#pragma once

#include "ordlab/generators.hpp"
#include "ordlab/rng.hpp"
#include "ordlab/structures.hpp"

#include <atomic>
#include <filesystem>
#include <string>

namespace ordlab::test_support {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ordlab-test-" + std::to_string(entropy_seed() % 1000000007ULL) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Random graph with maximum degree at most D: edges are offered in random
// order and kept while both ends have room.
inline Hypergraph random_bounded_degree_graph(int n, int D, Rng& rng) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  rng.shuffle(std::span(pairs));
  std::vector<int> deg(n, 0);
  std::vector<std::pair<int, int>> kept;
  for (auto [u, v] : pairs) {
    if (deg[u] < D && deg[v] < D && rng.coin()) {
      ++deg[u];
      ++deg[v];
      kept.emplace_back(u, v);
    }
  }
  return Hypergraph::graph(n, kept);
}

}  // namespace ordlab::test_support
