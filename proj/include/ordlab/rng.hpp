#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace ordlab {

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded generator. Independent substreams are derived with split(label), so
/// a run is fully determined by one root seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t label) const;

  double normal();
  /// Uniform on [0, 1).
  double uniform();
  std::size_t below(std::size_t bound);
  bool coin() { return below(2) == 1; }

  template <class T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Draws a 64-bit seed from the OS entropy source.
std::uint64_t entropy_seed();

}  // namespace ordlab
