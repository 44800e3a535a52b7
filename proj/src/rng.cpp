#include "ordlab/rng.hpp"

#include <stdexcept>
#include <string>

namespace ordlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t label) const {
  return Rng(splitmix64(seed_ ^ splitmix64(label + 0x632be59bd9b4e019ULL)));
}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return std::generate_canonical<double, 64>(engine_); }

std::size_t Rng::below(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
  std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(engine_);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace ordlab
