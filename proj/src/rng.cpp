#include "qcc/rng.hpp"

#include <random>

namespace qcc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t stream_key(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ fnv1a64(stream)) ^ index);
}

std::int64_t poisson_sample(double mean, std::uint64_t key) {
  if (!(mean > 0.0)) return 0;
  std::mt19937_64 engine(key);
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(engine);
}

}  // namespace qcc
