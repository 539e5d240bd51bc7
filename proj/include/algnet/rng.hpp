#pragma once

// Seed derivation. Every random stream is std::mt19937_64 seeded from
// (seed, stream ids...) through splitmix64, so results do not depend on the
// order in which parallel workers pick up their streams.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace algnet {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (auto id : ids) h = splitmix64(h ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
  return std::mt19937_64(derive_seed(seed, ids));
}

// Uniform integer in [0, bound). The standard distributions are
// implementation-defined, so streams would differ between standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

template <class Vec>
void shuffle(Vec& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace algnet
