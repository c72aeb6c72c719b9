#include "cshift/seeding.hpp"

#include <cmath>

namespace cshift {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view role) noexcept {
  // FNV-1a over the role name
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : role) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return derive_seed(seed, h);
}

double uniform01(Rng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) noexcept {
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

double row_uniform(std::uint64_t seed, std::size_t row) noexcept {
  const std::uint64_t bits = splitmix64(derive_seed(seed, static_cast<std::uint64_t>(row)));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::size_t robust_ceil(double x) noexcept {
  if (x <= 0.0) return 0;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace cshift
