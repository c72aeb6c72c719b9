#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace cshift {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Stable across platforms and releases.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent sub-seed for a numbered stream (row, trial, shift).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Derives a sub-seed for a named role ("calibrate", "target", ...).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view role) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng) noexcept;

/// Uniform integer in [0, bound) by rejection; bound must be > 0.
std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) noexcept;

/// The per-row smoothing variable u ~ U[0,1] used by randomized predictors.
/// Depends only on (seed, row), never on evaluation order.
double row_uniform(std::uint64_t seed, std::size_t row) noexcept;

/// ceil(x) that treats values within 1e-9 above an integer as that integer,
/// so products like 0.7 * 10 land on 7 rather than 8.
std::size_t robust_ceil(double x) noexcept;

}  // namespace cshift
