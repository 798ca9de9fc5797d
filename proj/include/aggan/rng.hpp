#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "aggan/types.hpp"

namespace aggan {

/// Deterministic random source. Wraps std::mt19937_64 but draws doubles and
/// integers through fixed bit-level recipes, so sequences do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  Rng() : eng_(0) {}
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  /// Uniform in [0, 1), 53 random mantissa bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::int64_t uniform_int(std::int64_t n);

  /// Standard normal via Box-Muller; one spare value is cached.
  double normal();

  Matrix normal_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for a named substream. Independent components (trainer, bench,
/// theory, per-seed jobs) each derive their own stream from the run seed so
/// that adding draws in one never shifts another.
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                          std::uint64_t index = 0);

}  // namespace aggan
