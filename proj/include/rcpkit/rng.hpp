#pragma once

#include "rcpkit/types.hpp"

#include <array>
#include <cstdint>

namespace rcpkit {

// splitmix64 step; used for seeding and for deriving independent streams.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Seed for sub-stream `stream` of a run seeded with `seed`. Used so that
// trial i of a campaign draws the same numbers no matter how trials are
// scheduled across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// xoshiro256** generator, state filled from splitmix64(seed).
///
/// Normal variates use the Marsaglia polar method; the second variate of
/// each accepted pair is cached and returned by the next call. Uniform
/// doubles take the top 53 bits. Both choices are fixed so a seed gives
/// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1).
  double uniform() noexcept;

  // Uniform integer on [0, n); n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) noexcept;

  double normal() noexcept;

  bool bit() noexcept { return (next_u64() >> 63) != 0; }

 private:
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Uniformly random K-subset of {0..N-1}, sorted. Partial Fisher-Yates.
Support sample_subset(Index N, Index K, Rng& rng);

}  // namespace rcpkit
