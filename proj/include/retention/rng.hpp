#pragma once

#include <cstdint>

namespace retention {

// Counter-based deterministic generator. Every output is a pure function of
// (seed, stream_id, counter), so parallel sweeps can carve out independent
// streams without sharing mutable state, and a run is reproducible no matter
// how work is scheduled. Distinct (seed, stream_id) pairs give statistically
// independent sequences; equal pairs give identical ones.
class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller (two uniforms per draw, no cached state).
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Fixed stream ids used by the library so that different consumers of the
// same seed never collide.
namespace streams {
inline constexpr std::uint64_t kData = 0;            // batch draws for a run
inline constexpr std::uint64_t kSgd = 1;             // noisy-sgd trajectories
inline constexpr std::uint64_t kProbe = 2;           // monte-carlo probes
inline constexpr std::uint64_t kLambdaEstimate = 3;  // design second-moment estimate
}  // namespace streams

}  // namespace retention
