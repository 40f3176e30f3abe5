#include "retention/rng.hpp"

#include <cmath>
#include <numbers>

namespace retention {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  key_ = mix64(seed + kGolden) ^ mix64(stream_id * kGolden + 0x6a09e667f3bcc909ULL);
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
  // 1 - u lies in (0, 1], keeping the log finite.
  const double u = uniform01();
  const double v = uniform01();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u));
  return r * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace retention
