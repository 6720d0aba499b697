#pragma once

#include <cstdint>
#include <random>

namespace lyapzero {

// Deterministic gaussian stream.
//
// Stream seeding contract (stable across releases): trial t of a run with
// master seed S draws from std::mt19937_64 seeded with
//   splitmix64(S ^ splitmix64(t + 1)).
// Normals come from the Box-Muller transform applied to 53-bit
// uniforms ((x >> 11) + 1) * 2^-53, so results do not depend on the standard
// library's distribution implementations.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  static GaussianStream for_trial(std::uint64_t master_seed, std::uint64_t trial);

  double uniform();  // in (0, 1]
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace lyapzero
