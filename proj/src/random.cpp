#include "lyapzero/random.hpp"

#include <cmath>
#include <numbers>

namespace lyapzero {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

GaussianStream GaussianStream::for_trial(std::uint64_t master_seed, std::uint64_t trial) {
  return GaussianStream(splitmix64(master_seed ^ splitmix64(trial + 1)));
}

double GaussianStream::uniform() {
  // (x >> 11) + 1 keeps the value away from zero for the logarithm below.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace lyapzero
