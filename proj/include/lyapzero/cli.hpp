#pragma once

#include <iosfwd>

namespace lyapzero {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnsupported = 3;  // incoherent pair or unsupported request
inline constexpr int kExitMismatch = 4;
inline constexpr int kExitInconclusive = 5;

// Default for --seed when the flag is absent.
inline constexpr const char* kSeedEnvVar = "LYAPZERO_SEED";

// Subcommands: predict, classify, simulate, verify. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lyapzero
