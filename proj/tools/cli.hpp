#pragma once

#include <ostream>

namespace copeland::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitTooLarge = 3;
inline constexpr int kExitIo = 4;

// Environment variable that overrides the default K_max for exact LPs.
inline constexpr const char* kMaxArmsEnv = "COPELAND_KMAX";

// Whole command line, argv[0] included. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace copeland::cli
