#pragma once

#include <iosfwd>

namespace setdepth {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;

// Entry point of the setdepth tool. Results go to `out` unless --out names a
// file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace setdepth
