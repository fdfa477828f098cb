#pragma once

#include <ostream>

namespace pvcsd {

// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pvcsd
