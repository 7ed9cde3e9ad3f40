#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "ablsem/error.hpp"

namespace ablsem {

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int input_error = 2;
inline constexpr int undefined_conditional = 3;
inline constexpr int closest_world_nonexistent = 4;
inline constexpr int statistical_failure = 5;
} // namespace exit_code

int exit_code_for(ErrorKind kind);

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace ablsem
