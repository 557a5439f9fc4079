#pragma once

#include <ostream>

namespace decoy::cli {

enum ExitCode : int { ok = 0, input_error = 1, property_failure = 2, resource_cap = 3 };

// Entry point of the `decoy` tool; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace decoy::cli
