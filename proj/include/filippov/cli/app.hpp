#pragma once

#include <iosfwd>

namespace filippov::cli {

/// Parses argv and dispatches to a verb; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace filippov::cli
