#pragma once

#include <ostream>

namespace orbivfc::cli {

/// Runs one command. Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbivfc::cli
