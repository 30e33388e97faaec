#pragma once

#include <ostream>

namespace dagger::cli {

/// Exit codes: 0 confirmed / success, 2 witness or violation, 1 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dagger::cli
