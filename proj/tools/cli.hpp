#pragma once

#include <ostream>

namespace multiplane::cli {

/// Exit status: 0 success, 1 input error, 2 unsupported case.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multiplane::cli
