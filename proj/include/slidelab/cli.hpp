#pragma once

#include <ostream>

namespace slidelab::cli {

/// Exit codes: 0 ok, 2 configuration or input error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slidelab::cli
