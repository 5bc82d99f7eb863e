#pragma once

#include <ostream>

namespace phaseeval {

/// Entry point of the phaseeval tool. Returns 0 on success, 1 when an
/// evaluation fails and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phaseeval
