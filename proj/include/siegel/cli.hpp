#pragma once

#include <iosfwd>

namespace siegel {

// Command-line front end. Returns 0 on success, 1 on a domain error and 2 on a
// usage error; diagnostics go to `err` as a single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace siegel
