#pragma once

#include <iosfwd>

namespace ecogen {

// Exit codes: 0 success, 1 verification failure or runtime error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ecogen
