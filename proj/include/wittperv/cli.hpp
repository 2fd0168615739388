#pragma once

#include <iosfwd>

namespace wittperv {

// Exit codes: 0 when every verdict passes or is skipped, 1 on a failed
// verdict, 2 on bad flags or input.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wittperv
