#pragma once

#include <iosfwd>

namespace dlat {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,      // sweep mismatch or an unexpected exception
  kExitInput = 2,         // usage errors and rejected inputs
  kExitInconclusive = 3,  // only with --strict
};

// Entry point of `dlat`; "-" as a file argument reads standard input.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dlat
