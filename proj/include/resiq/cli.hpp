#pragma once

namespace resiq::cli {

/// Full command-line entry point. Returns the process exit code:
///   0 success, 1 internal error, 2 config/parse, 3 model validity,
///   4 insufficient data, 5 event validation, 6 precondition.
int run(int argc, const char* const* argv);

} // namespace resiq::cli
