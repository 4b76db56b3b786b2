#pragma once

#include <iosfwd>

namespace korbit::cli
{

/// Runs the command line. Returns the process exit status: 0 on completion,
/// 1 when a check suite reports failures, 2 on usage, input or resource
/// errors (with a one-line diagnostic on `err`).
int run(int argc, char const *const *argv, std::ostream &out, std::ostream &err);

} // namespace korbit::cli
