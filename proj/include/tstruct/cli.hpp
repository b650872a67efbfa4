#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tstruct {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;  // a verification check failed
inline constexpr int exit_usage = 2;   // bad flags or unreadable input

// Runs one command line (without the program name). Results go to `out`;
// errors go to `err` as a one-line JSON object.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tstruct
