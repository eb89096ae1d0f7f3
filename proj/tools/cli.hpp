#pragma once

#include <iosfwd>

// Runs the command line tool against the given streams and returns the
// process exit code: 0 on success, 1 on usage or input errors, 2 when
// the time limit cut the search short, 3 on an internal failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
