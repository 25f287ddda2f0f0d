#pragma once
// Command-line front end.  run() parses a subcommand grammar, executes the
// corresponding library calls, and writes deterministic output: identical
// arguments (plus seed) produce byte-identical bytes on out/err.  Exit codes:
// 0 success, 2 validation or usage error, 3 enumeration/resource limit
// exceeded, 1 selftest failure.  The environment variable INVPERM_MAX_N, when
// set, replaces the built-in default enumeration caps (explicit --limit-n
// still wins).

#include <ostream>
#include <string>
#include <vector>

namespace invperm::cli {

// args excludes the program name
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// convenience wrapper over main()-style arguments; skips argv[0]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace invperm::cli
