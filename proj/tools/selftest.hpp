#pragma once

#include <cstdint>
#include <string>

// Runs the library-wide invariant suite and prints one pass/fail line per
// check.  Returns 0 when every check passes.  "fast" trims the trial counts
// for a quick smoke run; "only" restricts to one module's checks.
int run_selftest(bool fast, std::uint64_t seed, const std::string& only);
