#pragma once

#include <cstdint>
#include <iosfwd>

namespace offtarget::cli {

/// Runs the built-in invariant suites, printing one line per suite.
/// Returns the number of failed suites.
int run_checks(std::ostream& out, std::uint64_t seed, bool quick);

}  // namespace offtarget::cli
