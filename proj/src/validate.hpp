#pragma once

#include <iosfwd>

namespace sqpd {

/// Built-in invariant and oracle suite behind the CLI `validate` subcommand.
/// Prints one pass/fail line per check; returns the number of failures.
int run_validation(std::ostream& out);

}  // namespace sqpd
