#pragma once

#include <iosfwd>

namespace diarasr {

// Command-line entry point. Subcommands: score {cpwer|tcpwer|der},
// plan-chunks, simulate, augment. Writes the report document to `out`
// (machine-readable, byte-deterministic for fixed inputs) and diagnostics
// or warnings to `err`.
//
// Exit codes: 0 success, 1 data error (unreadable file, parse failure,
// contract violation), 2 usage error.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

} // namespace diarasr
