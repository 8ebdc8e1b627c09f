#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbas {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitCorrupt = 2,
    kExitIo = 3,
};

/// Runs one `orbas` command. args excludes the program name. Results go to
/// out, diagnostics to err.
///
///   orbas init   [DIR]
///   orbas add    [DIR] PATH...
///   orbas remove [DIR] SELECTOR
///   orbas stats  [DIR]
///   orbas search [DIR] QUERY [--min-sup R] [--tau1 R] [--tau2 R] [--top N]
///                            [--min-len N] [--format text|json]
///
/// DIR defaults to $ORBAS_REPO.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbas
