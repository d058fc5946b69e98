#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace avoid {

/// Entry point behind the `avoid` binary, factored out so tests can drive
/// the CLI in-process. Exit codes: 0 found / all avoided, 1 proven
/// exhaustion or a detected instance, 2 budget exceeded, 64 usage or I/O
/// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace avoid
