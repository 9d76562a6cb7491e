#pragma once

#include <iosfwd>
#include <string_view>

#include "bimerton_cli/config.hpp"

namespace bimerton::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitNumerical = 2,
    kExitIo = 3,
};

enum class Subcommand { Price, Converge, DomainStudy, Table, Region };

Subcommand parse_subcommand(std::string_view name);

/// Runs one subcommand on an already-validated config. Exceptions propagate.
void execute(Subcommand cmd, const RunConfig& config, std::ostream& out);

/// Full command line: argument parsing, config loading, flag overrides,
/// execution and exit-code mapping. Errors are reported on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bimerton::cli
