#pragma once

#include <iosfwd>

#include "gdlab/run_config.hpp"

namespace gdlab {

struct CommandIO {
    std::istream& in;
    std::ostream& out; // report payload (when no output path is set)
    std::ostream& err; // diagnostics, cost estimates, prompts
};

// Subcommand drivers behind the CLI; they return process exit codes.
int cmd_tables(const RunConfig& config, CommandIO io);
int cmd_constants(const RunConfig& config, CommandIO io);
int cmd_decompose(const RunConfig& config, CommandIO io);
int cmd_discrepancy(const RunConfig& config, CommandIO io);
int cmd_verify(const RunConfig& config, CommandIO io);

} // namespace gdlab
