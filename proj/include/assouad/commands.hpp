#pragma once

#include "assouad/config.hpp"
#include "assouad/error.hpp"

#include <iosfwd>
#include <string>

namespace assouad {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerdictFailed = 1,
    kExitConfig = 2,
    kExitCap = 3,
};

/// Commands: dims, spectrum, sweep, verify, oracle. Artifacts go to
/// cfg.output_dir; a short summary goes to `log`, diagnostics to `err`.
int run(const std::string& command, const RunConfig& cfg, std::ostream& log, std::ostream& err);

int exit_code_for(const Error& e);

}  // namespace assouad
