#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qp {

enum ExitCode : int { kExitOk = 0, kExitCampaignFailure = 1, kExitInputError = 2, kExitInternalError = 3 };

/// Runs one qpencil command. `args` excludes the program name. Writes a
/// single JSON document to `out` (errors too) and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qp
