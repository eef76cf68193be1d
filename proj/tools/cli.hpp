#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treelab::cli {

enum ExitCode : int { ok = 0, property_violated = 1, usage_error = 2 };

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treelab::cli
