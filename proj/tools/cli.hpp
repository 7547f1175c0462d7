#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dci::cli {

/// Stable exit codes.
enum Exit : int {
  kOk = 0,
  kRefutedOrCheckFailed = 1,
  kPipelineFailure = 2,
  kBudget = 3,
  kUnsupportedExport = 4,
  kUsage = 64,
  kData = 65,
  kIo = 73,
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dci::cli
