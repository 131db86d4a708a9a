#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entlp::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kNotApplicable = 2,
  kNotConverged = 3,
};

// Version tag of the path CSV layout, reported in the path summary.
inline constexpr const char* kTraceFormat = "entlp-trace/1";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entlp::cli
