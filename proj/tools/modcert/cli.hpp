#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modcert::cli {

/// Exit statuses of `modcert`.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // INVALID verdict or tolerance exceeded
inline constexpr int kUsage = 2;        // bad arguments or unreadable input

/// Runs one command line. args excludes the program name. Machine output
/// (JSON) goes to `out`; summaries and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modcert::cli
