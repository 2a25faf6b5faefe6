#ifndef LABKIT_CLI_HPP
#define LABKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace labkit::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one command line (args exclude the program name). Polynomial and JSON
/// inputs given as "-" are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace labkit::cli

#endif
