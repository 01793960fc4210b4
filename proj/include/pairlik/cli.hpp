#ifndef PAIRLIK_CLI_HPP
#define PAIRLIK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "pairlik/types.hpp"

namespace pairlik::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

/**
 * Runs the tool with argv-style arguments (args[0] is the program name).
 * Subcommands: simulate, estimate, tau, experiment, version.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a CSV with header "s,z" (LF or CRLF line endings).
SamplePath read_path_csv(const std::string& file);
void write_path_csv(const SamplePath& path, std::ostream& out);

/// "a,b,c,d" with "inf" marking the open-ray side, e.g. "1,100,0,inf".
ParamBox parse_box(const std::string& text);
/// Comma-separated nonnegative weights w_1,...,w_K.
WeightSeq parse_weights(const std::string& text);

}  // namespace pairlik::cli

#endif  // PAIRLIK_CLI_HPP
