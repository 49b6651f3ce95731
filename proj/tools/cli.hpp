#ifndef POTTS_CLI_HPP
#define POTTS_CLI_HPP

#include <string>
#include <vector>

namespace potts::cli {

/// Parses and runs one command line. Returns the process exit status:
/// 0 on success, 1 on module errors or failed verification, CLI11 codes
/// on parse errors.
int run(int argc, const char* const* argv);

/// Convenience wrapper for tests; args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace potts::cli

#endif
